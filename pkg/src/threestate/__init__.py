"""Steady-state mRNA statistics of a three-state (inactive/poised/active) gene.

The copy-number distribution has a closed form in terms of 2F2, reducing to
1F1 for the two-state telegraph model.  Two independent oracles (exact
stochastic simulation and a truncated master equation) check it.
"""
from .distribution import (
    Distribution,
    Model,
    distribution,
    factorial_moment,
    g,
    g2,
    mean_mrna,
    pn_three_state,
    pn_two_state,
    two_state_mean,
)
from .errors import *  # noqa: F401,F403
from .errors import __all__ as _error_names
from .hypergeom import (
    DEFAULT_POLICY,
    Branch,
    EvalPolicy,
    EvalReport,
    HypergeomSpec,
    ck_coefficients,
    f11,
    f11_asymptotic,
    f22,
    f22_asymptotic,
    kummer_negative,
    pfq_series,
    pochhammer_log,
)
from .model import (
    FIG1A,
    FIG1A_TWO_STATE,
    FIG1B_K1_MINUS,
    DerivedConstants,
    RateSet,
    TwoStateRates,
    derived_constants,
    fig1b_rates,
    occupancies,
    rescale,
)
from .oracle import (
    EmpiricalDistribution,
    SsaConfig,
    master_steady_state,
    ssa_run,
    suggest_n_max,
    tv_distance,
)

__version__ = "0.1.0"

__all__ = [
    "Distribution", "Model", "distribution", "factorial_moment", "g", "g2", "mean_mrna",
    "pn_three_state", "pn_two_state", "two_state_mean",
    "DEFAULT_POLICY", "Branch", "EvalPolicy", "EvalReport", "HypergeomSpec", "ck_coefficients",
    "f11", "f11_asymptotic", "f22", "f22_asymptotic", "kummer_negative", "pfq_series",
    "pochhammer_log",
    "FIG1A", "FIG1A_TWO_STATE", "FIG1B_K1_MINUS", "DerivedConstants", "RateSet",
    "TwoStateRates", "derived_constants", "fig1b_rates", "occupancies", "rescale",
    "EmpiricalDistribution", "SsaConfig", "master_steady_state", "ssa_run", "suggest_n_max",
    "tv_distance",
    *_error_names,
]
