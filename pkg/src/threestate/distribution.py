"""Closed-form steady-state mRNA distribution, generating functions and moments.

For the three-state gene (rescaled units)

    G(z) = 2F2(K2-, K2+; K1-, K1+; nu (z - 1))

and the copy-number probabilities are its Taylor coefficients,

    p_n = [r_n(K2-) r_n(K2+) / (r_n(K1-) r_n(K1+))] nu^n / n!
          * 2F2(K2- + n, K2+ + n; K1- + n, K1+ + n; -nu)

with r_n the rising factorial.  Setting k1- = 0 gives the telegraph model,
whose p_n uses 1F1 in place of 2F2.  Prefactors are assembled in log space
and exponentiated last.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import Union

import numpy as np

from .errors import (
    BranchUndefined,
    DegenerateOccupancy,
    EvaluationFailure,
    NegativeProbability,
    NoConvergence,
    TruncationFailure,
    ValidationError,
)
from .hypergeom import DEFAULT_POLICY, EvalPolicy, f11, f22, pochhammer_log
from .model import DerivedConstants, RateSet, TwoStateRates, derived_constants, occupancies

__all__ = [
    "Model",
    "Distribution",
    "pn_three_state",
    "pn_two_state",
    "distribution",
    "g2",
    "g",
    "factorial_moment",
    "mean_mrna",
    "two_state_mean",
]

# p_n below -NEGATIVE_RAISE is numerical breakdown; in [-ROUNDOFF, 0) it is roundoff.
NEGATIVE_RAISE = 1e-10
ROUNDOFF = 1e-14


class Model(str, Enum):
    THREE_STATE = "three_state"
    TWO_STATE = "two_state"


@dataclass(frozen=True, eq=False)
class Distribution:
    """Truncated copy-number distribution ``probs[n] = P(N = n)`` for n <= n_max."""

    probs: np.ndarray
    n_max: int
    tail_mass_bound: float
    model: Model
    rates: Union[RateSet, TwoStateRates]
    # (gamma0, gamma1, gamma2) when the producer knows them per state
    gene_marginals: tuple | None = field(default=None)

    @property
    def support(self) -> np.ndarray:
        return np.arange(self.probs.size)

    def cumulative(self) -> np.ndarray:
        return np.cumsum(self.probs)

    def total(self) -> float:
        return math.fsum(self.probs.tolist())

    def mean(self) -> float:
        return math.fsum((self.support * self.probs).tolist())

    def variance(self) -> float:
        mu = self.mean()
        return math.fsum((self.support ** 2 * self.probs).tolist()) - mu * mu


def _wrap_numeric(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (NoConvergence, BranchUndefined) as exc:
        raise EvaluationFailure(str(exc)) from exc


def _from_log(log_prefactor: float, hyp_value: float) -> float:
    if hyp_value == 0.0 or log_prefactor == -math.inf:
        return 0.0
    p = math.copysign(math.exp(log_prefactor + math.log(abs(hyp_value))), hyp_value)
    if p < -NEGATIVE_RAISE:
        raise NegativeProbability(f"p_n = {p!r}: hypergeometric evaluation broke down")
    if -ROUNDOFF <= p < 0:
        return 0.0
    return p


def _check_n(n) -> int:
    if int(n) != n or n < 0:
        raise ValidationError(f"copy number must be a non-negative integer, got {n!r}")
    return int(n)


def _three_state_pn(dc: DerivedConstants, nu: float, n: int, policy: EvalPolicy) -> float:
    log_pref = (pochhammer_log(dc.K2_minus, n) + pochhammer_log(dc.K2_plus, n)
                - pochhammer_log(dc.K1_minus, n) - pochhammer_log(dc.K1_plus, n)
                + n * math.log(nu) - math.lgamma(n + 1))
    rep = _wrap_numeric(f22, dc.K2_minus + n, dc.K2_plus + n,
                        dc.K1_minus + n, dc.K1_plus + n, -nu, policy)
    return _from_log(log_pref, rep.value)


def _is_silent(rates: RateSet) -> bool:
    """True when the gene never (or never again) produces mRNA."""
    _, _, gamma2 = occupancies(rates)
    return rates.nu == 0 or gamma2 == 0


def pn_three_state(rates: RateSet, n: int, policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """Steady-state probability of ``n`` mRNA molecules for the three-state gene."""
    rates.require_rescaled()
    n = _check_n(n)
    if _is_silent(rates):
        return 1.0 if n == 0 else 0.0
    return _three_state_pn(derived_constants(rates), rates.nu, n, policy)


def _two_state_pn(k_plus: float, k_minus: float, nu: float, n: int, policy: EvalPolicy) -> float:
    log_pref = (n * math.log(nu) - math.lgamma(n + 1)
                + pochhammer_log(k_plus, n) - pochhammer_log(k_plus + k_minus, n))
    rep = _wrap_numeric(f11, k_plus + n, k_plus + k_minus + n, -nu, policy)
    return _from_log(log_pref, rep.value)


def _two_state_silent(params: TwoStateRates) -> bool:
    if params.k_plus == 0 and params.k_minus == 0:
        raise DegenerateOccupancy("k+ == k- == 0: gene state never changes")
    return params.nu == 0 or params.k_plus == 0


def pn_two_state(k_plus: float, k_minus: float, nu: float, n: int,
                 policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """Telegraph-model p_n with on rate ``k_plus`` and off rate ``k_minus`` (lifetime units)."""
    params = TwoStateRates(k_plus, k_minus, nu)
    n = _check_n(n)
    if _two_state_silent(params):
        return 1.0 if n == 0 else 0.0
    return _two_state_pn(params.k_plus, params.k_minus, params.nu, n, policy)


def distribution(params: Union[RateSet, TwoStateRates], tail_bound: float = 1e-10,
                 hard_cap: int = 10_000, policy: EvalPolicy = DEFAULT_POLICY) -> Distribution:
    """Evaluate p_0, p_1, ... until the remaining mass is below ``tail_bound``.

    Stops at the first n with cumulative mass >= 1 - tail_bound and
    p_n < tail_bound / 100.  Raises :class:`TruncationFailure` if
    ``hard_cap`` is reached first.
    """
    if not (0 < tail_bound <= 1e-2):
        raise ValidationError("tail_bound must lie in (0, 1e-2]")
    if int(hard_cap) < 8:
        raise ValidationError("hard_cap must be >= 8")
    hard_cap = int(hard_cap)

    if isinstance(params, RateSet):
        params.require_rescaled()
        model = Model.THREE_STATE
        silent = _is_silent(params)
        if not silent:
            dc = derived_constants(params)
            pn = lambda n: _three_state_pn(dc, params.nu, n, policy)
    elif isinstance(params, TwoStateRates):
        model = Model.TWO_STATE
        silent = _two_state_silent(params)
        pn = lambda n: _two_state_pn(params.k_plus, params.k_minus, params.nu, n, policy)
    else:
        raise ValidationError(f"expected RateSet or TwoStateRates, got {type(params).__name__}")

    if silent:
        return Distribution(np.array([1.0]), 0, 0.0, model, params)

    probs = []
    cumulative = 0.0
    comp = 0.0
    for n in range(hard_cap + 1):
        p = pn(n)
        if p < 0:
            warnings.warn(f"p_{n} = {p:.3e} clamped to 0", RuntimeWarning, stacklevel=2)
            p = 0.0
        probs.append(p)
        # Kahan update of the running mass
        y = p - comp
        t = cumulative + y
        comp = (t - cumulative) - y
        cumulative = t
        if cumulative >= 1.0 - tail_bound and p < tail_bound / 100.0:
            break
    else:
        raise TruncationFailure(
            f"mass {cumulative!r} after n = {hard_cap}; raise hard_cap or tail_bound")
    return Distribution(np.asarray(probs), len(probs) - 1, max(0.0, 1.0 - cumulative),
                        model, params)


def g2(rates: RateSet, z: float, policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """Generating function of the active-state probabilities, G_2(z).

    Normalized so that G_2(1) equals the active-state occupancy.
    """
    rates.require_rescaled()
    _, _, gamma2 = occupancies(rates)
    if gamma2 == 0:
        return 0.0
    dc = derived_constants(rates)
    rep = _wrap_numeric(f22, 1 + dc.K2_minus, 1 + dc.K2_plus, 1 + dc.K1_minus, 1 + dc.K1_plus,
                        rates.nu * (z - 1.0), policy)
    return gamma2 * rep.value


def g(rates: RateSet, z: float, policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """Probability generating function of the mRNA copy number, G(z)."""
    rates.require_rescaled()
    if _is_silent(rates):
        return 1.0
    dc = derived_constants(rates)
    rep = _wrap_numeric(f22, dc.K2_minus, dc.K2_plus, dc.K1_minus, dc.K1_plus,
                        rates.nu * (z - 1.0), policy)
    return rep.value


def factorial_moment(rates: RateSet, m: int) -> float:
    """E[N (N-1) ... (N-m+1)] = nu^m r_m(K2-) r_m(K2+) / (r_m(K1-) r_m(K1+)).

    This is the m-th derivative of G at z = 1, where the hypergeometric
    factor equals one.
    """
    rates.require_rescaled()
    if int(m) != m or m < 1:
        raise ValidationError("m must be an integer >= 1")
    m = int(m)
    if _is_silent(rates):
        return 0.0
    dc = derived_constants(rates)
    log_val = (m * math.log(rates.nu)
               + pochhammer_log(dc.K2_minus, m) + pochhammer_log(dc.K2_plus, m)
               - pochhammer_log(dc.K1_minus, m) - pochhammer_log(dc.K1_plus, m))
    return math.exp(log_val)


def mean_mrna(rates: RateSet) -> float:
    """Mean copy number nu * gamma2, from G'(1) = nu G_2(1)."""
    _, _, gamma2 = occupancies(rates)
    return rates.nu * gamma2


def two_state_mean(params: TwoStateRates) -> float:
    if params.k_plus == 0 and params.k_minus == 0:
        raise DegenerateOccupancy("k+ == k- == 0: gene state never changes")
    return params.nu * params.k_plus / (params.k_plus + params.k_minus)
