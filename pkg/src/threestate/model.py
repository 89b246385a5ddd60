"""Kinetic parameters of the three-state gene and their closed-form algebra.

The gene cycles inactive (0) <-> poised (1) <-> active (2); mRNA is made
only in state 2 and every molecule decays at rate ``delta``.  All
downstream code works in rescaled units (time in mean mRNA lifetimes, so
``delta == 1``); :func:`rescale` is the only place raw units are accepted.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields

from .errors import (
    AlreadyRescaled,
    DegenerateOccupancy,
    NegativeDiscriminant,
    NonPositiveDelta,
    NotRescaled,
    ValidationError,
)

__all__ = [
    "RateSet",
    "TwoStateRates",
    "DerivedConstants",
    "rescale",
    "derived_constants",
    "occupancies",
    "FIG1A",
    "FIG1A_TWO_STATE",
    "FIG1B_K1_MINUS",
    "fig1b_rates",
]

# Floating-point slack tolerated on a discriminant before it is an error.
DISCRIMINANT_EPS = 1e-12

_RATE_FIELDS = ("k1_plus", "k1_minus", "k2_plus", "k2_minus", "nu")


@dataclass(frozen=True)
class RateSet:
    """The six kinetic rates.

    ``k1_plus``/``k1_minus`` switch inactive <-> poised, ``k2_plus``/
    ``k2_minus`` switch poised <-> active, ``nu`` is the production rate in
    the active state and ``delta`` the per-molecule degradation rate.
    """

    k1_plus: float
    k1_minus: float
    k2_plus: float
    k2_minus: float
    nu: float
    delta: float = 1.0
    rescaled: bool = False

    def __post_init__(self):
        for f in fields(self):
            if f.name == "rescaled":
                continue
            value = getattr(self, f.name)
            try:
                value = float(value)
            except (TypeError, ValueError):
                raise ValidationError(f"{f.name} must be a real number, got {value!r}")
            if not math.isfinite(value) or value < 0:
                raise ValidationError(f"{f.name} must be finite and >= 0, got {value!r}")
            object.__setattr__(self, f.name, value)
        if self.rescaled and self.delta != 1.0:
            raise ValidationError("a rescaled rate set must have delta == 1")

    @classmethod
    def in_lifetime_units(cls, k1_minus, k1_plus, k2_minus, k2_plus, nu):
        """Rates already expressed in units of the mRNA degradation rate."""
        return cls(k1_plus=k1_plus, k1_minus=k1_minus, k2_plus=k2_plus,
                   k2_minus=k2_minus, nu=nu, delta=1.0, rescaled=True)

    def replace(self, **changes) -> "RateSet":
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        values.update(changes)
        return RateSet(**values)

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def require_rescaled(self) -> "RateSet":
        if not self.rescaled:
            raise NotRescaled("rates must be rescaled by delta first; call rescale()")
        return self


@dataclass(frozen=True)
class TwoStateRates:
    """Telegraph-model rates in lifetime units: on rate, off rate, production."""

    k_plus: float
    k_minus: float
    nu: float

    def __post_init__(self):
        for name in ("k_plus", "k_minus", "nu"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value < 0:
                raise ValidationError(f"{name} must be finite and >= 0, got {value!r}")
            object.__setattr__(self, name, value)

    def as_dict(self) -> dict:
        return {"k_plus": self.k_plus, "k_minus": self.k_minus, "nu": self.nu}


@dataclass(frozen=True)
class DerivedConstants:
    kappa0: float
    kappa1: float
    kappa2: float
    kappa3: float
    K1_minus: float
    K1_plus: float
    K2_minus: float
    K2_plus: float
    gamma0: float
    gamma1: float
    gamma2: float
    K_norm: float

    @property
    def numerator_params(self) -> tuple[float, float]:
        return (self.K2_minus, self.K2_plus)

    @property
    def denominator_params(self) -> tuple[float, float]:
        return (self.K1_minus, self.K1_plus)


def rescale(raw: RateSet) -> RateSet:
    """Divide every rate by ``delta`` so that time is measured in mRNA lifetimes."""
    if raw.rescaled:
        raise AlreadyRescaled("rate set is already in rescaled units")
    if not raw.delta > 0:
        raise NonPositiveDelta(f"delta must be > 0, got {raw.delta}")
    d = raw.delta
    return RateSet(
        k1_plus=raw.k1_plus / d,
        k1_minus=raw.k1_minus / d,
        k2_plus=raw.k2_plus / d,
        k2_minus=raw.k2_minus / d,
        nu=raw.nu / d,
        delta=1.0,
        rescaled=True,
    )


def _roots(total: float, product: float, disc: float) -> tuple[float, float]:
    """Roots (small, large) of s^2 - total*s + product with a given discriminant."""
    if disc < 0:
        if disc < -DISCRIMINANT_EPS * max(1.0, total * total):
            raise NegativeDiscriminant(f"discriminant {disc!r} < 0")
        disc = 0.0
    large = 0.5 * (total + math.sqrt(disc))
    # product / large avoids the cancellation in (total - sqrt(disc)) / 2
    # min(): at a double root the quotient can round a few ulp past large
    small = min(product / large, large) if large > 0 else 0.0
    return small, large


def derived_constants(rates: RateSet) -> DerivedConstants:
    """kappa combinations, hypergeometric parameters K and occupancies.

    The discriminants are evaluated as sums of non-negative terms,

        kappa1^2 - 4 kappa0       = (k1- + k1+ - k2- - k2+)^2 + 4 k1- k2+
        kappa2^2 - 4 k1+ k2+      = (k1- + k1+ - k2+)^2      + 4 k1- k2+

    which are algebraically identical to the textbook forms but cannot
    round below zero.
    """
    rates.require_rescaled()
    k1m, k1p, k2m, k2p = rates.k1_minus, rates.k1_plus, rates.k2_minus, rates.k2_plus

    kappa0 = (k1m + k1p) * k2m + k1p * k2p
    kappa1 = k1m + k1p + k2m + k2p
    kappa2 = kappa1 - k2m
    kappa3 = k1m + (1.0 + k1p) * (1.0 + k2p)

    disc1 = (k1m + k1p - k2m - k2p) ** 2 + 4.0 * k1m * k2p
    disc2 = (k1m + k1p - k2p) ** 2 + 4.0 * k1m * k2p
    K1m, K1p = _roots(kappa1, kappa0, disc1)
    K2m, K2p = _roots(kappa2, k1p * k2p, disc2)

    K_norm = k1m * k2m + k1p * k2m + k1p * k2p
    if K_norm > 0:
        g0, g1, g2 = k1m * k2m / K_norm, k1p * k2m / K_norm, k1p * k2p / K_norm
    else:
        g0 = g1 = g2 = math.nan
    return DerivedConstants(
        kappa0=kappa0, kappa1=kappa1, kappa2=kappa2, kappa3=kappa3,
        K1_minus=K1m, K1_plus=K1p, K2_minus=K2m, K2_plus=K2p,
        gamma0=g0, gamma1=g1, gamma2=g2, K_norm=K_norm,
    )


def occupancies(rates: RateSet) -> tuple[float, float, float]:
    """Steady-state probabilities of the inactive, poised and active states."""
    k1m, k1p, k2m, k2p = rates.k1_minus, rates.k1_plus, rates.k2_minus, rates.k2_plus
    K = k1m * k2m + k1p * k2m + k1p * k2p
    if not K > 0:
        raise DegenerateOccupancy(
            "k1- k2- + k1+ k2- + k1+ k2+ == 0: gene-state chain has no unique steady state"
        )
    return k1m * k2m / K, k1p * k2m / K, k1p * k2p / K


# Figure presets, already in lifetime units.
FIG1A = RateSet.in_lifetime_units(k1_minus=0.13, k1_plus=1.3, k2_minus=2.3, k2_plus=4.2, nu=3.0)
FIG1A_TWO_STATE = TwoStateRates(k_plus=4.2, k_minus=2.3, nu=3.0)
FIG1B_K1_MINUS = (0.13, 1.3, 13.0)


def fig1b_rates(k1_minus: float) -> RateSet:
    return FIG1A.replace(k1_minus=k1_minus)
