"""Generalized hypergeometric functions pFq for real parameters.

Three evaluation routes are provided:

* the defining power series (:func:`pfq_series`), summed with Neumaier
  compensation and instrumented with a cancellation index;
* large-|z| asymptotic expansions of 1F1 and 2F2 (:func:`f11_asymptotic`,
  :func:`f22_asymptotic`);
* for negative arguments, a term-wise positive rearrangement of the series
  (Kummer's transformation for 1F1 and its two-parameter analogue for 2F2),
  used when the alternating series would lose too many digits.

:func:`f11` and :func:`f22` pick a route and report which one they used.

Asymptotic series are divergent.  They are cut at the least term, located
from the late-term growth ``t_k ~ Gamma(k + beta) / F**k`` at
``k* = F - beta - 1/2``, with the boundary term weighted by the fractional
part of ``k*``.  On the real axis one of the two exponential scales sits on
a Stokes line; its contribution is added with the half-sum (real part)
Stokes multiplier.  Together these keep the relative error of the expansions
near the size of the least term divided by ``sqrt(F)`` rather than the least
term itself.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

import numpy as np
from scipy.special import gammaln

from .errors import (
    BranchUndefined,
    DegenerateParameters,
    DomainError,
    EvaluationFailure,
    NoConvergence,
    PoleInDenominator,
    ValidationError,
)

__all__ = [
    "Branch",
    "HypergeomSpec",
    "EvalReport",
    "EvalPolicy",
    "DEFAULT_POLICY",
    "pochhammer_log",
    "pfq_series",
    "f11_asymptotic",
    "f22_asymptotic",
    "ck_coefficients",
    "kummer_negative",
    "f11",
    "f22",
]

# Relative size below which a series term no longer changes the sum.
SERIES_REL_TOL = 2.0 ** -56
# Observed Stokes-smoothing error is a few percent of the subdominant part.
STOKES_UNCERTAINTY = 0.1
# Offset used to step around integer a1 - a2 in the algebraic correction.
DEGENERATE_SHIFT = 1e-3
# Log-space margin: terms below max*exp(-LOG_MARGIN) are negligible.
LOG_MARGIN = 46.0


class Branch(str, Enum):
    SERIES = "series"
    ASYMPTOTIC_ALGEBRAIC = "asymptotic_algebraic"
    ASYMPTOTIC_EXPONENTIAL = "asymptotic_exponential"
    KUMMER = "kummer"


def _is_nonpositive_integer(v: float) -> bool:
    return v <= 0 and v == math.floor(v)


@dataclass(frozen=True)
class HypergeomSpec:
    """Numerator parameters ``a``, denominator parameters ``b``, argument ``x``."""

    a: tuple
    b: tuple
    x: float

    def __post_init__(self):
        a = tuple(float(v) for v in self.a)
        b = tuple(float(v) for v in self.b)
        x = float(self.x)
        if not all(math.isfinite(v) for v in a + b + (x,)):
            raise ValidationError("hypergeometric parameters and argument must be finite")
        for v in b:
            if _is_nonpositive_integer(v):
                raise PoleInDenominator(f"denominator parameter {v} is a pole of the series")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "x", x)


@dataclass(frozen=True)
class EvalReport:
    value: float
    terms_used: int
    # sum of |contributions| / |value|; 1 means no digits lost to cancellation
    cancellation_index: float
    branch: Branch

    def __float__(self):
        return self.value


@dataclass(frozen=True)
class EvalPolicy:
    """Knobs of the :func:`f11`/:func:`f22` dispatchers.

    series_threshold
        Asymptotics are tried only for ``|z| >= max(series_threshold,
        2 * max|parameter|)``.
    cancellation_target
        A series result whose cancellation index exceeds this is replaced by
        the positive rearrangement when one exists (about
        ``log10(target)`` digits may be lost).
    cancellation_limit
        Above this the series result is rejected outright.
    asymptotic_rel_tol
        An asymptotic result whose least term exceeds this fraction of the
        value is discarded in favour of a convergent route.
    series_probe_limit
        For ``z < 0`` beyond this the direct series is not even attempted
        when a positive rearrangement is available.
    """

    series_threshold: float = 50.0
    series_rel_tol: float = SERIES_REL_TOL
    max_terms: int = 100_000
    asymptotic_terms: int = 200
    cancellation_target: float = 1e4
    cancellation_limit: float = 1e12
    series_probe_limit: float = 30.0
    degenerate_tol: float = 1e-6
    asymptotic_rel_tol: float = 1e-11


DEFAULT_POLICY = EvalPolicy()


# ---------------------------------------------------------------------------
# Pochhammer symbol and gamma-function bookkeeping


def pochhammer_log(x: float, n: int) -> float:
    """``log(Gamma(x + n) / Gamma(x))`` for ``x >= 0`` and integer ``n >= 0``.

    ``x == 0`` with ``n >= 1`` returns ``-inf`` (the symbol is zero).
    """
    n = int(n)
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    if x < 0:
        raise DomainError(f"x must be >= 0, got {x}")
    if n == 0:
        return 0.0
    if x == 0:
        return -math.inf
    if n <= 64:
        return math.fsum(math.log(x + k) for k in range(n))
    return float(gammaln(x + n) - gammaln(x))


def _log_abs_gamma(v: float) -> tuple[float, int]:
    """(log|Gamma(v)|, sign); sign 0 marks a pole."""
    if _is_nonpositive_integer(v):
        return math.inf, 0
    if v > 0:
        return math.lgamma(v), 1
    # Gamma alternates sign between the negative poles
    sign = -1 if math.floor(v) % 2 else 1
    return math.lgamma(v), sign


def _gamma_ratio(num: Sequence[float], den: Sequence[float]) -> tuple[float, int]:
    """log|prod Gamma(num) / prod Gamma(den)| and its sign.

    A pole in ``den`` makes the ratio exactly zero (sign 0).  A pole in
    ``num`` raises :class:`BranchUndefined`.
    """
    log_mag, sign = 0.0, 1
    for v in den:
        lg, s = _log_abs_gamma(v)
        if s == 0:
            return -math.inf, 0
        log_mag -= lg
        sign *= s
    for v in num:
        lg, s = _log_abs_gamma(v)
        if s == 0:
            raise BranchUndefined(f"Gamma({v}) in the prefactor is infinite")
        log_mag += lg
        sign *= s
    return log_mag, sign


class _Neumaier:
    """Running compensated sum (Kahan-Babuska-Neumaier)."""

    __slots__ = ("s", "c")

    def __init__(self):
        self.s = 0.0
        self.c = 0.0

    def add(self, v: float):
        t = self.s + v
        if abs(self.s) >= abs(v):
            self.c += (self.s - t) + v
        else:
            self.c += (v - t) + self.s
        self.s = t

    @property
    def value(self) -> float:
        return self.s + self.c


# ---------------------------------------------------------------------------
# Direct series


def pfq_series(spec: HypergeomSpec, rel_tol: float = SERIES_REL_TOL,
               max_terms: int = 100_000) -> EvalReport:
    """Sum the defining series of pFq term by term.

    Terms follow ``t_{k+1} = t_k * prod(a_i + k) / prod(b_j + k) * x / (k + 1)``.
    Summation stops after three consecutive terms below ``rel_tol`` times
    the running sum, or when the series terminates.
    """
    if not rel_tol > 0:
        raise ValidationError("rel_tol must be > 0")
    a, b, x = spec.a, spec.b, spec.x
    if x == 0.0:
        return EvalReport(1.0, 1, 1.0, Branch.SERIES)

    acc = _Neumaier()
    acc.add(1.0)
    term = 1.0
    abs_sum = 1.0
    quiet = 0
    for k in range(max_terms):
        ratio = x / (k + 1)
        for ai in a:
            ratio *= ai + k
        for bj in b:
            ratio /= bj + k
        term *= ratio
        if term == 0.0:
            # a numerator parameter hit a non-positive integer: polynomial
            return _series_report(acc.value, abs_sum, k + 1)
        if not math.isfinite(term):
            raise NoConvergence(f"series terms overflowed at k={k + 1}")
        acc.add(term)
        abs_sum += abs(term)
        if abs(term) < rel_tol * abs(acc.value):
            quiet += 1
            if quiet >= 3:
                return _series_report(acc.value, abs_sum, k + 2)
        else:
            quiet = 0
    raise NoConvergence(f"series did not converge within {max_terms} terms")


def _series_report(value: float, abs_sum: float, terms: int) -> EvalReport:
    index = abs_sum / abs(value) if value != 0 else math.inf
    return EvalReport(value, terms, max(index, 1.0), Branch.SERIES)


# ---------------------------------------------------------------------------
# Positive rearrangement on the negative axis


def _two_diff(a: float, b: float) -> tuple[float, float]:
    """a - b = hi + lo exactly (Knuth's two-sum)."""
    hi = a - b
    bb = hi - a
    lo = (a - (hi - bb)) - (b + bb)
    return hi, lo


def _rearranged_negative(a1: float, a2: float, b1: float, b2: float, x: float) -> EvalReport:
    """Double-sum rearrangement of 2F2(a1, a2; b1, b2; -x) with signed terms.

    Needs only ``b1, b2 > 0``.  Terms keep one sign wherever ``b1 - a1``,
    ``a2`` and ``b2 - a2`` are non-negative; otherwise only the first
    few orders alternate, and the cancellation index says what it cost.
    """
    # b - a as an unevaluated sum hi + lo, so factors (b - a + k) that
    # nearly vanish keep their relative accuracy
    c1, c1_lo = _two_diff(b1, a1)
    c2, c2_lo = _two_diff(b2, a2)
    log_x = math.log(x)
    size = int(x + 10.0 * math.sqrt(x) + 40.0 + 2.0 * max(abs(c1), abs(c2), abs(a2)))
    while True:
        idx = np.arange(size, dtype=float)
        with np.errstate(divide="ignore"):
            f1 = (c1 + idx) + c1_lo
            f2 = (c2 + idx) + c2_lo
            outer_step = (np.log(np.abs(f1)) + np.log(np.abs(a2 + idx)) + log_x
                          - np.log(b1 + idx) - np.log(b2 + idx) - np.log1p(idx))
            outer = np.concatenate(([0.0], np.cumsum(outer_step[:-1])))
            inner_step = (np.log(np.abs(f2))[None, :] + log_x - np.log1p(idx)[None, :]
                          - np.log(b2 + idx[:, None] + idx[None, :]))
        inner = np.zeros((size, size))
        np.cumsum(inner_step[:, :-1], axis=1, out=inner[:, 1:])
        logt = outer[:, None] + inner
        peak = logt.max()
        edge = max(logt[-1, :].max(), logt[:, -1].max())
        if edge < peak - LOG_MARGIN or size >= 20_000:
            break
        size *= 2
    if edge >= peak - LOG_MARGIN:
        raise NoConvergence("rearranged series did not converge")
    outer_sign = np.concatenate(([1.0], np.cumprod(np.sign(f1[:-1]) * np.sign(a2 + idx[:-1]))))
    inner_sign = np.concatenate(([1.0], np.cumprod(np.sign(f2[:-1]))))
    keep = logt > peak - 2 * LOG_MARGIN
    mag = np.exp(logt[keep] - peak)
    signs = (outer_sign[:, None] * inner_sign[None, :])[keep]
    total = math.fsum((signs * mag).tolist())
    abs_total = math.fsum(mag.tolist())
    terms = int(np.count_nonzero(np.isfinite(logt)))
    if total == 0.0:
        return EvalReport(0.0, terms, math.inf, Branch.KUMMER)
    value = math.copysign(math.exp(peak + math.log(abs(total)) - x), total)
    return EvalReport(value, terms, abs_total / abs(total), Branch.KUMMER)


def kummer_negative(a1: float, a2: float, b1: float, b2: float, x: float) -> EvalReport:
    """2F2(a1, a2; b1, b2; -x) for ``x >= 0`` without cancellation.

    Uses

        2F2(a1,a2;b1,b2;-x) = exp(-x) * sum_{j,l} (b1-a1)_j (a2)_j (b2-a2)_l x^(j+l)
                                         / ((b1)_j j! (b2)_(j+l) l!)

    whose terms are all non-negative when ``b1 >= a1``, ``b2 >= a2``,
    ``a2 >= 0`` and ``b1, b2 > 0``.  ``a1 == b1`` collapses to Kummer's
    ``1F1(a2; b2; -x) = exp(-x) 1F1(b2 - a2; b2; x)``.  The double sum is
    accumulated in log space, so large ``x`` does not overflow.
    """
    if x < 0:
        raise DomainError("kummer_negative takes x >= 0 (argument is -x)")
    if b1 - a1 < 0 or b2 - a2 < 0 or a2 < 0 or b1 <= 0 or b2 <= 0:
        raise DomainError("parameters do not admit a positive rearrangement")
    if x == 0:
        return EvalReport(1.0, 1, 1.0, Branch.KUMMER)
    rep = _rearranged_negative(a1, a2, b1, b2, x)
    # all terms share a sign; the index is 1 up to rounding
    return EvalReport(rep.value, rep.terms_used, 1.0, Branch.KUMMER)


def _signed_arrangements(a: Sequence[float], b: Sequence[float]) -> list:
    """All (a1, a2, b1, b2) orderings the signed rearrangement accepts."""
    if min(b) <= 0:
        return []
    if len(a) == 1 and len(b) == 1:
        return [(b[0], a[0], b[0], b[0])]
    if len(a) == 2 and len(b) == 2:
        out = []
        for (p, q), (r, s) in (((a[0], b[0]), (a[1], b[1])), ((a[0], b[1]), (a[1], b[0]))):
            out += [(p, r, q, s), (r, p, s, q)]
        return out
    return []


def _positive_pairing(a: Sequence[float], b: Sequence[float]):
    """Arrange (a, b) as (a1, a2, b1, b2) with b_i >= a_i, or return None."""
    def ok(ai, bi):
        return bi - ai >= -1e-12 * max(1.0, abs(bi))

    if len(a) == 1 and len(b) == 1:
        (aa,), (bb,) = a, b
        if bb > 0 and aa >= 0 and ok(aa, bb):
            # 1F1(a; b; -x) == 2F2(b, a; b, b; -x) with a unit outer factor
            return (bb, min(aa, bb), bb, bb)
        return None
    if len(a) == 2 and len(b) == 2:
        if min(a) < 0 or min(b) <= 0:
            return None
        for b1, b2 in ((b[0], b[1]), (b[1], b[0])):
            if ok(a[0], b1) and ok(a[1], b2):
                return (min(a[0], b1), min(a[1], b2), b1, b2)
    return None


# ---------------------------------------------------------------------------
# Asymptotic expansions


def _least_term_sum(step: Callable[[int], float], F: float, beta: float, cap: int,
                    *, required: bool = True) -> tuple[float, float, int]:
    """Sum a divergent series up to its least term.

    ``step(k)`` returns ``t_{k+1} / t_k`` with ``t_0 = 1``.  The cut is at
    ``k* = F - beta - 1/2``: terms below ``floor(k*)`` count fully and the
    boundary term with weight ``frac(k*)``.  With ``k* > cap`` the sum is
    plain truncation after ``cap`` terms.  A terminating series (a zero
    term) is always summed to completion.

    Returns (sum, sum of |terms|, number of terms, |boundary term|); the
    last is a (pessimistic) size of the truncation error, 0 if the series
    terminated.
    """
    k_star = F - beta - 0.5
    if k_star > cap:
        n_full, weight = cap, 0.0
    else:
        n_full = int(math.floor(k_star))
        weight = k_star - n_full
    if n_full < 1:
        if not required:
            n_full, weight = 1, 0.0
        else:
            # still fine if the series terminates early
            n_full, weight = -1, 0.0
    acc = _Neumaier()
    abs_sum = 0.0
    term = 1.0
    k = 0
    limit = n_full if n_full >= 0 else cap
    while True:
        if k < limit or n_full < 0:
            acc.add(term)
            abs_sum += abs(term)
        else:
            acc.add(weight * term)
            abs_sum += abs(weight * term)
            break
        term *= step(k)
        k += 1
        if term == 0.0:
            return acc.value, abs_sum, k, 0.0
        if not math.isfinite(term):
            raise BranchUndefined("asymptotic series terms overflowed")
        if n_full < 0 and k >= cap:
            raise BranchUndefined(
                f"|z| = {F} too small for the expansion (least term before k = 1)")
    return acc.value, abs_sum, k + 1, abs(term)


def _signed_power_term(log_mag: float, sign: int, series: float) -> float:
    if sign == 0 or series == 0.0:
        return 0.0
    if log_mag > 709.0:
        raise BranchUndefined("asymptotic prefactor overflows double precision")
    return sign * math.exp(log_mag) * series


def _check_accuracy(value: float, parts: list, rel_tol: float | None, x: float):
    if rel_tol is None:
        return
    tail = sum(p[3] for p in parts)
    if tail > rel_tol * abs(value):
        raise BranchUndefined(
            f"least term {tail / abs(value):.1e} of the value: |z| = {x} too small")


def f11_asymptotic(a: float, b: float, z: float, m: int = 200,
                   rel_tol: float | None = None) -> EvalReport:
    """Large-|z| expansion of 1F1(a; b; z).

    ``z < 0`` (branch ``ASYMPTOTIC_ALGEBRAIC``):
        (-z)^-a Gamma(b)/Gamma(b-a) 2F0(a, a-b+1;; -1/z)
        + exp(z) |z|^(a-b) cos(pi (a-b)) Gamma(b)/Gamma(a) 2F0(b-a, 1-a;; 1/z)

    ``z > 0`` (branch ``ASYMPTOTIC_EXPONENTIAL``):
        exp(z) z^(a-b) Gamma(b)/Gamma(a) 2F0(b-a, 1-a;; 1/z)
        + z^-a cos(pi a) Gamma(b)/Gamma(b-a) 2F0(a, a-b+1;; -1/z)

    The second line of each is exponentially small and carries the Stokes
    half-sum multiplier.  ``m`` caps the number of terms of each 2F0.
    With ``rel_tol`` set, :class:`BranchUndefined` is raised when the least
    term of the dominant series exceeds ``rel_tol * |value|``.
    """
    if int(m) < 1:
        raise ValidationError("m must be >= 1")
    m = int(m)
    if z == 0:
        raise BranchUndefined("asymptotic expansion needs z != 0")
    if _is_nonpositive_integer(b):
        raise PoleInDenominator(f"b = {b} is a pole")
    x = abs(z)
    inv = -1.0 / z

    # algebraic part: 2F0(a, a-b+1;; -1/z), late terms ~ Gamma(k + 2a - b)
    p1, p2 = a, a - b + 1.0
    alg_log, alg_sign = _gamma_ratio([b], [b - a])
    alg_log -= a * math.log(x)
    # exponential part: 2F0(b-a, 1-a;; 1/z), late terms ~ Gamma(k + b - 2a)
    q1, q2 = b - a, 1.0 - a
    exp_log, exp_sign = _gamma_ratio([b], [a])
    exp_log += z + (a - b) * math.log(x)

    dominant_is_alg = z < 0
    parts = []
    for is_alg in (True, False):
        log_mag, sign = (alg_log, alg_sign) if is_alg else (exp_log, exp_sign)
        if sign == 0:
            continue
        if is_alg:
            step = lambda k, u=p1, v=p2: (u + k) * (v + k) / (k + 1) * inv
            beta = 2 * a - b
        else:
            step = lambda k, u=q1, v=q2: (u + k) * (v + k) / (k + 1) * (-inv)
            beta = b - 2 * a
        required = is_alg == dominant_is_alg
        s, s_abs, n, err = _least_term_sum(step, x, beta, m, required=required)
        if not required:
            err = STOKES_UNCERTAINTY * s_abs
            stokes = math.cos(math.pi * (a if is_alg else a - b))
            s *= stokes
            s_abs *= abs(stokes)
        parts.append((_signed_power_term(log_mag, sign, s),
                      _signed_power_term(log_mag, 1, s_abs), n,
                      _signed_power_term(log_mag, 1, err)))
    value = math.fsum(p[0] for p in parts)
    if not math.isfinite(value):
        raise BranchUndefined("asymptotic value is not finite")
    _check_accuracy(value, parts, rel_tol, x)
    abs_total = sum(p[1] for p in parts)
    terms = sum(p[2] for p in parts)
    branch = Branch.ASYMPTOTIC_ALGEBRAIC if dominant_is_alg else Branch.ASYMPTOTIC_EXPONENTIAL
    index = abs_total / abs(value) if value != 0 else math.inf
    return EvalReport(value, max(terms, 1), max(index, 1.0), branch)


def ck_coefficients(a1: float, a2: float, b1: float, b2: float, m: int) -> np.ndarray:
    """Coefficients c_0..c_m of the exponential asymptotic series of 2F2.

    With A = a1 + a2 and B = b1 + b2: c_0 = 1,
    c_1 = (A - 1)(A - B) + b1 b2 - a1 a2, and for k >= 2

        k c_k = (1 - B + a1(2 + a1) + a2(2 + a2) - A B + a1 a2 + b1 b2
                 + (2B - 3(A + 1)) k + 2 k^2) c_{k-1}
                - (k - A + b1 - 1)(k - A + b2 - 1)(k - A + B - 2) c_{k-2}

    The c_k grow factorially; for large ``m`` they overflow, which is why
    the asymptotic sum runs the same recursion on ``c_k / z^k`` instead.
    """
    m = int(m)
    if m < 1:
        raise ValidationError("m must be >= 1")
    A, B = a1 + a2, b1 + b2
    c = np.empty(m + 1)
    c[0] = 1.0
    c[1] = (A - 1.0) * (A - B) + b1 * b2 - a1 * a2
    for k in range(2, m + 1):
        lin, quad = _ck_polys(a1, a2, b1, b2, k)
        c[k] = (lin * c[k - 1] - quad * c[k - 2]) / k
    return c


def _ck_polys(a1, a2, b1, b2, k):
    A, B = a1 + a2, b1 + b2
    lin = (1.0 - B + a1 * (2.0 + a1) + a2 * (2.0 + a2) - A * B + a1 * a2 + b1 * b2
           + (2.0 * B - 3.0 * (A + 1.0)) * k + 2.0 * k * k)
    quad = (k - A + b1 - 1.0) * (k - A + b2 - 1.0) * (k - A + B - 2.0)
    return lin, quad


def _exponential_series_sum(a1, a2, b1, b2, z, beta, cap, required):
    """sum_k c_k z^-k cut at the least term; recursion runs on d_k = c_k z^-k."""
    x = abs(z)
    k_star = x - beta - 0.5
    if k_star > cap:
        n_full, weight = cap, 0.0
    else:
        n_full = int(math.floor(k_star))
        weight = k_star - n_full
    if n_full < 1:
        if required:
            raise BranchUndefined(f"|z| = {x} too small for the exponential expansion")
        n_full, weight = 1, 0.0
    A, B = a1 + a2, b1 + b2
    d_prev, d = 1.0, ((A - 1.0) * (A - B) + b1 * b2 - a1 * a2) / z
    acc = _Neumaier()
    acc.add(1.0)
    abs_sum = 1.0
    k = 1
    while True:
        if k < n_full:
            acc.add(d)
            abs_sum += abs(d)
        else:
            acc.add(weight * d)
            abs_sum += abs(weight * d)
            break
        k += 1
        lin, quad = _ck_polys(a1, a2, b1, b2, k)
        d_prev, d = d, (lin * d / z - quad * d_prev / (z * z)) / k
        if not math.isfinite(d):
            raise BranchUndefined("exponential series terms overflowed")
        if d == 0.0 and d_prev == 0.0:
            return acc.value, abs_sum, k, 0.0
    return acc.value, abs_sum, k + 1, abs(d)


def _integer_distance(v: float) -> float:
    return abs(v - round(v))


def _f22_algebraic_parts(a1, a2, b1, b2, z, m, dominant):
    """The two x^-a_i 3F1 terms; returns (parts, exponents that contribute)."""
    x = abs(z)
    log_x = math.log(x)
    inv = -1.0 / z
    parts, live = [], []
    for p, q in ((a1, a2), (a2, a1)):
        log_mag, sign = _gamma_ratio([b1, b2, q - p], [q, b1 - p, b2 - p])
        if sign == 0:
            continue
        live.append(p)
        log_mag -= p * log_x
        u, v, w, d = p, p - b1 + 1.0, p - b2 + 1.0, p - q + 1.0
        step = lambda k, u=u, v=v, w=w, d=d: (u + k) * (v + k) * (w + k) / ((d + k) * (k + 1)) * inv
        beta = u + v + w - d - 1.0
        s, s_abs, n, err = _least_term_sum(step, x, beta, m, required=dominant)
        if not dominant:
            err = STOKES_UNCERTAINTY * s_abs
            stokes = math.cos(math.pi * p)
            s *= stokes
            s_abs *= abs(stokes)
        parts.append((_signed_power_term(log_mag, sign, s),
                      _signed_power_term(log_mag, 1, s_abs), n,
                      _signed_power_term(log_mag, 1, err)))
    return parts, live


def f22_asymptotic(a1: float, a2: float, b1: float, b2: float, z: float,
                   m: int = 200, degenerate_tol: float = 1e-6,
                   rel_tol: float | None = None) -> EvalReport:
    """Large-|z| expansion of 2F2(a1, a2; b1, b2; z).

    The algebraic part is the pair of terms

        (-z)^-a_i Gamma(b1) Gamma(b2) Gamma(a_j - a_i)
            / (Gamma(a_j) Gamma(b1 - a_i) Gamma(b2 - a_i))
            * 3F1(a_i, a_i - b1 + 1, a_i - b2 + 1; a_i - a_j + 1; -1/z)

    for (i, j) in ((1, 2), (2, 1)), and the exponential part is

        exp(z) z^(A - B) Gamma(b1) Gamma(b2) / (Gamma(a1) Gamma(a2)) sum_k c_k z^-k.

    ``z < 0`` returns the algebraic part plus the Stokes-averaged exponential
    part; ``z > 0`` the reverse.  The algebraic part is undefined when
    ``a1 - a2`` is an integer (within ``degenerate_tol``); for ``z < 0`` this
    raises :class:`DegenerateParameters`; for ``z > 0`` the (exponentially
    small) algebraic correction is taken as the limit, averaged over
    ``a1 +- DEGENERATE_SHIFT``.  ``rel_tol`` works as in
    :func:`f11_asymptotic`.
    """
    if int(m) < 1:
        raise ValidationError("m must be >= 1")
    m = int(m)
    if z == 0:
        raise BranchUndefined("asymptotic expansion needs z != 0")
    for v in (b1, b2):
        if _is_nonpositive_integer(v):
            raise PoleInDenominator(f"b = {v} is a pole")
    x = abs(z)
    log_x = math.log(x)
    A, B = a1 + a2, b1 + b2
    dominant_is_alg = z < 0
    degenerate = _integer_distance(a1 - a2) < degenerate_tol
    if degenerate and dominant_is_alg:
        raise DegenerateParameters(
            f"a1 - a2 = {a1 - a2} is (nearly) an integer; algebraic expansion is confluent")

    if not degenerate:
        parts, live_alg = _f22_algebraic_parts(a1, a2, b1, b2, z, m, dominant_is_alg)
    else:
        # the two algebraic terms have poles that cancel in their sum;
        # average the sum over a1 +- eps, exact up to O(eps^2)
        eps = DEGENERATE_SHIFT
        hi, _ = _f22_algebraic_parts(a1 + eps, a2, b1, b2, z, m, dominant_is_alg)
        lo, _ = _f22_algebraic_parts(a1 - eps, a2, b1, b2, z, m, dominant_is_alg)
        parts, live_alg = [], [a1, a2]
        if hi or lo:
            value = 0.5 * (math.fsum(p[0] for p in hi) + math.fsum(p[0] for p in lo))
            err = 0.5 * (sum(p[3] for p in hi) + sum(p[3] for p in lo))
            parts.append((value, abs(value), sum(p[2] for p in hi + lo), err))

    exp_log, exp_sign = _gamma_ratio([b1, b2], [a1, a2])
    if exp_sign != 0:
        exp_log += z + (A - B) * log_x
        # late c_k are driven by the algebraic terms; the one with the
        # smallest exponent a_i grows fastest
        beta = B - A - min(live_alg) if live_alg else B - A - min(a1, a2)
        s, s_abs, n, err = _exponential_series_sum(a1, a2, b1, b2, z, beta, m,
                                                   required=not dominant_is_alg)
        if dominant_is_alg:
            err = STOKES_UNCERTAINTY * s_abs
            stokes = math.cos(math.pi * (A - B))
            s *= stokes
            s_abs *= abs(stokes)
        parts.append((_signed_power_term(exp_log, exp_sign, s),
                      _signed_power_term(exp_log, 1, s_abs), n,
                      _signed_power_term(exp_log, 1, err)))

    if not parts:
        raise BranchUndefined("every term of the expansion vanished")
    value = math.fsum(p[0] for p in parts)
    if not math.isfinite(value):
        raise BranchUndefined("asymptotic value is not finite")
    _check_accuracy(value, parts, rel_tol, x)
    abs_total = sum(p[1] for p in parts)
    terms = sum(p[2] for p in parts)
    branch = Branch.ASYMPTOTIC_ALGEBRAIC if dominant_is_alg else Branch.ASYMPTOTIC_EXPONENTIAL
    index = abs_total / abs(value) if value != 0 else math.inf
    return EvalReport(value, max(terms, 1), max(index, 1.0), branch)


# ---------------------------------------------------------------------------
# Dispatchers


def _dispatch(spec: HypergeomSpec, policy: EvalPolicy,
              asymptotic: Callable[[], EvalReport]) -> EvalReport:
    z = spec.x
    if z == 0.0:
        return EvalReport(1.0, 1, 1.0, Branch.SERIES)
    params = spec.a + spec.b
    threshold = max(policy.series_threshold, 2.0 * max(abs(v) for v in params))
    if abs(z) >= threshold:
        try:
            rep = asymptotic()
        except (BranchUndefined, DegenerateParameters):
            pass
        else:
            if math.isfinite(rep.value):
                return rep

    pairing = _positive_pairing(spec.a, spec.b) if z < 0 else None
    series = None
    if pairing is None or abs(z) <= policy.series_probe_limit:
        try:
            series = pfq_series(spec, policy.series_rel_tol, policy.max_terms)
        except NoConvergence:
            series = None
        if series is not None and series.cancellation_index <= policy.cancellation_target:
            return series
    if pairing is not None:
        return kummer_negative(*pairing, -z)
    best = None
    if z < 0:
        # signed rearrangement: alternation confined to the first few orders
        for args in _signed_arrangements(spec.a, spec.b):
            try:
                rep = _rearranged_negative(*args, -z)
            except NoConvergence:
                continue
            if math.isfinite(rep.value) and (best is None
                                             or rep.cancellation_index < best.cancellation_index):
                best = rep
        if best is not None and best.cancellation_index <= policy.cancellation_target:
            return best
    candidates = [r for r in (series, best)
                  if r is not None and r.cancellation_index <= policy.cancellation_limit]
    if candidates:
        return min(candidates, key=lambda r: r.cancellation_index)
    raise EvaluationFailure(
        f"no accurate evaluation route for pFq(a={spec.a}, b={spec.b}, x={z})")


def f11(a: float, b: float, z: float, policy: EvalPolicy = DEFAULT_POLICY) -> EvalReport:
    """1F1(a; b; z) through the best available route."""
    spec = HypergeomSpec((a,), (b,), z)
    return _dispatch(spec, policy, lambda: f11_asymptotic(a, b, z, policy.asymptotic_terms,
                                                      policy.asymptotic_rel_tol))


def f22(a1: float, a2: float, b1: float, b2: float, z: float,
        policy: EvalPolicy = DEFAULT_POLICY) -> EvalReport:
    """2F2(a1, a2; b1, b2; z) through the best available route."""
    spec = HypergeomSpec((a1, a2), (b1, b2), z)
    return _dispatch(
        spec, policy,
        lambda: f22_asymptotic(a1, a2, b1, b2, z, policy.asymptotic_terms,
                               policy.degenerate_tol, policy.asymptotic_rel_tol),
    )
