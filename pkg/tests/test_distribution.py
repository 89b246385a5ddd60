import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from threestate import (
    FIG1A,
    FIG1A_TWO_STATE,
    Model,
    NotRescaled,
    RateSet,
    TruncationFailure,
    TwoStateRates,
    ValidationError,
    derived_constants,
    distribution,
    factorial_moment,
    g,
    g2,
    mean_mrna,
    occupancies,
    pn_three_state,
    pn_two_state,
    two_state_mean,
)

from conftest import mp_hyp, random_rates


def test_fig1a_distribution():
    d = distribution(FIG1A)
    assert d.model is Model.THREE_STATE
    assert abs(d.total() - 1.0) < 1e-10
    assert d.tail_mass_bound < 1e-10
    assert np.all(d.probs >= 0)
    assert_allclose(d.mean(), mean_mrna(FIG1A), rtol=1e-10)
    assert_allclose(d.cumulative()[-1], d.total(), rtol=1e-14)
    # G(0) is p_0
    assert_allclose(g(FIG1A, 0.0), d.probs[0], rtol=1e-13)


@pytest.mark.parametrize("n", [0, 1, 5, 20])
def test_pn_against_extended_precision(n):
    dc = derived_constants(FIG1A)
    a = (dc.K2_minus, dc.K2_plus)
    b = (dc.K1_minus, dc.K1_plus)
    log_pref = (math.lgamma(a[0] + n) - math.lgamma(a[0]) + math.lgamma(a[1] + n) - math.lgamma(a[1])
                - math.lgamma(b[0] + n) + math.lgamma(b[0]) - math.lgamma(b[1] + n) + math.lgamma(b[1])
                + n * math.log(FIG1A.nu) - math.lgamma(n + 1))
    ref = math.exp(log_pref) * mp_hyp((a[0] + n, a[1] + n), (b[0] + n, b[1] + n), -FIG1A.nu)
    assert_allclose(pn_three_state(FIG1A, n), ref, rtol=1e-12)


def test_two_state_reduction():
    rates = FIG1A.replace(k1_minus=0.0)
    for n in range(61):
        assert abs(pn_three_state(rates, n) - pn_two_state(4.2, 2.3, 3.0, n)) < 1e-12


def test_two_state_distribution():
    d = distribution(FIG1A_TWO_STATE)
    assert d.model is Model.TWO_STATE
    assert abs(d.total() - 1.0) < 1e-10
    assert_allclose(d.mean(), two_state_mean(FIG1A_TWO_STATE), rtol=1e-10)


def test_moments():
    d = distribution(FIG1A, tail_bound=1e-14)
    n = d.support
    fm2 = math.fsum((n * (n - 1) * d.probs).tolist())
    assert_allclose(factorial_moment(FIG1A, 1), mean_mrna(FIG1A), rtol=1e-14)
    assert_allclose(factorial_moment(FIG1A, 2), fm2, rtol=1e-10)
    mu = mean_mrna(FIG1A)
    assert_allclose(d.variance(), factorial_moment(FIG1A, 2) + mu - mu * mu, rtol=1e-9)


@pytest.mark.parametrize("z", [0.0, 0.3, 0.7, 1.0])
def test_generating_functions(z):
    d = distribution(FIG1A, tail_bound=1e-14)
    assert_allclose(g(FIG1A, z), np.polyval(d.probs[::-1], z), rtol=1e-12)
    if z == 1.0:
        assert_allclose(g2(FIG1A, z), occupancies(FIG1A)[2], rtol=1e-14)


def test_silent_gene():
    no_production = FIG1A.replace(nu=0.0)
    never_active = RateSet.in_lifetime_units(k1_minus=0.5, k1_plus=0.0, k2_minus=1.0,
                                             k2_plus=1.0, nu=3.0)
    for rates in (no_production, never_active):
        d = distribution(rates)
        assert d.n_max == 0 and d.probs.tolist() == [1.0]
        assert pn_three_state(rates, 0) == 1.0 and pn_three_state(rates, 3) == 0.0
        assert factorial_moment(rates, 2) == 0.0
    assert pn_two_state(0.0, 1.0, 3.0, 0) == 1.0


def test_validation():
    with pytest.raises(ValidationError):
        pn_three_state(FIG1A, -1)
    with pytest.raises(ValidationError):
        pn_three_state(FIG1A, 1.5)
    with pytest.raises(NotRescaled):
        distribution(RateSet(1.3, 0.13, 4.2, 2.3, 3.0))
    with pytest.raises(ValidationError):
        distribution(FIG1A, tail_bound=0.0)
    with pytest.raises(ValidationError):
        distribution({"nu": 3.0})
    with pytest.raises(ValidationError):
        factorial_moment(FIG1A, 0)


def test_truncation_failure():
    with pytest.raises(TruncationFailure):
        distribution(FIG1A.replace(nu=200.0), hard_cap=20)


@pytest.mark.parametrize("nu", [30.0, 100.0, 200.0])
def test_large_nu(nu):
    rates = FIG1A.replace(nu=nu)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        d = distribution(rates)
    assert abs(d.total() - 1.0) < 1e-9
    assert_allclose(d.mean(), mean_mrna(rates), rtol=1e-9)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_normalization_random_rates(seed):
    rates = random_rates(np.random.default_rng(seed), nu_max=20.0)
    d = distribution(rates)
    assert abs(d.total() - 1.0) < 1e-9
    assert_allclose(d.mean(), mean_mrna(rates), rtol=1e-8, atol=1e-12)
    assert np.all(d.probs >= 0)
