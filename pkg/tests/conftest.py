import mpmath
import numpy as np
import pytest

from threestate import RateSet


def mp_hyp(a, b, z, digits=50):
    """Reference pFq: the Taylor series summed term by term in mpmath.

    mpmath.hyper switches to its own asymptotics for large |z| and is not
    reliable there (2F2(2, 5; 4, 4; 60) is off by 6e-4), so the series is
    summed directly.  For z < 0 the terms reach e^|z| while the sum can be
    as small as e^-|z|, so the working precision adds 2|z|/ln(10) digits.
    """
    dps = digits + 10 + int(2.0 * abs(z) / 2.302585 + 1)
    with mpmath.workdps(dps):
        a = [mpmath.mpf(v) for v in a]
        b = [mpmath.mpf(v) for v in b]
        z = mpmath.mpf(z)
        total = mpmath.mpf(0)
        term = mpmath.mpf(1)
        eps = mpmath.mpf(10) ** (-digits - 5)
        k = 0
        while True:
            total += term
            if term == 0:
                break
            term *= z / (k + 1)
            for v in a:
                term *= v + k
            for v in b:
                term /= v + k
            k += 1
            if k > abs(z) and abs(term) <= eps * abs(total):
                break
        return float(total)


def random_rates(rng, nu_max=10.0, k_range=(0.05, 20.0)):
    lo, hi = k_range
    k = np.exp(rng.uniform(np.log(lo), np.log(hi), size=4))
    nu = rng.uniform(0.1, nu_max)
    return RateSet.in_lifetime_units(k1_minus=k[0], k1_plus=k[1], k2_minus=k[2],
                                     k2_plus=k[3], nu=nu)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


# one line per acceptance check, printed at the end of the run
ACCEPTANCE = []


def record(label, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}"
    ACCEPTANCE.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance checks")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
