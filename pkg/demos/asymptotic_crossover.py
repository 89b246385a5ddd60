# %% [markdown]
# # Where the large-argument expansion takes over
#
# p_n needs 2F2 at z = -nu.  For small nu the Taylor series is fine; as nu
# grows the series cancels catastrophically and the terms overflow.  Two
# cures are available: a rearranged double series with positive terms, and
# the asymptotic expansion cut at its least term.  Here both are compared
# on the parameters of the fig1 a preset rates.

# %%
import time

import numpy as np

from threestate import (
    FIG1A,
    HypergeomSpec,
    derived_constants,
    f22,
    f22_asymptotic,
    kummer_negative,
    pfq_series,
)

dc = derived_constants(FIG1A)
a = (dc.K2_minus, dc.K2_plus)
b = (dc.K1_minus, dc.K1_plus)
print("numerator", np.round(a, 4), "denominator", np.round(b, 4))

# %% [markdown]
# The plain series reports how much it cancelled: the ratio of the summed
# absolute terms to the result.  At z = -40 that is several digits gone.

# %%
for z in (-5.0, -20.0, -40.0):
    rep = pfq_series(HypergeomSpec(a, b, z))
    print(f"z = {z:6}: series {rep.value:.12e}, cancellation index {rep.cancellation_index:.1e}")

# %% [markdown]
# The rearrangement has no cancellation and serves as the reference.  The
# asymptotic branch agrees to near machine precision once |z| is a few tens,
# and its cost stays flat.

# %%
print(f"{'z':>7} {'rel diff':>10} {'terms':>6} {'t_rearr [ms]':>13} {'t_asym [ms]':>12}")
for z in (-20.0, -30.0, -40.0, -60.0, -90.0, -200.0):
    t0 = time.perf_counter()
    ref = kummer_negative(*a, *b, -z).value
    t1 = time.perf_counter()
    asym = f22_asymptotic(*a, *b, z)
    t2 = time.perf_counter()
    print(f"{z:7.0f} {abs(asym.value / ref - 1):10.1e} {asym.terms_used:6d} "
          f"{1e3 * (t1 - t0):13.2f} {1e3 * (t2 - t1):12.3f}")

# %% [markdown]
# The dispatcher picks the route on its own and says which one it used.

# %%
for z in (-3.0, -35.0, -75.0, 75.0):
    rep = f22(*a, *b, z)
    print(f"z = {z:6}: {rep.branch.value:24s} value {rep.value:.6e}")
