# %% [markdown]
# # A short-lived inactive state barely changes the picture
#
# With k1- = 0.13 the gene rarely falls back into its inactive state, so the
# three-state distribution should sit close to the telegraph model with the
# same poised/active rates.  How close?

# %%
import os

import numpy as np

from threestate import FIG1A, FIG1A_TWO_STATE, distribution, occupancies, tv_distance

OUT = os.environ.get("THREESTATE_OUTPUT_DIR", ".")

three = distribution(FIG1A)
two = distribution(FIG1A_TWO_STATE)
print("occupancies (inactive, poised, active):", np.round(occupancies(FIG1A), 4))
print(f"means: three-state {three.mean():.4f}, two-state {two.mean():.4f}")
print(f"total variation distance: {tv_distance(three, two):.4f}")

# %% [markdown]
# The curves differ most at n = 0: the extra inactive state adds silent
# periods, which shows up as excess mass at zero copies.

# %%
size = max(three.probs.size, two.probs.size)
gap = np.pad(three.probs, (0, size - three.probs.size)) - np.pad(two.probs, (0, size - two.probs.size))
for n in range(6):
    print(f"n={n}: p3={three.probs[n]:.4f} p2={two.probs[n]:.4f} diff={gap[n]:+.4f}")

# %%
try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot(three.support, three.probs, "o-", ms=3, label="three-state, k1- = 0.13")
    ax.plot(two.support, two.probs, "s--", ms=3, label="two-state")
    ax.set_xlabel("mRNA copy number n")
    ax.set_ylabel("p_n")
    ax.legend()
    fig.tight_layout()
    fig.savefig(os.path.join(OUT, "fig1a.png"), dpi=120)
