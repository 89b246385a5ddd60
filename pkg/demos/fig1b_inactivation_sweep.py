# %% [markdown]
# # Longer inactive periods shift mass towards zero
#
# Raising k1- makes the gene spend more time inactive.  The active-state
# occupancy gamma2 drops and the mean copy number nu*gamma2 with it.

# %%
import os

from threestate import FIG1B_K1_MINUS, distribution, fig1b_rates, mean_mrna, occupancies

OUT = os.environ.get("THREESTATE_OUTPUT_DIR", ".")

curves = {}
for k1m in FIG1B_K1_MINUS:
    rates = fig1b_rates(k1m)
    curves[k1m] = distribution(rates)
    g0, g1, g2 = occupancies(rates)
    print(f"k1- = {k1m:5}: gamma = ({g0:.3f}, {g1:.3f}, {g2:.3f})  "
          f"mean = {mean_mrna(rates):.4f}  p_0 = {curves[k1m].probs[0]:.4f}")

# %% [markdown]
# The summed distribution reproduces nu*gamma2 to rounding, which is a
# useful check on the whole evaluation chain.

# %%
for k1m, d in curves.items():
    print(f"k1- = {k1m:5}: sum n p_n - nu gamma2 = {d.mean() - mean_mrna(fig1b_rates(k1m)):.1e}")

# %%
try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(5, 3.5))
    for (k1m, d), color in zip(curves.items(), ("tab:red", "tab:blue", "tab:green")):
        ax.plot(d.support, d.probs, "o-", ms=3, color=color, label=f"k1- = {k1m}")
    ax.set_xlabel("mRNA copy number n")
    ax.set_ylabel("p_n")
    ax.legend()
    fig.tight_layout()
    fig.savefig(os.path.join(OUT, "fig1b.png"), dpi=120)
