# %% [markdown]
# # Rates for infinitely many uses, as a function of the entanglement r
#
# For n -> inf the mode sums become integrals over xi in [0, pi].  For each
# memory strength s we maximize over the classical correlation y at every r,
# which gives the curves behind the right-hand panels of the rate figures.

# %%
import math

import numpy as np

from bmcap import ChannelParams, maximize_over_r_y, r_bounds
from bmcap.optimize import SweepSpec, sweep

N, eta = 8.0, 0.7
S_VALUES = (0.0, 0.8, 1.6, 2.5)
_, r_max = r_bounds(math.inf, N)
print(f"photon budget N={N} allows |r| <= {r_max:.6f}")

# %%
grid = tuple(np.linspace(-r_max + 1e-9, r_max - 1e-9, 13))
rows = sweep(SweepSpec(variable="r", grid=grid, kinds=("holevo",), N=N, eta=eta, s=S_VALUES))
print("r       " + "".join(f"s={s:<8}" for s in S_VALUES))
for i, r in enumerate(grid):
    vals = [rows[j * len(grid) + i]["value"] for j in range(len(S_VALUES))]
    print(f"{r:+.3f}  " + "".join(f"{v:<10.4f}" for v in vals))

# %% [markdown]
# The maxima of these curves: memory helps the Holevo rate at moderate s,
# while both measured rates only lose.

# %%
for kind in ("holevo", "heterodyne", "homodyne"):
    best = [maximize_over_r_y(kind, math.inf, ChannelParams(eta, N, s)) for s in S_VALUES]
    print(f"{kind:<11s}", "  ".join(f"{b.value:.4f} (r*={b.r_star:+.3f})" for b in best))
