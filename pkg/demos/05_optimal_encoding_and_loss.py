# %% [markdown]
# # Optimal entanglement versus memory, and capacity versus loss
#
# Left: how the optimal seed squeezing r* follows the memory strength s for
# each rate.  Right: the optimized Holevo rate C as a function of s for a
# range of transmittivities.  At eta = 1 the environment never enters, so C
# does not depend on s; at eta = 0 nothing is transmitted.

# %%
from bmcap.optimize import SweepSpec, sweep

s_grid = (0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0)

# %%
rows = sweep(SweepSpec(variable="s", grid=s_grid, N=8.0, eta=0.7))
print("s     " + "  ".join(f"{k:>10s}" for k in ("holevo", "heterodyne", "homodyne")))
for i, s in enumerate(s_grid):
    r_opt = [rows[j * len(s_grid) + i]["r_opt"] for j in range(3)]
    print(f"{s:<5} " + "  ".join(f"{r:>10.4f}" for r in r_opt))

# %%
etas = (0.0, 0.3, 0.7, 1.0)
rows = sweep(SweepSpec(variable="eta", grid=etas, kinds=("holevo",), N=8.0, s=s_grid))
for eta in etas:
    c = [r["C"] for r in rows if r["eta"] == eta]
    print(f"eta={eta:<4}", " ".join(f"{v:.4f}" for v in c))
