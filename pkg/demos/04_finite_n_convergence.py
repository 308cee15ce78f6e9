# %% [markdown]
# # From a few channel uses to the asymptotic limit
#
# For finite n the optimal per-mode rate is computed from the closed-form
# spectra; it approaches the n -> inf maximum quickly.

# %%
import math

from bmcap import ChannelParams, EncodingParams, asymptotic_rate, maximize_over_r_y, rate_per_mode
from bmcap.asymptotics import riemann_average
from bmcap.special import bessel_i0

params = ChannelParams(eta=0.7, N=8.0, s=1.6)

# %%
limit = maximize_over_r_y("holevo", math.inf, params)
print(f"n=inf: {limit.value:.6f} at r={limit.r_star:.4f}, y={limit.y_star:.4f}")
for n in (1, 2, 3, 5, 10, 20, 30):
    res = maximize_over_r_y("holevo", n, params)
    print(f"n={n:<3d} {res.value:.6f}  gap {limit.value - res.value:+.2e}  r*={res.r_star:.4f}")

# %% [markdown]
# At a fixed encoding the finite-n rate converges like a Riemann sum.

# %%
enc = EncodingParams(r=0.5, y=-0.1)
target = asymptotic_rate("heterodyne", params, enc)
for n in (16, 64, 256, 1024, 4096):
    print(n, abs(rate_per_mode("heterodyne", n, params, enc) - target))

# %% [markdown]
# The same mechanism drives the energy limits: mode averages of exp(2 gamma c_k)
# tend to I0(2 gamma).  The missing endpoint term makes the error roughly
# exp(2 gamma)/(2(n+1)), which is visible at gamma = 2.

# %%
for gamma in (0.5, 1.0, 2.0):
    avg = riemann_average(gamma, 10**4)
    print(gamma, avg - bessel_i0(2 * gamma), -math.cosh(2 * gamma) / (10**4 + 1))
