# %% [markdown]
# # The memoryless channel as a baseline
#
# With no memory (s = 0), an unentangled vacuum seed (r = 0) and i.i.d.
# modulation (y = 0), every channel use is an independent lossy bosonic
# channel.  The three rates then reduce to textbook single-mode formulas.

# %%
import math

from bmcap import ChannelParams, EncodingParams, entropy_g, rate_per_mode
from bmcap.rates import RATE_KINDS, memoryless_baseline, scheme_for

N, eta = 8.0, 0.7
params = ChannelParams(eta=eta, N=N, s=0.0)

# %% [markdown]
# Closed forms: g(eta N) for the Holevo rate, log2(1 + eta N) for heterodyne
# and (1/2) log2(1 + 4 eta N) for homodyne detection.

# %%
closed = {
    "holevo": entropy_g(eta * N),
    "heterodyne": math.log2(1 + eta * N),
    "homodyne": 0.5 * math.log2(1 + 4 * eta * N),
}
for kind in RATE_KINDS:
    enc = EncodingParams(scheme=scheme_for(kind))
    print(f"{kind:<11s} n=1: {rate_per_mode(kind, 1, params, enc):.10f}   closed form: {closed[kind]:.10f}")

# %% [markdown]
# Without memory the per-mode value does not depend on how many uses we group.

# %%
for n in (1, 4, 16, 64):
    print(n, [round(rate_per_mode(k, n, params, EncodingParams(scheme=scheme_for(k))), 12) for k in RATE_KINDS])

# %%
# the same numbers straight from the baseline helper, as a function of N
for n_photons in (1, 2, 4, 8, 16):
    print(n_photons, [round(memoryless_baseline(k, n_photons, eta), 4) for k in RATE_KINDS])
