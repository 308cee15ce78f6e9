# %% [markdown]
# # Closed-form symplectic spectra versus brute force
#
# The environment covariance is (1/2) diag(exp(s Omega), exp(-s Omega)) with
# a tridiagonal coupling matrix Omega.  Its sine eigenbasis diagonalizes every
# model covariance at once, so each output symplectic eigenvalue has a closed
# form.  Here we rebuild the dense 2n x 2n matrices and compare.

# %%
import numpy as np
from scipy.linalg import expm

from bmcap import ChannelParams, EncodingParams, build_omega, exp_omega, omega_eigenvalues
from bmcap.rates import closed_form_spectra, holevo_chi
from bmcap.spectral import symplectic_eigenvalues
from bmcap.verify import holevo_chi_matrix, output_matrices

# %%
n = 6
print("eigenvalues of Omega:", np.round(omega_eigenvalues(n), 6))
print("dense eigensolver:   ", np.round(np.linalg.eigvalsh(build_omega(n))[::-1], 6))
print("exp(gamma Omega) vs expm:", np.max(np.abs(exp_omega(n, 1.3) - expm(1.3 * build_omega(n)))))

# %% [markdown]
# Output spectra for a point with memory, entanglement and correlated modulation.

# %%
params = ChannelParams(eta=0.7, N=8.0, s=0.8)
enc = EncodingParams(r=0.3, y=0.2)
nu, nubar = closed_form_spectra(n, params, enc)
V_out, V_bar = output_matrices(n, params, enc)
print("nu   closed:", np.round(np.sort(nu), 10))
print("nu   dense :", np.round(symplectic_eigenvalues(V_out), 10))
print("nubar closed:", np.round(np.sort(nubar), 8))
print("nubar dense :", np.round(symplectic_eigenvalues(V_bar), 8))

# %%
print("Holevo chi, closed form  :", holevo_chi(n, params, enc))
print("Holevo chi, dense entropy:", holevo_chi_matrix(n, params, enc))

# %% [markdown]
# When the seed squeezing matches the memory (r = s) the output is pure.

# %%
nu, _ = closed_form_spectra(n, params, EncodingParams(r=0.8, y=0.0))
print("r = s:", nu)
