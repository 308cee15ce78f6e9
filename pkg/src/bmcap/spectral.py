"""Coupling matrix, model covariances, entropies and a generic symplectic solver.

All covariance matrices use the block quadrature ordering
``(q_1, ..., q_n, p_1, ..., p_n)`` with hbar = 1, so the vacuum has variance 1/2
in every quadrature.  Many Gaussian-state libraries interleave ``(q_1, p_1, q_2,
p_2, ...)`` instead; use :func:`interleave_permutation` to convert.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .errors import DimensionError, DomainError, SpectralError

VACUUM_VARIANCE = 0.5
SYMMETRY_RTOL = 1e-12
PAIRING_TOL = 1e-9
ENTROPY_CLAMP = 1e-12


def _check_n(n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DimensionError(f"mode count must be a positive integer, got {n!r}")
    return int(n)


def mode_angles(n: int) -> np.ndarray:
    """Discrete angles ``pi*k/(n+1)`` for ``k = 1..n``."""
    n = _check_n(n)
    return np.pi * np.arange(1, n + 1) / (n + 1)


def mode_cosines(n: int) -> np.ndarray:
    """``cos(pi*k/(n+1))`` for ``k = 1..n``, i.e. half the coupling eigenvalues.

    The returned array is cached and read-only.
    """
    return _mode_cosines(_check_n(n))


@lru_cache(maxsize=256)
def _mode_cosines(n: int) -> np.ndarray:
    c = np.cos(mode_angles(n))
    # enforce c[k] == -c[n-1-k] bit-for-bit (and an exact zero middle mode)
    c = 0.5 * (c - c[::-1])
    c.flags.writeable = False
    return c


def build_omega(n: int) -> np.ndarray:
    """Nearest-neighbour coupling matrix: zero diagonal, ones on the first off-diagonals."""
    n = _check_n(n)
    omega = np.zeros((n, n))
    idx = np.arange(n - 1)
    omega[idx, idx + 1] = 1.0
    omega[idx + 1, idx] = 1.0
    return omega


def omega_eigenvalues(n: int) -> np.ndarray:
    """Closed-form eigenvalues ``2 cos(pi j/(n+1))``, ``j = 1..n`` (descending)."""
    return 2.0 * mode_cosines(n)


def omega_eigenvectors(n: int) -> np.ndarray:
    """Orthonormal sine basis; column ``j-1`` is the eigenvector for ``omega_eigenvalues(n)[j-1]``."""
    n = _check_n(n)
    k = np.arange(1, n + 1)
    return math.sqrt(2.0 / (n + 1)) * np.sin(np.outer(k, k) * np.pi / (n + 1))


def exp_omega(n: int, gamma: float) -> np.ndarray:
    """Matrix exponential ``exp(gamma * Omega)`` assembled in the sine eigenbasis."""
    v = omega_eigenvectors(n)
    w = np.exp(gamma * omega_eigenvalues(n))
    out = (v * w) @ v.T
    return 0.5 * (out + out.T)


def exp_omega_covariance(n: int, gamma: float) -> np.ndarray:
    """Multimode squeezed-vacuum covariance ``(1/2) diag(exp(gamma Omega), exp(-gamma Omega))``.

    Parameters
    ----------
    n : int
        Number of modes.
    gamma : float
        Squeezing parameter; ``gamma = 0`` gives the vacuum.

    Returns
    -------
    ndarray, shape (2n, 2n)
        Covariance in ``(q..., p...)`` ordering with zero qp blocks.
    """
    e = exp_omega(n, gamma)
    # exp(-gamma Omega) is the inverse of exp(gamma Omega); reuse the basis rather than inverting
    e_inv = exp_omega(n, -gamma)
    return block_diag_qp(0.5 * e, 0.5 * e_inv)


def block_diag_qp(qq: np.ndarray, pp: np.ndarray) -> np.ndarray:
    """Assemble a covariance with the given qq and pp blocks and zero qp blocks."""
    qq = np.asarray(qq, dtype=float)
    pp = np.asarray(pp, dtype=float)
    if qq.shape != pp.shape or qq.ndim != 2 or qq.shape[0] != qq.shape[1]:
        raise DimensionError(f"qq and pp blocks must be equal square matrices, got {qq.shape} and {pp.shape}")
    n = qq.shape[0]
    out = np.zeros((2 * n, 2 * n))
    out[:n, :n] = qq
    out[n:, n:] = pp
    return out


def mode_count(V: np.ndarray) -> int:
    """Number of modes of a ``2n x 2n`` covariance matrix."""
    V = np.asarray(V)
    if V.ndim != 2 or V.shape[0] != V.shape[1] or V.shape[0] % 2 or V.shape[0] == 0:
        raise DimensionError(f"covariance must be a nonempty 2n x 2n matrix, got shape {V.shape}")
    return V.shape[0] // 2


def symplectic_form(n: int) -> np.ndarray:
    """``[[0, I], [-I, 0]]`` for the block ordering."""
    n = _check_n(n)
    eye = np.eye(n)
    out = np.zeros((2 * n, 2 * n))
    out[:n, n:] = eye
    out[n:, :n] = -eye
    return out


def interleave_permutation(n: int) -> np.ndarray:
    """Index array mapping block ordering to ``(q1, p1, q2, p2, ...)``.

    ``V[np.ix_(perm, perm)]`` converts a block-ordered covariance to interleaved form.
    """
    n = _check_n(n)
    perm = np.empty(2 * n, dtype=int)
    perm[0::2] = np.arange(n)
    perm[1::2] = np.arange(n, 2 * n)
    return perm


def is_symmetric(V: np.ndarray, rtol: float = SYMMETRY_RTOL) -> bool:
    V = np.asarray(V, dtype=float)
    scale = max(np.max(np.abs(V)), 1.0)
    return bool(np.max(np.abs(V - V.T)) <= rtol * scale)


def entropy_g(x):
    """Entropy of a thermal mode with mean photon number ``x``, in bits.

    ``g(x) = (x+1) log2(x+1) - x log2(x)`` with ``g(0) = 0``.  Values in
    ``[-1e-12, 0)`` are treated as round-off and clamped to zero.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr < -ENTROPY_CLAMP) or np.any(np.isnan(arr)):
        raise DomainError(f"entropy_g needs x >= 0 (unphysical symplectic eigenvalue), got min {np.min(arr)!r}")
    out = _g_nonneg(np.maximum(arr, 0.0))
    return float(out) if out.ndim == 0 else out


def _g_nonneg(arr: np.ndarray) -> np.ndarray:
    # g(x) = log2(1+x) + x log2(1 + 1/x); the split avoids cancellation for large x
    # and overflow of 1/x for tiny x
    with np.errstate(divide="ignore", invalid="ignore"):
        safe = np.where(arr > 0, arr, 1.0)
        tail = np.where(
            arr >= 1.0,
            arr * np.log1p(1.0 / safe),
            np.where(arr > 0, arr * (np.log1p(arr) - np.log(safe)), 0.0),
        )
    return (np.log1p(arr) + tail) / math.log(2.0)


def symplectic_eigenvalues(V: np.ndarray) -> np.ndarray:
    """Symplectic spectrum of a positive-definite covariance, sorted ascending.

    Generic path with no structural assumptions.  The eigenvalues of
    ``Sigma^{-1} V`` are ``+-i nu_k``; they are obtained from the similar
    Hermitian matrix ``i L^T Sigma^{-1} L`` (``V = L L^T``), whose real
    eigenvalues are ``+-nu_k``.  Positive and negative halves must pair within
    ``1e-9`` relative.
    """
    V = np.asarray(V, dtype=float)
    n = mode_count(V)
    if not is_symmetric(V):
        raise SpectralError("covariance matrix is not symmetric")
    V = 0.5 * (V + V.T)
    try:
        L = np.linalg.cholesky(V)
    except np.linalg.LinAlgError as exc:
        raise SpectralError("covariance matrix is not positive definite") from exc
    sigma_inv = symplectic_form(n).T
    H = 1j * (L.T @ sigma_inv @ L)
    ev = np.linalg.eigvalsh(H)
    neg = -ev[:n][::-1]
    pos = ev[n:]
    if np.any(pos <= 0) or np.any(np.abs(pos - neg) > PAIRING_TOL * np.maximum(pos, 1.0)):
        raise SpectralError("eigenvalues of Sigma^-1 V do not form +-i nu pairs")
    return 0.5 * (pos + neg)


def von_neumann_entropy(V: np.ndarray) -> float:
    """Von Neumann entropy in bits of the Gaussian state with covariance ``V``."""
    nu = symplectic_eigenvalues(V)
    return float(np.sum(entropy_g(nu - VACUUM_VARIANCE)))
