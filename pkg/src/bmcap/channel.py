"""Model covariances, the lossy beam-splitter map and the photon-number budget.

The environment, input seed and classical modulation covariances all share the
sine eigenbasis of the coupling matrix, so every quantity downstream reduces to
per-mode scalars ``c_k = cos(pi k/(n+1))``.  ``n = math.inf`` denotes the
asymptotic regime where sums over modes become integrals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import spectral
from .errors import ConstraintViolation, DimensionError, SolverError
from .special import bessel_i0

SYMMETRIC = "symmetric"
SINGLE_QUADRATURE = "single-quadrature"
SCHEMES = (SYMMETRIC, SINGLE_QUADRATURE)

# theta may exceed 1 by this much from round-off at r = r_max
THETA_SLACK = 1e-12


@dataclass(frozen=True)
class ChannelParams:
    """Physical channel setting.

    Attributes
    ----------
    eta : float
        Beam-splitter transmittivity in [0, 1].
    N : float
        Mean photon number per mode available at the input, > 0.
    s : float
        Memory strength of the environment (``s = 0`` is memoryless).
    """

    eta: float
    N: float
    s: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.eta <= 1.0):
            raise ValueError(f"eta must lie in [0, 1], got {self.eta!r}")
        if not (self.N > 0 and math.isfinite(self.N)):
            raise ValueError(f"N must be a positive finite number, got {self.N!r}")
        if not math.isfinite(self.s):
            raise ValueError(f"s must be finite, got {self.s!r}")


@dataclass(frozen=True)
class EncodingParams:
    """Encoding variables: input entanglement ``r`` and classical correlation ``y``.

    ``scheme`` picks the modulation shape: ``"symmetric"`` modulates both
    quadratures, ``"single-quadrature"`` only q (used for homodyne decoding).
    """

    r: float = 0.0
    y: float = 0.0
    scheme: str = SYMMETRIC

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")
        if not (math.isfinite(self.r) and math.isfinite(self.y)):
            raise ValueError("r and y must be finite")


@dataclass(frozen=True)
class EnergyAccount:
    """Split of the photon budget: ``theta`` on entanglement, ``K`` scales the modulation."""

    theta: float
    K: float


def _is_inf(n) -> bool:
    return isinstance(n, float) and math.isinf(n) and n > 0


def _check_n(n):
    if _is_inf(n):
        return n
    return spectral._check_n(n)


def theta_n(r: float, n, N: float) -> float:
    """Fraction of the photon budget spent on input entanglement.

    ``theta_n = [sum_k cosh(2 r c_k) - n] / (2 n N)``; ``n = inf`` gives the
    limit ``(I0(2r) - 1)/(2N)``.  Values above 1 are returned as-is.
    """
    n = _check_n(n)
    if _is_inf(n):
        return (bessel_i0(2.0 * r) - 1.0) / (2.0 * N)
    c = spectral.mode_cosines(n)
    # cosh(x) - 1 = 2 sinh^2(x/2) keeps theta accurate for small r; overflow to inf is a valid "> 1"
    with np.errstate(over="ignore"):
        return float(np.sum(2.0 * np.sinh(r * c) ** 2)) / (2.0 * n * N)


def r_bounds(n, N: float) -> tuple[float, float]:
    """Allowed interval ``[r_min, r_max]`` where ``theta_n(r) <= 1``.

    For ``n = 1`` the budget never binds and ``(-inf, inf)`` is returned.

    Raises
    ------
    SolverError
        If bisection does not converge in 200 iterations.
    """
    n = _check_n(n)
    if not _is_inf(n) and n == 1:
        return -math.inf, math.inf
    lo, hi = 0.0, 1.0
    for _ in range(200):
        if theta_n(hi, n, N) > 1.0:
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise SolverError("could not bracket r_max")
    for _ in range(200):
        if hi - lo <= 1e-12 * max(1.0, hi):
            break
        mid = 0.5 * (lo + hi)
        if theta_n(mid, n, N) > 1.0:
            hi = mid
        else:
            lo = mid
    else:
        raise SolverError("r_max bisection did not converge in 200 iterations")
    return -lo, lo


def check_energy(r: float, n, N: float) -> float:
    """Return ``theta_n(r)``, raising :class:`ConstraintViolation` if it exceeds 1."""
    theta = theta_n(r, n, N)
    if theta > 1.0 + THETA_SLACK:
        raise ConstraintViolation(
            f"r={r!r} spends theta={theta:.6g} > 1 of the photon budget N={N!r} at n={n!r}"
        )
    return min(theta, 1.0)


def classical_K(y: float, n, N: float, theta: float, scheme: str = SYMMETRIC) -> float:
    """Scale of the classical modulation covariance.

    Symmetric scheme: ``2nN(1-theta) / sum_k cosh(2 y c_k)``.
    Single-quadrature scheme: ``2nN(1-theta) / sum_k exp(2 y c_k)``.
    The two are equal (the ``c_k`` come in ``+-`` pairs) and both tend to
    ``2N(1-theta)/I0(2y)`` as ``n -> inf``.
    """
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}")
    if theta > 1.0 + THETA_SLACK:
        raise ConstraintViolation(f"theta={theta!r} exceeds the photon budget")
    n = _check_n(n)
    budget = 2.0 * N * max(0.0, 1.0 - theta)
    if _is_inf(n):
        return budget / bessel_i0(2.0 * y)
    c = spectral.mode_cosines(n)
    if scheme == SYMMETRIC:
        denom = np.mean(np.cosh(2.0 * y * c))
    else:
        denom = np.mean(np.exp(2.0 * y * c))
    return float(budget / denom)


def energy_account(n, N: float, enc: EncodingParams) -> EnergyAccount:
    theta = check_energy(enc.r, n, N)
    return EnergyAccount(theta=theta, K=classical_K(enc.y, n, N, theta, enc.scheme))


def classical_shape(n: int, y: float, scheme: str = SYMMETRIC) -> np.ndarray:
    """Unnormalized modulation shape ``Y`` (before energy scaling)."""
    if scheme == SYMMETRIC:
        return spectral.exp_omega_covariance(n, y)
    if scheme == SINGLE_QUADRATURE:
        return spectral.block_diag_qp(spectral.exp_omega(n, y), np.zeros((n, n)))
    raise ValueError(f"unknown scheme {scheme!r}")


def build_model_covariances(n: int, params: ChannelParams, enc: EncodingParams):
    """Assemble ``(V_env, V_in, V_cl)`` as dense ``2n x 2n`` matrices.

    Raises
    ------
    ConstraintViolation
        If ``enc.r`` is outside :func:`r_bounds`.
    """
    n = spectral._check_n(n)
    theta = check_energy(enc.r, n, params.N)
    V_env = spectral.exp_omega_covariance(n, params.s)
    V_in = spectral.exp_omega_covariance(n, enc.r)
    Y = classical_shape(n, enc.y, enc.scheme)
    V_cl = (2.0 * n * params.N * (1.0 - theta) / np.trace(Y)) * Y
    return V_env, V_in, V_cl


def _same_shape(*mats):
    shapes = {np.shape(m) for m in mats}
    if len(shapes) != 1:
        raise DimensionError(f"matrix shapes disagree: {sorted(shapes)}")
    spectral.mode_count(mats[0])


def output_covariance(V_in, V_env, eta: float) -> np.ndarray:
    """Covariance after the lossy channel: ``eta V_in + (1 - eta) V_env``."""
    _same_shape(V_in, V_env)
    return eta * np.asarray(V_in, dtype=float) + (1.0 - eta) * np.asarray(V_env, dtype=float)


def averaged_output_covariance(V_out, V_cl, eta: float) -> np.ndarray:
    """Output covariance averaged over the modulation: ``V_out + eta V_cl``."""
    _same_shape(V_out, V_cl)
    return np.asarray(V_out, dtype=float) + eta * np.asarray(V_cl, dtype=float)


def beamsplitter_matrix(n: int, eta: float) -> np.ndarray:
    """Mode-wise beam splitter acting on ``(x_in, x_env)``, each in block ordering."""
    eye = np.eye(2 * spectral._check_n(n))
    t, u = math.sqrt(eta), math.sqrt(1.0 - eta)
    return np.block([[t * eye, u * eye], [-u * eye, t * eye]])


def beamsplitter_joint_transform(V_in, V_env, eta: float):
    """Apply the beam splitter to ``diag(V_in, V_env)`` and return both marginals.

    Returns ``(V_out, V_env_out)``; the first must equal :func:`output_covariance`.
    """
    _same_shape(V_in, V_env)
    n = spectral.mode_count(V_in)
    V_tot = np.zeros((4 * n, 4 * n))
    V_tot[: 2 * n, : 2 * n] = V_in
    V_tot[2 * n :, 2 * n :] = V_env
    B = beamsplitter_matrix(n, eta)
    V_new = B @ V_tot @ B.T
    return V_new[: 2 * n, : 2 * n], V_new[2 * n :, 2 * n :]
