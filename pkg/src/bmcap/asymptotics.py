"""Limits ``n -> inf``: energy-budget limits and the rate integrals over ``xi in [0, pi]``."""

from __future__ import annotations

import math

import numpy as np

from . import spectral
from .channel import THETA_SLACK, ChannelParams, EncodingParams
from .errors import ConstraintViolation
from .rates import KERNELS, check_kind
from .special import QuadratureSpec, bessel_i0, integrate


def limits_theta_K(r: float, y: float, N: float) -> tuple[float, float]:
    """Limit values of the entanglement share and modulation scale.

    ``theta = (I0(2r) - 1)/(2N)`` and ``K = (2N + 1 - I0(2r))/I0(2y)``.
    The same ``K`` serves both modulation schemes.
    """
    if not N > 0:
        raise ValueError(f"N must be positive, got {N!r}")
    i0r = bessel_i0(2.0 * r)
    theta = (i0r - 1.0) / (2.0 * N)
    if theta > 1.0 + THETA_SLACK:
        raise ConstraintViolation(f"r={r!r} gives theta={theta:.6g} > 1 at N={N!r}")
    K = max(0.0, 2.0 * N + 1.0 - i0r) / bessel_i0(2.0 * y)
    return theta, K


def riemann_average(gamma: float, n: int) -> float:
    """``(1/(n+1)) sum_k exp(2 gamma c_k)``, which tends to ``I0(2 gamma)``."""
    c = spectral.mode_cosines(n)
    return math.fsum(np.exp(2.0 * gamma * c).tolist()) / (n + 1)


def rate_density(kind: str, xi, params: ChannelParams, enc: EncodingParams):
    """Integrand of the asymptotic per-mode rate at angle(s) ``xi``.

    The per-mode rate is ``(1/pi) * integral_0^pi rate_density d xi``.
    """
    kind = check_kind(kind)
    _, K = limits_theta_K(enc.r, enc.y, params.N)
    return KERNELS[kind](np.cos(xi), params.eta, params.s, enc.r, enc.y, K)


def asymptotic_rate(
    kind: str, params: ChannelParams, enc: EncodingParams, quad: QuadratureSpec | None = None
) -> float:
    """Per-mode rate in the limit of infinitely many channel uses, in bits."""
    kind = check_kind(kind)
    _, K = limits_theta_K(enc.r, enc.y, params.N)
    kernel = KERNELS[kind]
    eta, s, r, y = params.eta, params.s, enc.r, enc.y

    def f(xi):
        return kernel(np.cos(xi), eta, s, r, y, K)

    return integrate(f, 0.0, math.pi, quad) / math.pi
