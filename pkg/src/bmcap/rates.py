"""Closed-form symplectic spectra and finite-n information rates.

Every rate is a sum over modes of a function of ``c_k = cos(pi k/(n+1))``.
The per-mode kernels below are shared with the asymptotic module, where the
sum becomes an integral over ``c = cos(xi)``.  Totals are in bits; nothing
here assembles a ``2n x 2n`` matrix.
"""

from __future__ import annotations

import math

import numpy as np

from . import spectral
from .channel import (
    SINGLE_QUADRATURE,
    SYMMETRIC,
    ChannelParams,
    EncodingParams,
    energy_account,
)
from .spectral import _g_nonneg, entropy_g

HOLEVO = "holevo"
HETERODYNE = "heterodyne"
HOMODYNE = "homodyne"
RATE_KINDS = (HOLEVO, HETERODYNE, HOMODYNE)

_LN2 = math.log(2.0)


def check_kind(kind: str) -> str:
    if kind not in RATE_KINDS:
        raise ValueError(f"rate kind must be one of {RATE_KINDS}, got {kind!r}")
    return kind


def scheme_for(kind: str) -> str:
    """Modulation scheme each rate is evaluated with."""
    return SINGLE_QUADRATURE if check_kind(kind) == HOMODYNE else SYMMETRIC


def _require_scheme(enc: EncodingParams, kind: str, allowed):
    if enc.scheme not in allowed:
        raise ValueError(f"{kind} rate needs scheme in {allowed}, got {enc.scheme!r}")


# ---------------------------------------------------------------- kernels


def nu_excess(c, eta, s, r, y, K):
    """``(nu - 1/2, nubar - 1/2)`` per mode, written to avoid cancellation near purity.

    ``4 nu^2 = 1 + 4 eta (1-eta) sinh^2((s-r) c)`` and ``4 nubar^2`` adds the
    modulation terms ``eta^2 K^2 + 2 eta^2 K cosh(2(r-y)c) + 2 eta(1-eta) K cosh(2(s-y)c)``.
    """
    c = np.asarray(c, dtype=float)
    u = 4.0 * eta * (1.0 - eta) * np.sinh((s - r) * c) ** 2
    ubar = (
        u
        + (eta * K) ** 2
        + 2.0 * eta**2 * K * np.cosh(2.0 * (r - y) * c)
        + 2.0 * eta * (1.0 - eta) * K * np.cosh(2.0 * (s - y) * c)
    )
    # sqrt(1+u) - 1 == u / (sqrt(1+u) + 1)
    return 0.5 * u / (np.sqrt(1.0 + u) + 1.0), 0.5 * ubar / (np.sqrt(1.0 + ubar) + 1.0)


def holevo_kernel(c, eta, s, r, y, K):
    x, xbar = nu_excess(c, eta, s, r, y, K)
    # both excesses are nonnegative by construction
    return _g_nonneg(xbar) - _g_nonneg(x)


def heterodyne_kernel(c, eta, s, r, y, K):
    c = np.asarray(c, dtype=float)
    total = 0.0
    for sign in (1.0, -1.0):
        num = K * eta * np.exp(sign * 2.0 * y * c)
        den = eta * np.exp(sign * 2.0 * r * c) + (1.0 - eta) * np.exp(sign * 2.0 * s * c) + 1.0
        total = total + np.log1p(num / den)
    return 0.5 * total / _LN2


def homodyne_kernel(c, eta, s, r, y, K):
    c = np.asarray(c, dtype=float)
    num = 2.0 * K * eta * np.exp(2.0 * y * c)
    den = eta * np.exp(2.0 * r * c) + (1.0 - eta) * np.exp(2.0 * s * c)
    return 0.5 * np.log1p(num / den) / _LN2


KERNELS = {HOLEVO: holevo_kernel, HETERODYNE: heterodyne_kernel, HOMODYNE: homodyne_kernel}


# ---------------------------------------------------------------- finite n


def closed_form_spectra(n: int, params: ChannelParams, enc: EncodingParams):
    """Arrays ``(nu, nubar)`` over ``k = 1..n`` for ``V_out`` and ``V_out_bar``."""
    acct = energy_account(n, params.N, enc)
    x, xbar = nu_excess(spectral.mode_cosines(n), params.eta, params.s, enc.r, enc.y, acct.K)
    return x + 0.5, xbar + 0.5


def closed_form_nu(k: int, n: int, params: ChannelParams, enc: EncodingParams):
    """Symplectic eigenvalues ``(nu_k, nubar_k)`` of the output and averaged output states."""
    if not 1 <= k <= n:
        raise ValueError(f"mode index k must lie in 1..{n}, got {k}")
    nu, nubar = closed_form_spectra(n, params, enc)
    return float(nu[k - 1]), float(nubar[k - 1])


def _terms(kind, n, params, enc):
    acct = energy_account(n, params.N, enc)
    c = spectral.mode_cosines(n)
    return KERNELS[kind](c, params.eta, params.s, enc.r, enc.y, acct.K)


def _ordered_sum(terms) -> float:
    # exactly rounded, so the total does not depend on accumulation order
    return math.fsum(np.atleast_1d(terms).tolist())


def holevo_chi(n: int, params: ChannelParams, enc: EncodingParams) -> float:
    """Holevo-chi over ``n`` channel uses, in bits (total, not per mode)."""
    _require_scheme(enc, HOLEVO, (SYMMETRIC,))
    return _ordered_sum(_terms(HOLEVO, n, params, enc))


def heterodyne_info(n: int, params: ChannelParams, enc: EncodingParams) -> float:
    """Mutual information for heterodyne decoding, in bits (total)."""
    _require_scheme(enc, HETERODYNE, (SYMMETRIC,))
    return _ordered_sum(_terms(HETERODYNE, n, params, enc))


def homodyne_info(n: int, params: ChannelParams, enc: EncodingParams) -> float:
    """Mutual information for homodyne decoding of q, in bits (total).

    Either scheme is accepted.  The single-quadrature normalization
    ``2nN(1-theta)/sum_k exp(2 y c_k)`` and the symmetric one with ``cosh``
    coincide, because the ``c_k`` come in ``+-`` pairs.
    """
    return _ordered_sum(_terms(HOMODYNE, n, params, enc))


RATE_FUNCTIONS = {HOLEVO: holevo_chi, HETERODYNE: heterodyne_info, HOMODYNE: homodyne_info}


def rate_total(kind: str, n: int, params: ChannelParams, enc: EncodingParams) -> float:
    return RATE_FUNCTIONS[check_kind(kind)](n, params, enc)


def rate_per_mode(kind: str, n: int, params: ChannelParams, enc: EncodingParams) -> float:
    return rate_total(kind, n, params, enc) / n


def memoryless_baseline(kind: str, N: float, eta: float) -> float:
    """Per-mode rate of the memoryless channel with vacuum seed and i.i.d. modulation."""
    kind = check_kind(kind)
    if kind == HOLEVO:
        return entropy_g(eta * N)
    if kind == HETERODYNE:
        return math.log2(1.0 + eta * N)
    return 0.5 * math.log2(1.0 + 4.0 * eta * N)
