"""Brute-force oracles that cross-check every closed-form result.

Each check assembles dense matrices (or sums modes explicitly) without using
the shared eigenbasis, compares against the fast path, and returns a
:class:`CheckReport`.  Parameter draws come from a seeded generator, so a
report is reproducible.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass

import numpy as np

from . import spectral
from .asymptotics import asymptotic_rate, limits_theta_K, riemann_average
from .channel import (
    SINGLE_QUADRATURE,
    SYMMETRIC,
    ChannelParams,
    EncodingParams,
    averaged_output_covariance,
    beamsplitter_joint_transform,
    build_model_covariances,
    classical_K,
    output_covariance,
    r_bounds,
    theta_n,
)
from .rates import (
    RATE_KINDS,
    closed_form_spectra,
    heterodyne_info,
    homodyne_info,
    rate_per_mode,
    scheme_for,
)
from .special import bessel_i0

DEFAULT_SEED = 20100614
DEFAULT_N_MAX = 64
RANDOM_THETA_MAX = 0.9

SYMPLECTIC_RTOL = 1e-9
MARGINAL_ATOL = 1e-12
DETERMINANT_ATOL = 1e-10
LIMIT_ATOL = 1e-3


@dataclass
class CheckReport:
    name: str
    grid: str
    max_abs_dev: float
    max_rel_dev: float
    tolerance: float
    passed: bool
    wall_time: float
    cases: int = 0
    detail: str = ""

    def as_dict(self) -> dict:
        return asdict(self)


class _Tally:
    """Running maxima of the deviations; cases beyond ``tol`` are named."""

    def __init__(self, tol: float, relative: bool = False):
        self.tol = tol
        self.relative = relative
        self.abs = 0.0
        self.rel = 0.0
        self.cases = 0
        self.failures = []

    def add(self, got, want, label=""):
        got = np.atleast_1d(np.asarray(got, dtype=float))
        want = np.atleast_1d(np.asarray(want, dtype=float))
        self.cases += 1
        if got.shape != want.shape:
            self.failures.append(f"{label}: shape {got.shape} != {want.shape}")
            return
        d = np.abs(got - want)
        # relative deviation against an exact zero is reported as the absolute one
        rel = d / np.where(want != 0.0, np.abs(want), 1.0)
        a, r = float(np.max(d)), float(np.max(rel))
        self.abs = max(self.abs, a)
        self.rel = max(self.rel, r)
        dev = r if self.relative else a
        if not dev <= self.tol:
            self.failures.append(f"{label}: {'rel' if self.relative else 'abs'} dev {dev:.3e}")


def _doubling(start: int, n_max: int):
    out = []
    n = start
    while n <= n_max:
        out.append(n)
        n *= 2
    return out


def random_point(rng: np.random.Generator, n: int, scheme: str = SYMMETRIC):
    """Random ``(params, enc)`` with ``theta_n <= 0.9``."""
    eta = float(rng.uniform(0.0, 1.0))
    N = float(rng.uniform(0.5, 10.0))
    s = float(rng.uniform(-2.0, 2.0))
    # theta_n(r, n, N) = 0.9  <=>  theta_n(r, n, 0.9 N) = 1
    r_cap = min(2.0, r_bounds(n, RANDOM_THETA_MAX * N)[1]) if n > 1 else 2.0
    r = float(rng.uniform(-r_cap, r_cap))
    y = float(rng.uniform(-2.0, 2.0))
    return ChannelParams(eta=eta, N=N, s=s), EncodingParams(r=r, y=y, scheme=scheme)


def output_matrices(n: int, params: ChannelParams, enc: EncodingParams):
    """Dense ``(V_out, V_out_bar)`` assembled from the model covariances."""
    V_env, V_in, V_cl = build_model_covariances(n, params, enc)
    V_out = output_covariance(V_in, V_env, params.eta)
    return V_out, averaged_output_covariance(V_out, V_cl, params.eta)


def holevo_chi_matrix(n: int, params: ChannelParams, enc: EncodingParams) -> float:
    """Holevo-chi as a difference of generic von Neumann entropies."""
    V_out, V_bar = output_matrices(n, params, enc)
    return spectral.von_neumann_entropy(V_bar) - spectral.von_neumann_entropy(V_out)


def _log2_det_ratio(A, B) -> float:
    sa, la = np.linalg.slogdet(A)
    sb, lb = np.linalg.slogdet(B)
    if sa <= 0 or sb <= 0:
        raise ValueError("determinant ratio of non-positive-definite matrices")
    return (la - lb) / math.log(2.0)


def heterodyne_info_matrix(n: int, params: ChannelParams, enc: EncodingParams) -> float:
    """``(1/2) log2 |(V_bar + 1/2)(V_out + 1/2)^{-1}|``."""
    V_out, V_bar = output_matrices(n, params, enc)
    half = 0.5 * np.eye(2 * n)
    return 0.5 * _log2_det_ratio(V_bar + half, V_out + half)


def homodyne_info_matrix(n: int, params: ChannelParams, enc: EncodingParams) -> float:
    """``(1/2) log2 |V_bar^{qq} (V_out^{qq})^{-1}|`` on the q blocks."""
    V_out, V_bar = output_matrices(n, params, enc)
    return 0.5 * _log2_det_ratio(V_bar[:n, :n], V_out[:n, :n])


def _finish(name, grid, tally, t0) -> CheckReport:
    return CheckReport(
        name=name,
        grid=grid,
        max_abs_dev=tally.abs,
        max_rel_dev=tally.rel,
        tolerance=tally.tol,
        passed=not tally.failures,
        wall_time=time.perf_counter() - t0,
        cases=tally.cases,
        detail="; ".join(tally.failures),
    )


def check_symplectic_closed_form(
    n_max: int = DEFAULT_N_MAX,
    seed: int = DEFAULT_SEED,
    draws: int = 3,
    anchor: ChannelParams | None = None,
) -> CheckReport:
    """Closed-form ``nu_k``, ``nubar_k`` against the generic symplectic solver."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    tally = _Tally(SYMPLECTIC_RTOL, relative=True)
    anchor = anchor or ChannelParams(eta=0.7, N=8.0, s=0.8)
    cases = [(2, anchor, EncodingParams(r=0.3, y=0.2))]
    # pure output when r = s; eta = 0 suppresses the modulation
    cases.append((4, ChannelParams(0.7, 8.0, 0.5), EncodingParams(r=0.5, y=-0.4)))
    cases.append((4, ChannelParams(0.0, 8.0, 1.1), EncodingParams(r=0.3, y=0.7)))
    for n in _doubling(2, n_max):
        cases.extend((n, *random_point(rng, n)) for _ in range(draws))
    for n, params, enc in cases:
        V_out, V_bar = output_matrices(n, params, enc)
        nu, nubar = closed_form_spectra(n, params, enc)
        tally.add(spectral.symplectic_eigenvalues(V_out), np.sort(nu), f"n={n} V_out")
        tally.add(spectral.symplectic_eigenvalues(V_bar), np.sort(nubar), f"n={n} V_bar")
    grid = f"n in {_doubling(2, n_max)}, {draws} random draws each + 3 fixed cases"
    return _finish("symplectic closed form", grid, tally, t0)


def check_beamsplitter_marginal(n_max: int = DEFAULT_N_MAX, seed: int = DEFAULT_SEED) -> CheckReport:
    """Full ``4n x 4n`` beam-splitter conjugation against ``eta V_in + (1-eta) V_env``."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed + 1)
    tally = _Tally(MARGINAL_ATOL)
    ns = sorted(set(_doubling(1, n_max)) | {3})
    ns = [n for n in ns if n <= n_max]
    for n in ns:
        for eta in (0.0, 0.3, 0.7, 1.0):
            s, r = rng.uniform(-2.0, 2.0, size=2)
            V_env = spectral.exp_omega_covariance(n, s)
            V_in = spectral.exp_omega_covariance(n, r)
            marginal, _ = beamsplitter_joint_transform(V_in, V_env, eta)
            tally.add(marginal, output_covariance(V_in, V_env, eta), f"n={n} eta={eta}")
    grid = f"n in {ns}, eta in (0, 0.3, 0.7, 1), s, r ~ U[-2, 2]"
    return _finish("beam-splitter marginal", grid, tally, t0)


def check_determinant_identities(n_max: int = DEFAULT_N_MAX, seed: int = DEFAULT_SEED) -> CheckReport:
    """Eigenvalue-sum heterodyne/homodyne rates against their determinant forms."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed + 2)
    tally = _Tally(DETERMINANT_ATOL)
    p0 = ChannelParams(0.7, 8.0, 0.0)
    for scheme, fast, slow in (
        (SYMMETRIC, heterodyne_info, heterodyne_info_matrix),
        (SINGLE_QUADRATURE, homodyne_info, homodyne_info_matrix),
    ):
        enc0 = EncodingParams(scheme=scheme)
        tally.add(fast(1, p0, enc0), slow(1, p0, enc0), "n=1 origin")
        dark = ChannelParams(0.0, 8.0, 0.9)
        enc = EncodingParams(0.2, 0.4, scheme)
        tally.add([fast(3, dark, enc), slow(3, dark, enc)], [0.0, 0.0], "eta=0")
        for n in _doubling(1, min(n_max, DEFAULT_N_MAX)):
            params, enc = random_point(rng, n, scheme)
            tally.add(fast(n, params, enc), slow(n, params, enc), f"n={n} {scheme}")
    grid = f"n in {_doubling(1, min(n_max, DEFAULT_N_MAX))}, both schemes, random draws"
    return _finish("determinant identities", grid, tally, t0)


RIEMANN_GAMMAS = (0.5, 1.0, 2.0)
RIEMANN_N = 10**4
LADDER = tuple(2**k for k in range(4, 13))
RIEMANN_POINT = dict(eta=0.7, N=8.0, s=0.8, r=0.5, y=-0.1)


def riemann_ladder(kind: str, params: ChannelParams, r: float, y: float, ladder=LADDER):
    """Deviations ``|rate_n / n - asymptotic rate|`` over ``ladder``."""
    enc = EncodingParams(r=r, y=y, scheme=scheme_for(kind))
    limit = asymptotic_rate(kind, params, enc)
    return [abs(rate_per_mode(kind, n, params, enc) - limit) for n in ladder]


def check_riemann_limits() -> CheckReport:
    """Mode averages tend to I0, finite-n rates tend to the asymptotic integrals."""
    t0 = time.perf_counter()
    tally = _Tally(LIMIT_ATOL)
    for gamma in RIEMANN_GAMMAS:
        tally.add(riemann_average(gamma, RIEMANN_N), bessel_i0(2.0 * gamma), f"I0 average gamma={gamma}")
    for n in (1, 7, 64):
        tally.add(riemann_average(0.0, n), n / (n + 1), f"gamma=0 n={n}")
    p = RIEMANN_POINT
    params = ChannelParams(p["eta"], p["N"], p["s"])
    cases = [(p["r"], p["y"]), (0.0, 0.0)]
    for kind in RATE_KINDS:
        for r, y in cases:
            devs = riemann_ladder(kind, params, r, y)
            if any(b >= a for a, b in zip(devs, devs[1:])):
                tally.failures.append(f"{kind} r={r} y={y}: deviation not monotone over n={LADDER}")
            tally.add(devs[-1], 0.0, f"{kind} r={r} y={y} n={LADDER[-1]}")
    grid = f"gamma in {RIEMANN_GAMMAS} at n={RIEMANN_N}; rates over n={LADDER[0]}..{LADDER[-1]}"
    return _finish("Riemann limits", grid, tally, t0)


def check_theta_K_limits() -> CheckReport:
    """``theta_n`` and ``K_n`` at ``n = 10^4`` against their closed-form limits."""
    t0 = time.perf_counter()
    tally = _Tally(LIMIT_ATOL)
    N = 8.0
    for n in (1, 5, 100):
        tally.add([theta_n(0.0, n, N), classical_K(0.0, n, N, 0.0)], [0.0, 2 * N], f"origin n={n}")
    for r in RIEMANN_GAMMAS:
        for y in RIEMANN_GAMMAS:
            theta_lim, K_lim = limits_theta_K(r, y, N)
            th = theta_n(r, RIEMANN_N, N)
            tally.add(th, theta_lim, f"theta r={r}")
            for scheme in (SYMMETRIC, SINGLE_QUADRATURE):
                tally.add(classical_K(y, RIEMANN_N, N, th, scheme), K_lim, f"K r={r} y={y} {scheme}")
    grid = f"(r, y) in {RIEMANN_GAMMAS}^2, N=8, n={RIEMANN_N}"
    return _finish("theta/K limits", grid, tally, t0)


def run_all(n_max: int = DEFAULT_N_MAX, seed: int = DEFAULT_SEED, anchor: ChannelParams | None = None):
    return [
        check_symplectic_closed_form(n_max, seed, anchor=anchor),
        check_beamsplitter_marginal(n_max, seed),
        check_determinant_identities(n_max, seed),
        check_riemann_limits(),
        check_theta_K_limits(),
    ]


def format_reports(reports) -> str:
    lines = [f"{'check':<26} {'status':<6} {'max abs dev':>12} {'max rel dev':>12} {'tol':>8} {'cases':>6} {'time':>7}"]
    for rep in reports:
        lines.append(
            f"{rep.name:<26} {'PASS' if rep.passed else 'FAIL':<6} {rep.max_abs_dev:>12.3e} "
            f"{rep.max_rel_dev:>12.3e} {rep.tolerance:>8.0e} {rep.cases:>6d} {rep.wall_time:>6.2f}s"
        )
        if rep.detail:
            lines.append(f"    {rep.detail}")
    return "\n".join(lines)
