"""Maximization of the rates over ``(r, y)`` and the sweeps behind each figure.

All reported values are bits per mode.  ``n = math.inf`` selects the
asymptotic integrals.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .asymptotics import asymptotic_rate
from .channel import ChannelParams, EncodingParams, r_bounds
from .errors import BmcapError, DivergenceError, SweepError
from .rates import RATE_KINDS, check_kind, rate_per_mode, scheme_for
from .special import QuadratureSpec

log = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
Y_TOL = 1e-7
R_TOL = 1e-7
Y_LIMIT = 50.0
GRID_POINTS = 65
BOUNDARY_NUDGE = 1e-9
MOVE_TOL = 1e-6
SCAN_Y_TOL = 1e-4
PLATEAU_TOL = 1e-12
MAX_ROUNDS = 200


def golden_section_max(f, a: float, b: float, tol: float = 1e-7, max_iter: int = 500):
    """Golden-section search for the maximum of a unimodal ``f`` on ``[a, b]``.

    Returns ``(x, f(x))`` for the best point seen; the endpoints are evaluated
    too so a monotone ``f`` reports its boundary maximum.
    """
    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1, f2 = f(x1), f(x2)
    lo, hi = a, b
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        if f1 >= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - INV_PHI * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + INV_PHI * (hi - lo)
            f2 = f(x2)
    best = (x1, f1) if f1 >= f2 else (x2, f2)
    for x in (a, b):
        fx = f(x)
        if fx > best[1]:
            best = (x, fx)
    return best


@dataclass
class OptimizationResult:
    kind: str
    n: float
    r_star: float
    y_star: float
    value: float
    evaluations: int = 0
    converged: bool = True
    N: float = math.nan
    eta: float = math.nan
    s: float = math.nan


class _Objective:
    """Per-mode rate as a function of ``(r, y)`` with an evaluation counter."""

    def __init__(self, kind, n, params, quad):
        self.kind = check_kind(kind)
        self.n = n
        self.params = params
        self.quad = quad
        self.scheme = scheme_for(kind)
        self.calls = 0

    def __call__(self, r: float, y: float) -> float:
        self.calls += 1
        enc = EncodingParams(r=r, y=y, scheme=self.scheme)
        if math.isinf(self.n):
            return asymptotic_rate(self.kind, self.params, enc, self.quad)
        return rate_per_mode(self.kind, self.n, self.params, enc)


def _normalize_n(n):
    if isinstance(n, float) and math.isinf(n):
        return math.inf
    if isinstance(n, str) and n.lower() in ("inf", "infinity", "asymptotic"):
        return math.inf
    n = int(n)
    if n < 1:
        raise ValueError(f"n must be a positive integer or inf, got {n}")
    return n


def _max_over_y(obj: _Objective, r: float, strict: bool = True, tol: float = Y_TOL):
    f0 = obj(r, 0.0)
    if obj.n == 1:
        # one mode: y has no effect on the modulation
        return 0.0, f0
    half = 1.0
    while True:
        y, fy = golden_section_max(lambda t: obj(r, t), -half, half, tol)
        on_edge = half - abs(y) <= 2.0 * tol
        if not on_edge or fy - f0 <= PLATEAU_TOL:
            break
        if half * 3.0 > Y_LIMIT:
            if not strict:
                # near r_max the modulation power vanishes and the optimum drifts to |y| -> inf;
                # such points are far below the maximum, so the edge value is good enough
                return y, fy
            raise DivergenceError(
                f"maximum over y not bracketed within |y| <= {Y_LIMIT} "
                f"(kind={obj.kind}, n={obj.n}, r={r!r})"
            )
        half *= 3.0
    if f0 >= fy - PLATEAU_TOL:
        return 0.0, f0
    return y, fy


def maximize_over_y(kind: str, n, params: ChannelParams, r: float, quad: QuadratureSpec | None = None):
    """Best classical correlation ``y`` at fixed ``r``; returns ``(y_star, value)``.

    Golden-section search on ``[-1, 1]``, tripled while the maximum sits on
    the bracket edge.  On a plateau ``y = 0`` is reported.

    Raises
    ------
    DivergenceError
        If the bracket would grow beyond ``|y| = 50``.
    """
    return _max_over_y(_Objective(kind, _normalize_n(n), params, quad), r)


def maximize_over_r_y(
    kind: str,
    n,
    params: ChannelParams,
    quad: QuadratureSpec | None = None,
    grid_points: int = GRID_POINTS,
    grid_offset: float = 0.0,
) -> OptimizationResult:
    """Maximize the per-mode rate over ``r`` in its energy bounds and ``y`` in R.

    A coarse grid over ``r`` (each point maximized over ``y``) locates the
    basin; alternating golden-section steps in ``r`` and ``y`` then refine it
    until both move by less than 1e-6.  ``grid_offset`` shifts the coarse grid
    by that fraction of its spacing (used for restart checks).
    """
    n = _normalize_n(n)
    obj = _Objective(kind, n, params, quad)
    meta = dict(kind=obj.kind, n=n, N=params.N, eta=params.eta, s=params.s)
    if n == 1:
        y, v = _max_over_y(obj, 0.0)
        return OptimizationResult(r_star=0.0, y_star=y, value=v, evaluations=obj.calls, **meta)

    r_min, r_max = r_bounds(n, params.N)
    r_lo, r_hi = r_min + BOUNDARY_NUDGE, r_max - BOUNDARY_NUDGE
    grid = np.linspace(r_lo, r_hi, grid_points)
    if grid_offset:
        step = grid[1] - grid[0]
        grid = np.clip(grid + grid_offset * step, r_lo, r_hi)
    # the scan only locates the basin, so y is resolved coarsely here
    profile = [_max_over_y(obj, float(r), strict=False, tol=SCAN_Y_TOL) for r in grid]
    values = np.array([v for _, v in profile])
    i = int(np.argmax(values))
    r, (y, best) = float(grid[i]), profile[i]
    width = float(grid[1] - grid[0]) if grid_points > 1 else r_hi - r_lo

    converged = False
    for _ in range(MAX_ROUNDS):
        a, b = max(r_lo, r - width), min(r_hi, r + width)
        r_new, _ = golden_section_max(lambda t: obj(t, y), a, b, R_TOL)
        y_new, v_new = _max_over_y(obj, r_new)
        dr, dy = abs(r_new - r), abs(y_new - y)
        if v_new >= best - PLATEAU_TOL:
            r, y, best = r_new, y_new, max(v_new, best)
        width = max(4.0 * dr, 1e-4)
        if dr < MOVE_TOL and dy < MOVE_TOL:
            converged = True
            break

    # tie-break towards the smaller |r|
    if r_lo <= 0.0 <= r_hi:
        y0, v0 = _max_over_y(obj, 0.0)
        if v0 >= best - PLATEAU_TOL:
            r, y, best = 0.0, y0, v0
    return OptimizationResult(
        r_star=r, y_star=y, value=best, evaluations=obj.calls, converged=converged, **meta
    )


# ---------------------------------------------------------------- sweeps

SWEEP_VARIABLES = ("n", "r", "s", "eta")


@dataclass(frozen=True)
class SweepSpec:
    """Description of one figure's data.

    ``variable`` names the swept axis and ``grid`` its values:

    * ``"n"`` -- optimal per-mode value for each ``n`` (finite-n bar charts);
    * ``"r"`` -- asymptotic value maximized over ``y`` at each ``r``;
    * ``"s"`` -- asymptotic optimum (``r_opt``, ``y_opt``, value) at each memory strength;
    * ``"eta"`` -- asymptotic Holevo optimum at each transmittivity, for every ``s``.

    ``s`` lists the memory strengths crossed with the grid (unused for ``"s"``).
    """

    variable: str
    grid: tuple
    kinds: tuple = RATE_KINDS
    N: float = 8.0
    eta: float = 0.7
    s: tuple = (0.0,)
    n: float = math.inf
    quad: QuadratureSpec = field(default_factory=QuadratureSpec)
    workers: int = 1

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise ValueError(f"sweep variable must be one of {SWEEP_VARIABLES}, got {self.variable!r}")
        grid = tuple(self.grid)
        if not grid:
            raise ValueError("sweep grid is empty")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("sweep grid must be strictly increasing")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "kinds", tuple(check_kind(k) for k in self.kinds))
        object.__setattr__(self, "s", tuple(self.s))
        if not self.s:
            raise ValueError("at least one s value is required")


def _points(spec: SweepSpec):
    if spec.variable == "eta":
        return [(spec.kinds[0], eta, s) for eta in spec.grid for s in spec.s]
    if spec.variable == "s":
        return [(k, s) for k in spec.kinds for s in spec.grid]
    return [(k, s, x) for k in spec.kinds for s in spec.s for x in spec.grid]


def _evaluate(spec: SweepSpec, point) -> dict:
    v = spec.variable
    if v == "n":
        kind, s, n = point
        res = maximize_over_r_y(kind, n, ChannelParams(spec.eta, spec.N, s), spec.quad)
        return dict(kind=kind, n=res.n, s=s, N=spec.N, eta=spec.eta,
                    r_opt=res.r_star, y_opt=res.y_star, value_bits_per_mode=res.value)
    if v == "r":
        kind, s, r = point
        obj = _Objective(kind, _normalize_n(spec.n), ChannelParams(spec.eta, spec.N, s), spec.quad)
        # curves run up to r_max, where the optimal |y| escapes to infinity at a vanishing rate
        _, value = _max_over_y(obj, r, strict=False)
        return dict(kind=kind, s=s, r=r, value=value)
    if v == "s":
        kind, s = point
        res = maximize_over_r_y(kind, spec.n, ChannelParams(spec.eta, spec.N, s), spec.quad)
        return dict(kind=kind, s=s, r_opt=res.r_star, y_opt=res.y_star, value=res.value)
    kind, eta, s = point
    res = maximize_over_r_y(kind, spec.n, ChannelParams(eta, spec.N, s), spec.quad)
    return dict(eta=eta, s=s, C=res.value)


def _run_point(job):
    spec, point = job
    log.info("sweep %s point %s", spec.variable, point)
    try:
        return _evaluate(spec, point)
    except (BmcapError, ValueError, ArithmeticError) as exc:
        raise SweepError(f"{spec.variable}-sweep failed at grid point {point}: {exc}") from exc


def sweep(spec: SweepSpec) -> list[dict]:
    """Evaluate every grid point of ``spec``; rows come back in grid order.

    With ``spec.workers > 1`` points are spread over worker processes; the
    row order and values do not depend on the schedule.

    Raises
    ------
    SweepError
        Wrapping the first failing point, which is named in the message.
    """
    jobs = [(spec, p) for p in _points(spec)]
    if spec.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            return list(pool.map(_run_point, jobs))
    return [_run_point(job) for job in jobs]
