import math

import pytest

from bmcap import ChannelParams, r_bounds
from bmcap.errors import DivergenceError, SweepError
from bmcap.optimize import (
    SweepSpec,
    _max_over_y,
    _Objective,
    golden_section_max,
    maximize_over_r_y,
    maximize_over_y,
    sweep,
)
from bmcap.rates import RATE_KINDS, memoryless_baseline
from bmcap.spectral import entropy_g

REFERENCE = dict(eta=0.7, N=8.0)


def test_golden_section():
    x, fx = golden_section_max(lambda t: -(t - 0.3) ** 2, -1.0, 1.0, 1e-9)
    assert x == pytest.approx(0.3, abs=1e-8)
    x, fx = golden_section_max(lambda t: t, -1.0, 2.0)
    assert (x, fx) == (2.0, 2.0)


@pytest.mark.parametrize("kind", RATE_KINDS)
def test_y_star_zero_at_memoryless_origin(kind):
    y, v = maximize_over_y(kind, math.inf, ChannelParams(s=0.0, **REFERENCE), 0.0)
    assert y == 0.0
    assert v == pytest.approx(memoryless_baseline(kind, 8.0, 0.7), abs=1e-12)


def test_holevo_y_max_at_origin_value():
    _, v = maximize_over_y("holevo", "inf", ChannelParams(s=0.0, **REFERENCE), 0.0)
    assert v == pytest.approx(entropy_g(5.6), abs=1e-12)


def test_divergence_error_near_budget_edge():
    _, hi = r_bounds(math.inf, 8.0)
    params = ChannelParams(s=0.8, **REFERENCE)
    with pytest.raises(DivergenceError):
        maximize_over_y("homodyne", math.inf, params, hi - 1e-9)
    # the grid scan tolerates it and reports the edge value
    y, v = _max_over_y(_Objective("homodyne", math.inf, params, None), hi - 1e-9, strict=False)
    assert abs(y) > 1.0 and 0.0 <= v < 1e-6


def test_n1_fixes_r_at_zero():
    res = maximize_over_r_y("holevo", 1, ChannelParams(s=1.3, **REFERENCE))
    assert res.r_star == 0.0 and res.y_star == 0.0
    assert res.value == pytest.approx(4.0499, abs=1e-4)


def test_homodyne_memoryless_global_max():
    res = maximize_over_r_y("homodyne", math.inf, ChannelParams(s=0.0, **REFERENCE))
    assert res.value == pytest.approx(0.5 * math.log2(23.4), abs=1e-9)
    assert res.r_star == 0.0 and res.y_star == 0.0
    assert res.converged


def test_heterodyne_max_at_s25():
    res = maximize_over_r_y("heterodyne", math.inf, ChannelParams(s=2.5, **REFERENCE))
    assert res.value == pytest.approx(2.24, abs=0.01)
    assert res.r_star != 0.0
    lo, hi = r_bounds(math.inf, 8.0)
    assert lo <= res.r_star <= hi


def test_result_not_below_origin():
    params = ChannelParams(s=1.6, **REFERENCE)
    res = maximize_over_r_y("holevo", 12, params)
    origin = maximize_over_y("holevo", 12, params, 0.0)[1]
    assert res.value >= origin - 1e-12
    assert res.evaluations > 0 and res.n == 12 and res.s == 1.6


def test_restarts_agree():
    params = ChannelParams(s=1.6, **REFERENCE)
    values = [maximize_over_r_y("heterodyne", 20, params, grid_offset=off).value
              for off in (0.0, 0.13, 0.29, 0.51, 0.77)]
    assert max(values) - min(values) < 1e-6


def test_sweep_spec_validation():
    with pytest.raises(ValueError):
        SweepSpec(variable="N", grid=(1,))
    with pytest.raises(ValueError):
        SweepSpec(variable="n", grid=())
    with pytest.raises(ValueError):
        SweepSpec(variable="n", grid=(3, 2))
    with pytest.raises(ValueError):
        SweepSpec(variable="n", grid=(1, 2), kinds=("bogus",))


def test_n_sweep_rows_in_grid_order():
    spec = SweepSpec(variable="n", grid=(1, 2, 3), kinds=("heterodyne",), s=(0.0, 0.8))
    rows = sweep(spec)
    assert [(r["s"], r["n"]) for r in rows] == [(0.0, 1), (0.0, 2), (0.0, 3), (0.8, 1), (0.8, 2), (0.8, 3)]
    assert set(rows[0]) == {"kind", "n", "s", "N", "eta", "r_opt", "y_opt", "value_bits_per_mode"}
    assert rows[0]["value_bits_per_mode"] == pytest.approx(math.log2(6.6), abs=1e-12)


def test_parallel_sweep_matches_serial():
    kw = dict(variable="n", grid=(2, 3, 4), kinds=("homodyne",), s=(0.8,))
    assert sweep(SweepSpec(**kw, workers=3)) == sweep(SweepSpec(**kw))


def test_r_sweep_runs_to_budget_edge():
    _, hi = r_bounds(math.inf, 8.0)
    spec = SweepSpec(variable="r", grid=(-hi + 1e-9, 0.0, hi - 1e-9), kinds=("homodyne",), s=(0.8,))
    rows = sweep(spec)
    assert [r["r"] for r in rows] == list(spec.grid)
    assert rows[1]["value"] > 2.0 and rows[2]["value"] < 1e-6


def test_sweep_error_names_point():
    spec = SweepSpec(variable="r", grid=(0.0, 3.0), kinds=("holevo",), s=(0.0,))
    with pytest.raises(SweepError, match="3.0"):
        sweep(spec)
