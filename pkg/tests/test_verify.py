import json

import numpy as np
import pytest

from bmcap import ChannelParams, EncodingParams
from bmcap import verify
from bmcap.channel import theta_n
from bmcap.rates import closed_form_spectra
from bmcap.spectral import symplectic_eigenvalues


def test_random_point_is_reproducible_and_inside_budget():
    a = verify.random_point(np.random.default_rng(7), 8)
    b = verify.random_point(np.random.default_rng(7), 8)
    assert a == b
    rng = np.random.default_rng(3)
    for _ in range(50):
        params, enc = verify.random_point(rng, 8)
        assert theta_n(enc.r, 8, params.N) <= 0.9 + 1e-12


def test_oracle_example_n2():
    params = ChannelParams(0.7, 8.0, 0.8)
    enc = EncodingParams(r=0.3, y=0.2)
    V_out, V_bar = verify.output_matrices(2, params, enc)
    nu, nubar = closed_form_spectra(2, params, enc)
    np.testing.assert_allclose(np.sort(nubar), symplectic_eigenvalues(V_bar), rtol=1e-10)
    np.testing.assert_allclose(np.sort(nu), symplectic_eigenvalues(V_out), rtol=1e-10)


def test_oracle_pure_and_blind_cases():
    params = ChannelParams(0.7, 8.0, 0.5)
    V_out, _ = verify.output_matrices(4, params, EncodingParams(r=0.5, y=1.0))
    np.testing.assert_allclose(symplectic_eigenvalues(V_out), 0.5, rtol=1e-12)
    V_out, V_bar = verify.output_matrices(4, ChannelParams(0.0, 8.0, 0.5), EncodingParams(r=0.2, y=1.0))
    np.testing.assert_allclose(V_out, V_bar)


def test_heterodyne_oracle_examples():
    assert verify.heterodyne_info_matrix(1, ChannelParams(0.7, 8.0), EncodingParams()) == pytest.approx(
        np.log2(6.6), abs=1e-12
    )
    assert verify.heterodyne_info_matrix(3, ChannelParams(0.0, 8.0, 1.0), EncodingParams(0.3, 0.2)) == pytest.approx(
        0.0, abs=1e-12
    )


@pytest.mark.parametrize(
    "check",
    [verify.check_symplectic_closed_form, verify.check_beamsplitter_marginal, verify.check_determinant_identities],
)
def test_matrix_checks_pass(check):
    report = check(n_max=64)
    assert report.passed, report.detail
    assert report.cases > 0 and report.wall_time >= 0


def test_symplectic_check_includes_deterministic_anchor():
    report = verify.check_symplectic_closed_form(n_max=4, anchor=ChannelParams(0.7, 8.0, 0.8))
    assert report.passed
    assert report.max_rel_dev < 1e-10


def test_limit_checks_report_endpoint_bias():
    # the 1e-3 absolute bound is exceeded only where exp(4)/(n+1) dominates
    riemann = verify.check_riemann_limits()
    limits = verify.check_theta_K_limits()
    for report in (riemann, limits):
        assert report.max_rel_dev < 1e-3
    assert "gamma=2.0" in riemann.detail or riemann.passed
    assert all("r=2.0" in part for part in limits.detail.split("; ") if part)


def test_reports_are_deterministic_and_serializable():
    a = verify.run_all(n_max=8)
    b = verify.run_all(n_max=8)
    strip = lambda reps: [{k: v for k, v in r.as_dict().items() if k != "wall_time"} for r in reps]
    assert strip(a) == strip(b)
    json.dumps([r.as_dict() for r in a])
    text = verify.format_reports(a)
    assert len([line for line in text.splitlines() if line and not line.startswith(" ")]) == 6
