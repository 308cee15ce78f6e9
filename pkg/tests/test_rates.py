import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bmcap import ChannelParams, EncodingParams, r_bounds
from bmcap.channel import SINGLE_QUADRATURE, SYMMETRIC, classical_K
from bmcap.errors import ConstraintViolation
from bmcap.rates import (
    KERNELS,
    RATE_KINDS,
    closed_form_nu,
    closed_form_spectra,
    heterodyne_info,
    holevo_chi,
    homodyne_info,
    memoryless_baseline,
    rate_per_mode,
    rate_total,
    scheme_for,
)
from bmcap.spectral import entropy_g, mode_cosines, symplectic_eigenvalues
from bmcap.verify import (
    heterodyne_info_matrix,
    holevo_chi_matrix,
    homodyne_info_matrix,
    output_matrices,
    random_point,
)

MEMORYLESS = ChannelParams(eta=0.7, N=8.0, s=0.0)


def test_memoryless_anchors():
    assert holevo_chi(1, MEMORYLESS, EncodingParams()) == pytest.approx(entropy_g(5.6), abs=1e-12)
    assert heterodyne_info(1, MEMORYLESS, EncodingParams()) == pytest.approx(math.log2(6.6), abs=1e-12)
    enc = EncodingParams(scheme=SINGLE_QUADRATURE)
    assert homodyne_info(1, MEMORYLESS, enc) == pytest.approx(0.5 * math.log2(23.4), abs=1e-12)
    assert memoryless_baseline("holevo", 8.0, 0.7) == pytest.approx(4.0499, abs=1e-4)
    assert memoryless_baseline("heterodyne", 8.0, 0.7) == pytest.approx(2.7224, abs=1e-4)
    assert memoryless_baseline("homodyne", 8.0, 0.7) == pytest.approx(2.2743, abs=1e-4)


def test_memoryless_encoding_is_n_independent():
    # s = r = y = 0: every mode sees the single-mode channel
    for kind in RATE_KINDS:
        enc = EncodingParams(scheme=scheme_for(kind))
        base = rate_per_mode(kind, 1, MEMORYLESS, enc)
        for n in (2, 7, 30):
            assert rate_per_mode(kind, n, MEMORYLESS, enc) == pytest.approx(base, abs=1e-12)


def test_nu_examples():
    params = ChannelParams(0.7, 8.0, 0.6)
    nu, _ = closed_form_spectra(9, params, EncodingParams(r=0.6, y=0.4))
    np.testing.assert_allclose(nu, 0.5, rtol=0, atol=1e-15)
    nu, nubar = closed_form_nu(1, 1, MEMORYLESS, EncodingParams())
    assert nu == 0.5
    assert nubar == pytest.approx(6.1, rel=1e-14)
    with pytest.raises(ValueError):
        closed_form_nu(3, 2, MEMORYLESS, EncodingParams())


def test_closed_form_nu_matches_generic_solver_n2():
    params = ChannelParams(0.7, 8.0, 0.8)
    enc = EncodingParams(r=0.3, y=0.2)
    V_out, V_bar = output_matrices(2, params, enc)
    nu, nubar = closed_form_spectra(2, params, enc)
    np.testing.assert_allclose(np.sort(nu), symplectic_eigenvalues(V_out), rtol=1e-10)
    np.testing.assert_allclose(np.sort(nubar), symplectic_eigenvalues(V_bar), rtol=1e-10)


def test_zero_transmission_gives_zero():
    params = ChannelParams(0.0, 8.0, 1.1)
    for kind in RATE_KINDS:
        enc = EncodingParams(r=0.4, y=-0.3, scheme=scheme_for(kind))
        assert rate_total(kind, 6, params, enc) == pytest.approx(0.0, abs=1e-14)
    nu, nubar = closed_form_spectra(6, params, EncodingParams(r=0.4, y=-0.3))
    np.testing.assert_array_equal(nu, nubar)


def test_vanishing_budget_gives_zero():
    params = ChannelParams(0.7, 1e-12, 0.5)
    assert holevo_chi(4, params, EncodingParams()) == pytest.approx(0.0, abs=1e-10)


def test_homodyne_zero_at_full_squeezing_budget():
    _, hi = r_bounds(5, 8.0)
    enc = EncodingParams(r=hi, y=0.4, scheme=SINGLE_QUADRATURE)
    assert homodyne_info(5, ChannelParams(0.7, 8.0, 0.8), enc) == pytest.approx(0.0, abs=1e-9)


def test_scheme_requirements():
    enc = EncodingParams(scheme=SINGLE_QUADRATURE)
    with pytest.raises(ValueError):
        holevo_chi(2, MEMORYLESS, enc)
    with pytest.raises(ValueError):
        heterodyne_info(2, MEMORYLESS, enc)
    with pytest.raises(ValueError):
        rate_total("bogus", 2, MEMORYLESS, EncodingParams())


def test_constraint_violation_propagates():
    with pytest.raises(ConstraintViolation):
        holevo_chi(3, MEMORYLESS, EncodingParams(r=5.0))


def test_homodyne_normalizations_coincide():
    # sum_k exp(2 y c_k) == sum_k cosh(2 y c_k) because the c_k are symmetric about zero
    params = ChannelParams(0.7, 8.0, 0.8)
    for y in (0.0, 0.5, -1.7):
        a = homodyne_info(4, params, EncodingParams(r=0.2, y=y, scheme=SYMMETRIC))
        b = homodyne_info(4, params, EncodingParams(r=0.2, y=y, scheme=SINGLE_QUADRATURE))
        assert a == pytest.approx(b, rel=1e-13)
    for n in (2, 5, 30):
        k_sym = classical_K(0.9, n, 8.0, 0.2, SYMMETRIC)
        assert classical_K(0.9, n, 8.0, 0.2, SINGLE_QUADRATURE) == pytest.approx(k_sym, rel=1e-13)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 16, 32])
def test_holevo_oracle_equivalence(n, rng):
    for eta in (0.0, 0.3, 0.7, 1.0):
        params, enc = random_point(rng, n)
        params = ChannelParams(eta, params.N, params.s)
        expected = holevo_chi_matrix(n, params, enc)
        assert holevo_chi(n, params, enc) == pytest.approx(expected, rel=1e-9, abs=1e-9)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 8, 16])
def test_determinant_identities(n, rng):
    for _ in range(3):
        params, enc = random_point(rng, n)
        assert heterodyne_info(n, params, enc) == pytest.approx(heterodyne_info_matrix(n, params, enc), abs=1e-10)
        params, enc = random_point(rng, n, SINGLE_QUADRATURE)
        assert homodyne_info(n, params, enc) == pytest.approx(homodyne_info_matrix(n, params, enc), abs=1e-10)


def test_determinant_identity_examples():
    params = ChannelParams(0.7, 8.0, 1.6)
    enc = EncodingParams(r=0.4, y=0.6)
    assert heterodyne_info(3, params, enc) == pytest.approx(heterodyne_info_matrix(3, params, enc), abs=1e-10)
    params = ChannelParams(0.7, 8.0, 0.8)
    enc = EncodingParams(r=0.2, y=0.3, scheme=SINGLE_QUADRATURE)
    assert homodyne_info(2, params, enc) == pytest.approx(homodyne_info_matrix(2, params, enc), abs=1e-10)
    origin = EncodingParams()
    assert heterodyne_info_matrix(1, MEMORYLESS, origin) == pytest.approx(math.log2(6.6), abs=1e-12)


@pytest.mark.parametrize("kind", ["holevo", "heterodyne"])
def test_mode_pairing_symmetry(kind):
    n = 11
    params = ChannelParams(0.6, 5.0, 1.2)
    enc = EncodingParams(r=0.7, y=-0.4)
    K = classical_K(enc.y, n, params.N, 0.0)
    terms = KERNELS[kind](mode_cosines(n), params.eta, params.s, enc.r, enc.y, K)
    np.testing.assert_allclose(terms, terms[::-1], rtol=1e-13)


@settings(max_examples=40, deadline=None)
@given(
    st.integers(1, 20),
    st.floats(0.0, 1.0),
    st.floats(0.1, 10.0),
    st.floats(-2.0, 2.0),
    st.floats(-1.0, 1.0),
    st.floats(-2.0, 2.0),
)
def test_sign_flip_and_nonnegativity(n, eta, N, s, r_frac, y):
    r = r_frac * (min(2.0, r_bounds(n, N)[1]) if n > 1 else 2.0)
    params = ChannelParams(eta, N, s)
    flipped = ChannelParams(eta, N, -s)
    for kind in RATE_KINDS:
        if kind == "homodyne":
            continue
        v = rate_total(kind, n, params, EncodingParams(r, y))
        w = rate_total(kind, n, flipped, EncodingParams(-r, -y))
        assert v >= 0.0
        assert v == pytest.approx(w, rel=1e-12, abs=1e-12)
    assert homodyne_info(n, params, EncodingParams(r, y, SINGLE_QUADRATURE)) >= 0.0
