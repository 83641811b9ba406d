import cmath
import math

import pytest

from mixrenewal.errors import ValidationError
from mixrenewal import stieltjes
from mixrenewal.arcsine import (
    mu_v, stieltjes_mu_v_closed, stieltjes_mu_v_real, stieltjes_mu_v_boundary,
)


def test_atomic_closed_form(two_atom):
    # s(z) = sum m_i / (x_i - z)
    for z in (-0.5, 0.1 + 0.2j, 2.0, 0.5 + 1e-3j):
        expected = 0.5 / (0.25 - z) + 0.5 / (0.75 - z)
        got = stieltjes.stieltjes_eval(two_atom, z)
        assert got == pytest.approx(expected, rel=1e-12)


def test_uniform_closed_form(uniform01):
    # s(w) = log((1-w)/(-w)) for w < 0
    for w in (-0.5, -2.0, -1e-4):
        expected = math.log((1.0 - w) / (-w))
        assert stieltjes.stieltjes_real(uniform01, w) == pytest.approx(
            expected, rel=1e-10)
    # complex evaluation off the real axis
    z = 0.3 + 0.4j
    expected = cmath.log((1.0 - z) / (-z))
    assert stieltjes.stieltjes_eval(uniform01, z) == pytest.approx(
        expected, rel=1e-10)


def test_uniform_near_edge():
    # pole just outside the support must not be missed by quadrature
    from mixrenewal.measure import MixtureMeasure
    from mixrenewal.families import uniform_piece
    m = MixtureMeasure([], [uniform_piece(0.25, 0.75, weight=1.0)],
                       probability=True)
    dens = 2.0
    for d in (1e-3, 1e-6, 1e-9, 1e-12):
        w = 0.25 - d
        expected = dens * math.log((0.75 - w) / (0.25 - w))
        got = stieltjes.stieltjes_real(m, w)
        assert got == pytest.approx(expected, rel=1e-12)
        # derivative: int dens/(x-w)^2 dx
        expected_d = dens * (1.0 / (0.25 - w) - 1.0 / (0.75 - w))
        got_d = stieltjes.stieltjes_derivative(m, w)
        assert got_d == pytest.approx(expected_d, rel=1e-12)


def test_real_eval_inside_support_rejected(uniform01):
    with pytest.raises(ValidationError):
        stieltjes.stieltjes_real(uniform01, 0.5)


def test_arcsine_closed_vs_quadrature():
    for v in (0.2, 0.5, 0.7):
        m = mu_v(v)
        for z in (-0.3, 0.4 + 0.5j, 1.7 + 0.1j):
            got = stieltjes.stieltjes_eval(m, z)
            assert got == pytest.approx(stieltjes_mu_v_closed(v, z), rel=1e-9)
        for w in (-0.8, -1e-3, 1.5):
            got = stieltjes.stieltjes_real(m, w)
            assert got == pytest.approx(stieltjes_mu_v_real(v, w), rel=1e-9)


def test_hilbert_uniform(uniform01):
    # PV int_0^1 dy/(y-x) = log((1-x)/x)
    for x in (0.2, 0.5, 0.9):
        expected = math.log((1.0 - x) / x)
        assert stieltjes.hilbert(uniform01, x) == pytest.approx(
            expected, abs=1e-10)


def test_hilbert_arcsine_interior():
    # quadrature boundary values against the closed form for mu_v
    v = 0.3
    m = mu_v(v)
    for x in (0.15, 0.5, 0.85):
        closed = stieltjes_mu_v_boundary(v, x)
        bv = stieltjes.boundary(m, x)
        assert bv.hilbert == pytest.approx(closed.hilbert, rel=1e-9)
        assert bv.density == pytest.approx(closed.density, rel=1e-12)


def test_boundary_values(uniform01):
    # boundary value of s at x in (0,1): PV part + i*pi*density
    bv = stieltjes.boundary(uniform01, 0.4)
    assert bv.density == pytest.approx(1.0, rel=1e-12)
    assert bv.hilbert == pytest.approx(math.log(0.6 / 0.4), abs=1e-10)


def test_hilbert_offset_matches_closed(uniform01):
    # evaluate PV at base+delta with tiny delta, against the closed form
    for d in (1e-4, 1e-8, 1e-11):
        x = 0.5 + d
        got = stieltjes.hilbert_offset(uniform01, 0.5, d)
        assert got == pytest.approx(math.log((1.0 - x) / x), abs=1e-9)


def test_stieltjes_derivative_atomic(two_atom):
    w = -0.4
    expected = 0.5 / (0.25 - w) ** 2 + 0.5 / (0.75 - w) ** 2
    assert stieltjes.stieltjes_derivative(two_atom, w) == pytest.approx(
        expected, rel=1e-12)


def test_mixed_measure_consistency(mixed):
    # quadrature result matches a dense Riemann-style oracle off support
    w = -0.25
    got = stieltjes.stieltjes_real(mixed, w)
    atoms = sum(a.mass / (a.location - w) for a in mixed.atoms)
    import numpy as np
    piece_sum = 0.0
    for p in mixed.pieces:
        xs = np.linspace(p.lo, p.hi, 200001)[1:-1]
        ys = np.array([p.density(float(x)) / (float(x) - w) for x in xs])
        piece_sum += float(np.trapezoid(ys, xs))
    assert got == pytest.approx(atoms + piece_sum, rel=1e-5)
