import math

import numpy as np
import pytest

from mixrenewal.errors import ValidationError
from mixrenewal.measure import Atom, DensityPiece, MixtureMeasure, scale_pushforward
from mixrenewal.families import (
    uniform_piece, beta_piece, arcsine_piece, piecewise_poly_piece,
    measure_from_spec,
)


def test_atom_validation():
    with pytest.raises(ValidationError):
        Atom(0.5, -0.1)
    with pytest.raises(ValidationError):
        Atom(0.5, 0.0)
    with pytest.raises(ValidationError):
        Atom(float("nan"), 0.5)


def test_atoms_sorted_and_immutable(two_atom):
    locs = [a.location for a in two_atom.atoms]
    assert locs == sorted(locs)
    with pytest.raises(AttributeError):
        two_atom.atoms[0].mass = 1.0


def test_overlapping_pieces_rejected():
    with pytest.raises(ValidationError):
        MixtureMeasure([], [uniform_piece(0.0, 0.6), uniform_piece(0.4, 1.0)])


def test_atom_inside_piece_rejected():
    with pytest.raises(ValidationError):
        MixtureMeasure([Atom(0.5, 0.2)], [uniform_piece(0.2, 0.8, weight=0.8)],
                       probability=True)


def test_probability_mass_enforced():
    with pytest.raises(ValidationError):
        MixtureMeasure([Atom(0.5, 0.7)], probability=True)


def test_unit_domain_enforced():
    with pytest.raises(ValidationError):
        MixtureMeasure([Atom(1.5, 1.0)], probability=True)


def test_total_mass_and_moments(two_atom, uniform01):
    assert two_atom.total_mass() == pytest.approx(1.0, abs=1e-14)
    # E[x^n] for the symmetric two-atom law
    assert two_atom.moment(1) == pytest.approx(0.5, abs=1e-14)
    assert two_atom.moment(2) == pytest.approx(0.5 * 0.25 ** 2 + 0.5 * 0.75 ** 2,
                                               abs=1e-14)
    # uniform moments 1/(n+1)
    for n in range(6):
        assert uniform01.moment(n) == pytest.approx(1.0 / (n + 1), rel=1e-12)


def test_beta_moments(beta23):
    # Beta(2,3): E[x] = 2/5, E[x^2] = 2*3/(5*6) = 1/5
    assert beta23.moment(1) == pytest.approx(0.4, rel=1e-12)
    assert beta23.moment(2) == pytest.approx(0.2, rel=1e-12)


def test_arcsine_moments(arcsine03):
    # Beta(1-v, v) with v=0.3: E[x] = 1-v
    assert arcsine03.moment(1) == pytest.approx(0.7, rel=1e-10)


def test_exp_moment(uniform01):
    # int_0^1 e^{-t x} dx = (1 - e^{-t})/t
    t = 0.8
    assert uniform01.exp_moment(t) == pytest.approx(-math.expm1(-t) / t,
                                                    rel=1e-12)


def test_geometric_mixture_pmf(two_atom):
    # P(K = n) = int (1-x) x^{n-1} dmu
    for n in (1, 2, 5):
        expected = 0.5 * 0.75 * 0.25 ** (n - 1) + 0.5 * 0.25 * 0.75 ** (n - 1)
        assert two_atom.geometric_mixture_pmf(n) == pytest.approx(expected,
                                                                  abs=1e-14)


def test_defect_and_mean(defective_half, two_atom):
    assert defective_half.defect() == pytest.approx(0.5)
    # atom at 0 makes the 1/x mean infinite; proper laws are finite
    assert defective_half.mean_interarrival() == math.inf
    assert two_atom.mean_interarrival() == pytest.approx(
        0.5 / 0.25 + 0.5 / 0.75, rel=1e-12)


def test_restricted_drops_atom(defective_half):
    r = defective_half.restricted(drop_atom_at=0.0)
    assert r.atom_at(0.0) is None
    assert r.total_mass() == pytest.approx(0.5, abs=1e-14)


def test_weighted_integral_inv_x(two_atom):
    expected = 0.5 / 0.25 + 0.5 / 0.75
    assert two_atom.weighted_integral("inv_x") == pytest.approx(expected,
                                                                rel=1e-12)


def test_scale_pushforward(two_atom, uniform01):
    atoms, pieces = scale_pushforward(two_atom, 2.0)
    assert sorted(a.location for a in atoms) == pytest.approx([0.5, 1.5])
    atoms, pieces = scale_pushforward(uniform01, 2.0)
    m2 = MixtureMeasure(atoms, pieces, domain="halfline", probability=True)
    assert m2.total_mass() == pytest.approx(1.0, abs=1e-12)
    assert m2.moment(1) == pytest.approx(1.0, rel=1e-12)


def test_piecewise_poly_weight():
    p = piecewise_poly_piece(0.0, 1.0, [1.0, 1.0], weight=1.0)
    m = MixtureMeasure([], [p], probability=True)
    assert m.total_mass() == pytest.approx(1.0, abs=1e-12)
    # normalized density of 1+x on [0,1] is (1+x)/1.5; mean = (1/2+1/3)/1.5
    assert m.moment(1) == pytest.approx((0.5 + 1.0 / 3.0) / 1.5, rel=1e-12)


def test_measure_from_spec_roundtrip():
    spec = {
        "atoms": [{"x": 0.25, "mass": 0.5}],
        "pieces": [{"family": "uniform", "lo": 0.5, "hi": 1.0,
                    "params": {"weight": 0.5}}],
    }
    m = measure_from_spec(spec)
    assert m.atom_at(0.25).mass == pytest.approx(0.5)
    assert m.total_mass() == pytest.approx(1.0, abs=1e-12)


def test_measure_from_spec_bad_family():
    with pytest.raises(ValidationError):
        measure_from_spec({"pieces": [{"family": "nope", "lo": 0, "hi": 1}]})
