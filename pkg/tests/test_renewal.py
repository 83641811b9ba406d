import math

import numpy as np
import pytest

from mixrenewal.measure import Atom, MixtureMeasure
from mixrenewal.renewal import (
    renewal_probability, renewal_oracle, renewal_limit,
    tilted_law, nu_tilted, decay_rate,
)


def test_oracle_single_atom(bernoulli_half):
    # Geometric(1/2) steps: u_n = 1/2 + 1/2 * u_{n-1}... in fact u_n -> 1/2
    # and the convolution oracle is exact; spot-check small n by hand
    u = renewal_oracle(bernoulli_half, 4)
    # f_k = (1/2)^k; u_1 = 1/2, u_2 = 1/2, ... u_n = 1/2 for n >= 1
    assert u[0] == pytest.approx(1.0)
    for n in (1, 2, 3, 4):
        assert u[n] == pytest.approx(0.5, abs=1e-14)


def test_probability_matches_oracle(two_atom, mixed, beta23):
    for mu in (two_atom, mixed, beta23):
        u = renewal_oracle(mu, 40)
        for n in (0, 1, 3, 10, 40):
            assert renewal_probability(mu, n) == pytest.approx(
                u[n], abs=1e-10)


def test_renewal_limit(two_atom, defective_half):
    # proper law: u_n -> 1/E[K] = 1/mean(1/x)
    assert renewal_limit(two_atom) == pytest.approx(
        1.0 / two_atom.mean_interarrival(), rel=1e-12)
    # defective law: u_n -> 0
    assert renewal_limit(defective_half) == 0.0


def test_renewal_limit_against_long_oracle(mixed):
    u = renewal_oracle(mixed, 800)
    assert renewal_limit(mixed) == pytest.approx(u[800], abs=1e-8)


def test_tilted_law_normalizer(two_atom):
    b = 0.5
    law = tilted_law(two_atom, b)
    # normalizer c solves sum_n e^{-b n} f_n = direct sum
    direct = sum(math.exp(-b * n) * two_atom.geometric_mixture_pmf(n)
                 for n in range(1, 400))
    assert law.normalizer == pytest.approx(direct, rel=1e-10)
    # pmf sums to 1
    total = sum(law.pmf(n) for n in range(1, 400))
    assert total == pytest.approx(1.0, abs=1e-10)
    # mean matches the direct tilted sum
    mean = sum(n * law.pmf(n) for n in range(1, 400))
    assert law.mean == pytest.approx(mean, rel=1e-10)


def test_nu_tilted_moments(two_atom):
    # moments of the tilted spectral measure reproduce e^{bn} u_n^{(b)}
    b = 0.8
    nu = nu_tilted(two_atom, b)
    law = tilted_law(two_atom, b)
    n_max = 40
    f = np.array([0.0] + [law.pmf(n) for n in range(1, n_max + 1)])
    u = np.zeros(n_max + 1)
    u[0] = 1.0
    for n in range(1, n_max + 1):
        u[n] = float(np.dot(f[1:n + 1], u[n - 1::-1]))
    for n in (0, 2, 10, 40):
        assert nu.moment(n) == pytest.approx(u[n], abs=1e-9)


def test_geometric_law_has_no_transient_part():
    # mu = delta_{1/2}: K_b is geometric, u_n^{(b)} is constant for n >= 1,
    # so the tilted spectral measure is exactly two atoms at 0 and 1
    mu = MixtureMeasure([Atom(0.5, 1.0)], probability=True)
    nub = nu_tilted(mu, 0.4)
    assert [a.location for a in nub.atoms] == [0.0, 1.0]
    assert sum(a.mass for a in nub.atoms) == pytest.approx(1.0, abs=1e-12)


def test_decay_rate_arcsine():
    # full-support arcsine law: tilting by b shifts the spectral edge to
    # e^{-b}, so log(u_n - limit) has slope -b
    from mixrenewal.arcsine import mu_v
    mu = mu_v(0.5)
    b = 0.5
    assert decay_rate(mu, b) == pytest.approx(-b, abs=2e-2)


def test_decay_rate_with_support_gap():
    # uniform on [0.3, 1]: extra log(0.7) from the spectral edge
    from mixrenewal.families import uniform_piece
    mu = MixtureMeasure([], [uniform_piece(0.3, 1.0)], probability=True)
    b = 0.5
    assert decay_rate(mu, b) == pytest.approx(-b + math.log(0.7), abs=2e-2)
