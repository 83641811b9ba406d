import math

import pytest

from mixrenewal.measure import Atom, MixtureMeasure
from mixrenewal.polymer import (
    beta_critical, free_energy, contact_fraction, nu_beta,
    partition_function, partition_oracle, PolymerState,
)


def test_beta_critical(two_atom, defective_half, mixed):
    # beta_c = -log(1 - defect); zero for proper laws
    assert beta_critical(two_atom) == 0.0
    assert beta_critical(defective_half) == pytest.approx(math.log(2.0),
                                                          abs=1e-14)
    assert beta_critical(mixed) == 0.0


def test_golden_free_energy(defective_half):
    # F(log 2 + log 2) at the worked defective example:
    # F(beta) for beta = 2 log 2 ... use the documented point instead:
    # mu = (delta_0 + delta_{1/2})/2, beta = log 4 is supercritical
    beta = math.log(4.0)
    f = free_energy(defective_half, beta)
    assert f > 0.0
    # localized phase: F = -log z* with z* > 1 the outer atom of nu_beta
    nu = nu_beta(defective_half, beta)
    outer = [a for a in nu.atoms if a.location > 1.0]
    assert len(outer) == 1
    assert f == pytest.approx(-math.log(1.0 / outer[0].location), abs=1e-12)
    assert f == pytest.approx(math.log(outer[0].location), abs=1e-12)


def test_free_energy_goldens(bernoulli_half):
    # mu = delta_{1/2}, beta = log 2: G(w) = 2w/(1/2 - w) + 1 = 0 gives
    # w = -1/2, so the outer root is z* = 3/2 and F = log(3/2)
    beta = math.log(2.0)
    assert free_energy(bernoulli_half, beta) == pytest.approx(
        math.log(1.5), abs=1e-12)
    # arcsine mu_{1/2}, beta = log 2: F = log(4/3), contact fraction 2/3
    from mixrenewal.arcsine import mu_v
    assert free_energy(mu_v(0.5), beta) == pytest.approx(
        math.log(4.0 / 3.0), abs=1e-12)
    assert contact_fraction(mu_v(0.5), beta) == pytest.approx(
        2.0 / 3.0, abs=1e-10)


def test_free_energy_zero_at_and_below_critical(two_atom, defective_half):
    assert free_energy(two_atom, 0.0) == 0.0
    assert free_energy(two_atom, -1.0) == 0.0
    assert free_energy(defective_half, 0.5 * math.log(2.0)) == 0.0


def test_contact_fraction_vanishes_below_critical(two_atom):
    assert contact_fraction(two_atom, -0.5) == 0.0


def test_partition_matches_oracle(two_atom, mixed):
    for mu in (two_atom, mixed):
        for beta in (-1.0, 0.0, 0.7):
            z = partition_oracle(mu, beta, 30)
            nu = nu_beta(mu, beta)
            for n in (1, 5, 15, 30):
                got = partition_function(mu, beta, n, nu=nu)
                assert got == pytest.approx(z[n], rel=1e-9)


def test_partition_asymptotics(bernoulli_half):
    # supercritical: Z_N ~ e^{N F} / (something); check the log slope
    beta = math.log(2.0)
    f = free_energy(bernoulli_half, beta)
    z = partition_oracle(bernoulli_half, beta, 400)
    slope = (math.log(z[400]) - math.log(z[200])) / 200.0
    assert slope == pytest.approx(f, abs=1e-4)


def test_polymer_state(two_atom):
    st = PolymerState(two_atom, 0.5)
    assert st.beta_c == 0.0
    assert st.free_energy > 0.0
    assert 0.0 < st.contact_fraction <= 1.0
    z = partition_oracle(two_atom, 0.5, 20)
    assert st.partition_function(20) == pytest.approx(z[20], rel=1e-9)
    # x_beta is the localization point of the outer atom
    assert st.x_beta > 1.0
    assert st.free_energy == pytest.approx(math.log(st.x_beta), abs=1e-12)
