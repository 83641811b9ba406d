"""Numbered end-to-end checks behind ``mixrenewal selftest``.

Each check exercises one advertised guarantee of the package against an
independent reference: brute-force convolution oracles, closed-form
answers for the Beta(1-v, v) family, or exact identities.  ``run_all``
returns one result per check; the CLI turns them into a report and an
exit status, and the pytest suite asserts each one individually.
"""

import math

import numpy as np

from .measure import MixtureMeasure, Atom, DensityPiece, DOMAIN_HALFLINE
from .families import (uniform_piece, beta_piece, arcsine_piece,
                       piecewise_poly_piece)
from .stieltjes import stieltjes_eval
from .involution import involute, build_spectral
from .renewal import renewal_probability, renewal_oracle, renewal_limit, \
    decay_rate
from .polymer import free_energy, contact_fraction, nu_beta, \
    partition_function, partition_oracle
from .expmix import nu_continuous, intensity, intensity_oracle
from .arcsine import mu_v, free_energy_arcsine, partition_exact_beta0

_SEED = 20258026


class CheckResult:
    __slots__ = ("number", "name", "passed", "detail")

    def __init__(self, number, name, passed, detail):
        self.number = number
        self.name = name
        self.passed = bool(passed)
        self.detail = detail

    def __repr__(self):
        return "CheckResult(%d, %r, %s, %r)" % (
            self.number, self.name, self.passed, self.detail)


# ---------------------------------------------------------------------------
# Randomized measure corpus shared by the oracle checks.
# ---------------------------------------------------------------------------

def _random_atomic(rng, n_atoms, defect=0.0):
    locs = np.sort(rng.uniform(0.05, 1.0, size=n_atoms))
    masses = rng.dirichlet(np.ones(n_atoms)) * (1.0 - defect)
    atoms = [Atom(float(l), float(m)) for l, m in zip(locs, masses)]
    if defect > 0.0:
        atoms.insert(0, Atom(0.0, defect))
    return MixtureMeasure(atoms, probability=True)


def _random_ac(rng, kind):
    if kind == "uniform":
        lo = float(rng.uniform(0.0, 0.3))
        hi = float(rng.uniform(0.7, 1.0))
        return MixtureMeasure([], [uniform_piece(lo, hi)], probability=True)
    if kind == "beta":
        a = float(rng.uniform(0.5, 3.0))
        b = float(rng.uniform(0.5, 3.0))
        return MixtureMeasure([], [beta_piece(0.0, 1.0, a, b)],
                              probability=True)
    if kind == "arcsine":
        v = float(rng.uniform(0.15, 0.85))
        return MixtureMeasure([], [arcsine_piece(0.0, 1.0, v)],
                              probability=True)
    coeffs = list(rng.uniform(0.1, 2.0, size=3))
    lo = float(rng.uniform(0.05, 0.3))
    hi = float(rng.uniform(0.6, 0.95))
    piece = piecewise_poly_piece(lo, hi, coeffs, weight=1.0)
    return MixtureMeasure([], [piece], probability=True)


def _random_mixed(rng, defect=0.0):
    w_piece = float(rng.uniform(0.3, 0.6))
    w_atoms = 1.0 - defect - w_piece
    lo = float(rng.uniform(0.3, 0.4))
    hi = float(rng.uniform(0.6, 0.8))
    piece = uniform_piece(lo, hi, weight=w_piece)
    locs = [float(rng.uniform(0.05, lo - 0.05)),
            float(rng.uniform(hi + 0.05, 1.0))]
    masses = rng.dirichlet(np.ones(2)) * w_atoms
    atoms = [Atom(l, float(m)) for l, m in zip(locs, masses)]
    if defect > 0.0:
        atoms.insert(0, Atom(0.0, defect))
    return MixtureMeasure(atoms, [piece], probability=True)


def oracle_corpus(seed=_SEED):
    """20 randomized probability measures: atomic, a.c., mixed, defective."""
    rng = np.random.default_rng(seed)
    measures = []
    for n in (1, 2, 3, 4, 5, 6, 7, 8):
        measures.append(_random_atomic(rng, n))
    measures.append(_random_atomic(rng, 3, defect=0.1))
    measures.append(_random_atomic(rng, 5, defect=0.5))
    for kind in ("uniform", "beta", "arcsine", "poly"):
        measures.append(_random_ac(rng, kind))
    for _ in range(4):
        measures.append(_random_mixed(rng))
    measures.append(_random_mixed(rng, defect=0.1))
    measures.append(_random_mixed(rng, defect=0.5))
    return measures


# ---------------------------------------------------------------------------
# The numbered checks.
# ---------------------------------------------------------------------------

def check_oracle_discrete(n_max=200, tol=1e-9):
    """1: moments of the spectral measure match the convolution recursion."""
    worst = 0.0
    for mu in oracle_corpus():
        nu = involute(mu)
        u = renewal_oracle(mu, n_max)
        for n in range(n_max + 1):
            worst = max(worst, abs(nu.moment(n) - u[n]))
    return CheckResult(1, "oracle_discrete", worst <= tol,
                       "max |moment - u_N| = %.3e (tol %.0e)" % (worst, tol))


def _roundtrip_measures():
    rng = np.random.default_rng(_SEED + 1)
    return [
        _random_atomic(rng, 4),
        MixtureMeasure([], [beta_piece(0.0, 1.0, 2.0, 3.0)],
                       probability=True),
        _random_mixed(rng),
    ]


def check_involution_roundtrip(atom_tol=1e-8, dens_tol=1e-6):
    """2: applying the involution twice recovers the original measure."""
    worst_atom = 0.0
    worst_dens = 0.0
    for mu in _roundtrip_measures():
        back = involute(involute(mu))
        if len(back.atoms) != len(mu.atoms):
            return CheckResult(2, "involution_roundtrip", False,
                               "atom count changed: %d -> %d"
                               % (len(mu.atoms), len(back.atoms)))
        for a, b in zip(mu.atoms, back.atoms):
            worst_atom = max(worst_atom, abs(a.location - b.location),
                             abs(a.mass - b.mass))
        for p, q in zip(mu.pieces, back.pieces):
            width = p.hi - p.lo
            xs = np.linspace(p.lo + 0.01 * width, p.hi - 0.01 * width, 50)
            for x in xs:
                worst_dens = max(worst_dens,
                                 abs(q.density(float(x)) - p.density(float(x))))
    ok = worst_atom <= atom_tol and worst_dens <= dens_tol
    return CheckResult(2, "involution_roundtrip", ok,
                       "atom err %.3e (tol %.0e), density err %.3e (tol %.0e)"
                       % (worst_atom, atom_tol, worst_dens, dens_tol))


def check_arcsine_fixed_point(tol=1e-6):
    """3: Beta(1-v, v) laws are fixed points of the involution."""
    worst = 0.0
    for v in (0.1, 0.25, 0.5, 0.75, 0.9):
        mu = mu_v(v)
        nu = involute(mu)
        if nu.atoms:
            return CheckResult(3, "arcsine_fixed_point", False,
                               "spurious atoms at v=%g: %r" % (v, nu.atoms))
        xs = np.linspace(0.01, 0.99, 50)
        for x in xs:
            worst = max(worst, abs(nu.pieces[0].density(float(x))
                                   - mu.pieces[0].density(float(x))))
    return CheckResult(3, "arcsine_fixed_point", worst <= tol,
                       "sup density diff %.3e (tol %.0e)" % (worst, tol))


def check_central_binomial(n_max=50, tol=1e-10):
    """4: renewal probabilities of the v=1/2 law are C(2N,N)/4^N."""
    mu = mu_v(0.5)
    nu = involute(mu)
    worst = 0.0
    for n in range(n_max + 1):
        exact = math.comb(2 * n, n) / 4.0 ** n
        worst = max(worst, abs(nu.moment(n) - exact))
    return CheckResult(4, "central_binomial", worst <= tol,
                       "max |p_N - C(2N,N)/4^N| = %.3e (tol %.0e)"
                       % (worst, tol))


def check_renewal_limit(tol_converge=1e-6, tol_exact=1e-9):
    """5: the renewal limit matches late probabilities and the exact
    two-atom value 3/8."""
    mu = MixtureMeasure([Atom(0.3, 0.5), Atom(0.8, 0.5)], probability=True)
    nu = involute(mu)
    lim = renewal_limit(mu)
    err_c = abs(renewal_probability(mu, 500, nu=nu) - lim)
    two = MixtureMeasure([Atom(0.25, 0.5), Atom(0.75, 0.5)],
                         probability=True)
    err_e = abs(renewal_limit(two) - 0.375)
    ok = err_c <= tol_converge and err_e <= tol_exact
    return CheckResult(5, "renewal_limit", ok,
                       "|p_500 - limit| = %.3e (tol %.0e), "
                       "|limit - 3/8| = %.3e (tol %.0e)"
                       % (err_c, tol_converge, err_e, tol_exact))


def check_partition_oracle(n_max=100, tol=1e-8):
    """6: tilted partition functions match the weighted convolution
    recursion for betas on both sides of the transition."""
    rng = np.random.default_rng(_SEED + 6)
    measures = [
        MixtureMeasure([], [uniform_piece(0.0, 1.0)], probability=True),
        MixtureMeasure([Atom(0.0, 0.5), Atom(0.5, 0.5)], probability=True),
        _random_mixed(rng, defect=0.1),
    ]
    betas = (-2.0, -0.5, 0.0, 0.5, math.log(2.0), 2.0)
    worst = 0.0
    for mu in measures:
        for beta in betas:
            nu = nu_beta(mu, beta)
            z = partition_oracle(mu, beta, n_max)
            for n in range(1, n_max + 1):
                zn = partition_function(mu, beta, n, nu=nu)
                worst = max(worst, abs(zn / z[n] - 1.0))
    return CheckResult(6, "partition_oracle", worst <= tol,
                       "max rel err %.3e (tol %.0e)" % (worst, tol))


def check_free_energy(tol=1e-10):
    """7: free energy and contact fraction against closed forms."""
    mu = mu_v(0.5)
    b = math.log(2.0)
    err_f = abs(free_energy(mu, b) - math.log(4.0 / 3.0))
    err_c = abs(contact_fraction(mu, b) - 2.0 / 3.0)
    worst_grid = 0.0
    for v in (0.1, 0.25, 0.5, 0.75, 0.9):
        base = mu_v(v)
        for beta in (0.2, 0.5, 1.0, 2.0):
            worst_grid = max(worst_grid,
                             abs(free_energy(base, beta)
                                 - free_energy_arcsine(v, beta)))
    ok = err_f <= tol and err_c <= tol and worst_grid <= tol
    return CheckResult(7, "free_energy", ok,
                       "|F - log(4/3)| = %.3e, |contact - 2/3| = %.3e, "
                       "grid err %.3e (tol %.0e)"
                       % (err_f, err_c, worst_grid, tol))


def check_partition_asymptotics(tol_super=0.01, tol_crit=0.02):
    """8: Z_N e^{-NF} -> F'(beta) above the transition; at beta = 0 the
    partition function decays like N^(-v)/Gamma(1-v)."""
    mu = mu_v(0.5)
    b = math.log(2.0)
    f = free_energy(mu, b)
    c = contact_fraction(mu, b)
    z = partition_function(mu, b, 300)
    err_super = abs(z * math.exp(-300.0 * f) / c - 1.0)
    worst_crit = 0.0
    for v in (0.25, 0.5, 0.75):
        zn = partition_function(mu_v(v), 0.0, 2000)
        exact = partition_exact_beta0(v, 2000)
        if abs(zn / exact - 1.0) > 1e-8:
            return CheckResult(8, "partition_asymptotics", False,
                               "numeric Z_N disagrees with the exact "
                               "beta=0 law at v=%g" % v)
        worst_crit = max(worst_crit,
                         abs(zn * math.gamma(1.0 - v) * 2000.0 ** v - 1.0))
    ok = err_super <= tol_super and worst_crit <= tol_crit
    return CheckResult(8, "partition_asymptotics", ok,
                       "supercritical rel err %.3e (tol %.0e), "
                       "critical scaling err %.3e (tol %.0e)"
                       % (err_super, tol_super, worst_crit, tol_crit))


def check_decay_rate(tol=0.02):
    """9: correlation-length slopes match -b (arcsine 1/2) and
    -b + log(0.7) (uniform on [0.3, 1])."""
    worst = 0.0
    mu = mu_v(0.5)
    for b in (0.5, 1.0):
        worst = max(worst, abs(decay_rate(mu, b) - (-b)))
    unif = MixtureMeasure([], [uniform_piece(0.3, 1.0)], probability=True)
    for b in (0.5, 1.0):
        expect = -b + math.log(0.7)
        worst = max(worst, abs(decay_rate(unif, b) - expect))
    return CheckResult(9, "decay_rate", worst <= tol,
                       "max |slope - target| = %.3e (tol %.0e)"
                       % (worst, tol))


def check_continuous(tol_closed=1e-9, tol_oracle=1e-6, tol_mass=1e-9):
    """10: exponential-mixture intensity against its closed form and the
    grid-convolution oracle."""
    mu = MixtureMeasure([Atom(1.0, 0.5), Atom(3.0, 0.5)],
                        domain=DOMAIN_HALFLINE, probability=True)
    nu = nu_continuous(mu)
    xs = np.linspace(0.1, 5.0, 25)
    worst_closed = max(abs(intensity(mu, float(x), nu=nu)
                           - (1.5 + 0.5 * math.exp(-2.0 * float(x))))
                       for x in xs)
    err_mass = abs(nu.total_mass() - mu.moment(1))
    worst_oracle = 0.0
    for m in (mu,
              MixtureMeasure([], [uniform_piece(1.0, 2.0)],
                             domain=DOMAIN_HALFLINE, probability=True)):
        nu_m = nu_continuous(m)
        for x in (0.1, 0.5, 1.0, 2.5, 5.0):
            worst_oracle = max(worst_oracle,
                               abs(intensity(m, x, nu=nu_m)
                                   - intensity_oracle(m, x, k_max=80)))
    ok = (worst_closed <= tol_closed and worst_oracle <= tol_oracle
          and err_mass <= tol_mass)
    return CheckResult(10, "continuous", ok,
                       "closed-form err %.3e (tol %.0e), oracle err %.3e "
                       "(tol %.0e), mass err %.3e (tol %.0e)"
                       % (worst_closed, tol_closed, worst_oracle, tol_oracle,
                          err_mass, tol_mass))


def check_transform_identities(n_points=1000, tol=1e-8):
    """11: the defining transform identities hold at random half-plane
    points, for both the tilted discrete and the continuous relations."""
    rng = np.random.default_rng(_SEED + 11)
    # Discrete relation: s_nu(z) * z * ((1-z) e^b s_mu(1-z) - (1-e^b)) = 1.
    mu_a = MixtureMeasure([Atom(0.2, 0.4), Atom(0.7, 0.6)],
                          probability=True)
    mu_c = MixtureMeasure([Atom(0.95, 0.3)],
                          [beta_piece(0.1, 0.9, 1.5, 2.0, weight=0.7)],
                          probability=True)
    worst_d = 0.0
    for mu, beta, count in ((mu_a, 0.0, 400), (mu_a, 1.0, 400),
                            (mu_c, 0.5, 200)):
        eb = math.exp(beta)
        nu = nu_beta(mu, beta)
        for _ in range(count):
            z = complex(rng.uniform(-1.0, 2.0), 10.0 ** rng.uniform(-3, 1))
            w = 1.0 - z
            lhs = stieltjes_eval(nu, z) * (
                z * (w * eb * stieltjes_eval(mu, w) - (1.0 - eb)))
            worst_d = max(worst_d, abs(lhs - 1.0))
    # Continuous relation: (1 + s_nu(z)) * s_mu(z) = -1/z.
    mu_h = MixtureMeasure([Atom(1.0, 0.5), Atom(3.0, 0.5)],
                          domain=DOMAIN_HALFLINE, probability=True)
    mu_g = MixtureMeasure([], [uniform_piece(1.0, 2.0)],
                          domain=DOMAIN_HALFLINE, probability=True)
    worst_c = 0.0
    for mu, count in ((mu_h, 800), (mu_g, 200)):
        nu = nu_continuous(mu)
        for _ in range(count):
            z = complex(rng.uniform(-2.0, 6.0), 10.0 ** rng.uniform(-3, 1))
            lhs = (1.0 + stieltjes_eval(nu, z)) * stieltjes_eval(mu, z)
            worst_c = max(worst_c, abs(lhs + 1.0 / z))
    ok = worst_d <= tol and worst_c <= tol
    return CheckResult(11, "transform_identities", ok,
                       "discrete residual %.3e, continuous residual %.3e "
                       "(tol %.0e)" % (worst_d, worst_c, tol))


ALL_CHECKS = (
    check_oracle_discrete,
    check_involution_roundtrip,
    check_arcsine_fixed_point,
    check_central_binomial,
    check_renewal_limit,
    check_partition_oracle,
    check_free_energy,
    check_partition_asymptotics,
    check_decay_rate,
    check_continuous,
    check_transform_identities,
)


def run_all(numbers=None):
    """Run the numbered checks (all by default); returns CheckResults."""
    results = []
    for i, fn in enumerate(ALL_CHECKS, start=1):
        if numbers is not None and i not in numbers:
            continue
        results.append(fn())
    return results
