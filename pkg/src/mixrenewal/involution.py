"""The spectral measure of a geometric-mixture renewal process.

For a probability measure mu on [0,1], the renewal probabilities of the
process with inter-arrival law K(n) = integral of (1-x)**(n-1) * x dmu(x)
are the moments of a second probability measure nu determined by

    s_nu(z) * s_mu(1-z) = 1 / (z * (1-z)).

This module constructs nu explicitly.  More generally it builds, for any
real pinning strength beta, the measure nu_beta with

    s_nu_beta(z) * (e^beta * s_mu(1-z) - (1-e^beta)/(1-z)) = 1/(z(1-z)),

whose moments are pinned-polymer partition functions; beta = 0 recovers nu.

Writing e^beta = E and D(z) = z * [(1-z) * E * s_mu(1-z) - (1-E)], we have
s_nu_beta = 1/D, so nu_beta consists of:

* an a.c. density on the reflected support, from the boundary values of D,
* an atom at every real zero of D, with mass -1/D'(zero).

Zeros are located by bisection in the variable w = 1 - z:
G(w) = E*w*s_mu(w) - (1-E) is strictly increasing in w off the support
(since d/dw [w*s_mu(w)] = integral of x/(x-w)^2 dmu > 0), so each support
gap holds at most one zero, bracketed by the endpoint signs.
"""

import math
from functools import lru_cache

from .errors import ValidationError, ConsistencyError, MixRenewalError
from .measure import MixtureMeasure, Atom, DensityPiece, DOMAIN_UNIT
from .quadrature import bisect_root, ABS_TOL, REL_TOL
from .stieltjes import stieltjes_real, stieltjes_derivative, hilbert_offset

PROVENANCES = ("involution", "polymer", "tilted", "continuous")

_ROOT_TOL = 1e-13
_CRIT_TOL = 1e-12  # |eb*(1-defect) - 1| below this counts as critical
_MASS_TOL = 1e-6


class SpectralMeasure(MixtureMeasure):
    """A constructed spectral measure; atoms may lie outside [0,1]."""

    def __init__(self, atoms=(), pieces=(), provenance="involution",
                 domain=DOMAIN_UNIT):
        if provenance not in PROVENANCES:
            raise ValidationError("unknown provenance %r" % (provenance,))
        object.__setattr__(self, "provenance", provenance)
        if any(a.mass <= 0.0 for a in atoms):
            raise ValidationError("spectral atom masses must be positive")
        super().__init__(atoms, pieces, domain=domain,
                         probability=False, validate=False)


# ---------------------------------------------------------------------------
# Root machinery in w = 1 - z.
# ---------------------------------------------------------------------------

def _g_of_w(mu, eb, w, abs_tol=ABS_TOL, rel_tol=REL_TOL):
    """G(w) = eb * w * s_mu(w) - (1 - eb); strictly increasing off support."""
    s = stieltjes_real(mu, w, abs_tol=abs_tol, rel_tol=rel_tol)
    if math.isinf(s):
        return math.copysign(math.inf, s) if w > 0.0 else \
            math.copysign(math.inf, -s)
    return eb * w * s - (1.0 - eb)


def _support_gaps_unit(mu):
    """Open gaps of the support of mu inside [0, 1], as (wl, wr) pairs
    together with flags telling whether each end is a support point."""
    edges = []
    for a in mu.atoms:
        edges.append((a.location, a.location))
    for p in mu.pieces:
        edges.append((p.lo, p.hi))
    edges.sort()
    gaps = []
    cursor = 0.0
    cursor_is_support = False
    for lo, hi in edges:
        if lo > cursor:
            gaps.append((cursor, lo, cursor_is_support, True))
        cursor = max(cursor, hi)
        cursor_is_support = True
    if cursor < 1.0:
        gaps.append((cursor, 1.0, cursor_is_support, False))
    return gaps


def _gap_left_value(mu, eb, wl, is_support):
    if not is_support:  # gap starts at 0 with nothing there
        return -(1.0 - eb)
    a = mu.atom_at(wl)
    if a is not None:
        if wl == 0.0:
            # w * s_mu(w) stays finite at an atom at 0: the 1/w pole is
            # cancelled, and the limit is -mass.
            return -eb * a.mass - (1.0 - eb)
        return -math.inf
    return _g_of_w(mu, eb, wl)


def _gap_right_value(mu, eb, wr, is_support):
    if not is_support:  # gap ends at 1 with no support there
        j = mu.weighted_integral("inv_1mx")
        if math.isinf(j):
            return -math.inf
        return -eb * j - (1.0 - eb)
    if mu.atom_at(wr) is not None:
        return math.inf
    return _g_of_w(mu, eb, wr)


def _bracketed_root(mu, eb, wl, wr, g_left, g_right):
    """Unique zero of G on (wl, wr) given sign(g_left) < 0 < sign(g_right)."""
    width = wr - wl
    inset_lo = inset_hi = 1e-9 * width
    lo, hi = wl + inset_lo, wr - inset_hi
    g_lo = _g_of_w(mu, eb, lo)
    g_hi = _g_of_w(mu, eb, hi)
    shrink = 0
    while g_lo >= 0.0 and shrink < 4:  # root hides between wl and lo
        inset_lo *= 1e-3
        lo = wl + inset_lo
        g_lo = _g_of_w(mu, eb, lo)
        shrink += 1
    shrink = 0
    while g_hi <= 0.0 and shrink < 4:  # root hides between hi and wr
        inset_hi *= 1e-3
        hi = wr - inset_hi
        g_hi = _g_of_w(mu, eb, hi)
        shrink += 1
    if g_lo >= 0.0 or g_hi <= 0.0:
        raise MixRenewalError(
            "root bracket failure on gap (%.17g, %.17g): G=%r at %.17g, "
            "G=%r at %.17g" % (wl, wr, g_lo, lo, g_hi, hi))
    return bisect_root(lambda w: _g_of_w(mu, eb, w), lo, hi,
                       g_lo=g_lo, g_hi=g_hi, tol=_ROOT_TOL)


def _root_mass(mu, eb, w_root):
    """Atom mass -1/D'(z) at z = 1 - w_root, via
    D'(z) = -z * eb * (s_mu(w) + w * s'_mu(w)) at a zero of G."""
    z = 1.0 - w_root
    s = stieltjes_real(mu, w_root)
    sp = stieltjes_derivative(mu, w_root)
    dws = s + w_root * sp  # = d/dw [w s_mu(w)] > 0
    mass = 1.0 / (z * eb * dws)
    if not (mass > 0.0 and math.isfinite(mass)):
        raise ConsistencyError("non-positive residue mass %r at %r"
                               % (mass, z))
    return mass


def _supercritical_root(mu, eb):
    """Zero of G on w < 0, i.e. the atom location x_beta = 1 - w > 1.

    Exists iff G(0-) = eb*(1 - mu({0})) - 1 > 0, i.e. beta > beta_c."""
    hi = -1e-12
    g_hi = _g_of_w(mu, eb, hi)
    while g_hi <= 0.0 and hi > -1e-250:
        hi *= 1e-3  # root sits between hi and 0; tighten toward 0
        g_hi = _g_of_w(mu, eb, hi)
    if g_hi <= 0.0:
        # So close to criticality that the limit value is numerically spent.
        raise ConsistencyError("supercritical root requested at numerically "
                               "critical beta")
    lo = -1.0
    g_lo = _g_of_w(mu, eb, lo)
    doublings = 0
    while g_lo >= 0.0:
        hi, g_hi = lo, g_lo
        lo *= 2.0
        if -lo > 1e9:
            raise MixRenewalError("root bracket expansion exceeded 1e9")
        g_lo = _g_of_w(mu, eb, lo)
        doublings += 1
    return bisect_root(lambda w: _g_of_w(mu, eb, w), lo, hi,
                       g_lo=g_lo, g_hi=g_hi, tol=_ROOT_TOL)


# ---------------------------------------------------------------------------
# Density pieces of nu_beta.
# ---------------------------------------------------------------------------

def _nu_density_value(x, one_minus_x, f, h, eb):
    """Boundary density of 1/D at x, given f = f_mu(1-x), h = H_mu(1-x)."""
    r = x * one_minus_x * eb * h - x * (1.0 - eb)
    i = math.pi * x * one_minus_x * eb * f
    denom = r * r + i * i
    if denom == 0.0:
        return 0.0
    return x * one_minus_x * eb * f / denom


def _edge_behavior(p_exp, soft_in, at_zero, at_one, beta):
    """(sing, soft) of the nu_beta density at a reflected piece endpoint,
    given the mu density exponent p_exp at the mirrored endpoint."""
    if soft_in:
        # mu-side soft inputs only arise on round-trips of constructed
        # measures; the H ~ 1/(d ln^2 d) envelope there behaves like the
        # bounded-positive case for classification purposes.
        p_exp = 0.0
    if at_zero:
        if p_exp > 0.0:
            return 1.0 - p_exp, False
        if p_exp == 0.0:
            return 0.0, True
        return 1.0 + p_exp, False
    if at_one:
        if beta == 0.0:
            if p_exp > 0.0:
                return 1.0 - p_exp, False
            if p_exp == 0.0:
                return 0.0, True
            return 1.0 + p_exp, False
        if p_exp == 0.0:
            return -1.0, False
        return p_exp - 1.0, False
    # interior endpoint
    if p_exp > 0.0:
        return -p_exp, False
    return p_exp, False


def _involute_piece(mu, p, eb, beta):
    """Reflected density piece of nu_beta coming from mu piece p."""
    nu_lo = 1.0 - p.hi
    nu_hi = 1.0 - p.lo
    hi_is_one = (p.hi == 1.0)

    @lru_cache(maxsize=None)
    def dens(x):
        one_minus_x = 1.0 - x
        f = p.density(one_minus_x)
        h = hilbert_offset(mu, 1.0, -x)
        return _nu_density_value(x, one_minus_x, f, h, eb)

    @lru_cache(maxsize=None)
    def dens_from_lo(d):
        x = nu_lo + d
        one_minus_x = p.hi - d
        f = p.density_from_hi(d)
        h = hilbert_offset(mu, p.hi, -d)
        return _nu_density_value(x, one_minus_x, f, h, eb)

    @lru_cache(maxsize=None)
    def dens_from_hi(d):
        x = nu_hi - d
        one_minus_x = p.lo + d
        f = p.density_from_lo(d)
        h = hilbert_offset(mu, p.lo, d)
        return _nu_density_value(x, one_minus_x, f, h, eb)

    sing_lo, soft_lo = _edge_behavior(p.sing_hi, p.soft_hi,
                                      at_zero=hi_is_one,
                                      at_one=False, beta=beta)
    sing_hi, soft_hi = _edge_behavior(p.sing_lo, p.soft_lo,
                                      at_zero=False,
                                      at_one=(p.lo == 0.0), beta=beta)
    return DensityPiece(nu_lo, nu_hi, dens,
                        sing_lo=sing_lo, sing_hi=sing_hi,
                        soft_lo=soft_lo, soft_hi=soft_hi,
                        density_from_lo=dens_from_lo,
                        density_from_hi=dens_from_hi)


# ---------------------------------------------------------------------------
# Full construction.
# ---------------------------------------------------------------------------

def build_spectral(mu, beta=0.0, provenance="involution",
                   mass_tol=_MASS_TOL, check_mass=True):
    """Construct nu_beta for a probability measure mu on [0,1].

    beta = 0 gives the plain spectral measure nu of the renewal process.
    """
    if mu.domain != DOMAIN_UNIT:
        raise ValidationError("spectral construction requires the unit "
                              "domain")
    eb = math.exp(beta)
    defect = mu.defect()
    if defect >= 1.0:
        raise ValidationError("measure is entirely defective")
    beta_c = -math.log1p(-defect)

    atoms = []

    # Atom at 0: always a zero of D; mass finite iff the reflected weight
    # integral converges.
    j = mu.weighted_integral("inv_1mx")
    if math.isfinite(j):
        atoms.append(Atom(0.0, 1.0 / (eb * j + 1.0 - eb)))

    # Atom at 1: boundary zero, present exactly at criticality
    # eb * (1 - defect) = 1 (for a proper measure that is beta = 0), with
    # mass 1 / (eb * integral of dmu(x)/x over x > 0) when that converges.
    crit = eb * (1.0 - defect) - 1.0
    if abs(crit) <= _CRIT_TOL:
        m = mu.restricted(drop_atom_at=0.0).weighted_integral("inv_x")
        if math.isfinite(m):
            atoms.append(Atom(1.0, 1.0 / (eb * m)))

    # Interior gap atoms.
    for wl, wr, l_is_support, r_is_support in _support_gaps_unit(mu):
        g_left = _gap_left_value(mu, eb, wl, l_is_support)
        g_right = _gap_right_value(mu, eb, wr, r_is_support)
        if wl == 0.0 and abs(crit) <= _CRIT_TOL:
            # The zero sits numerically on the gap edge w = 0; it is owned
            # by the boundary-atom formula above.
            continue
        if not (g_left < 0.0 < g_right):
            continue
        w_root = _bracketed_root(mu, eb, wl, wr, g_left, g_right)
        d_edge = min(w_root - wl, wr - w_root)
        if d_edge <= 1e-12 and not (wl == 0.0 and w_root - wl == d_edge):
            # G blows up at a support edge, so a root this close to one
            # carries mass O(distance) at most: below every tolerance, and
            # beyond what the residue quadrature can resolve.  (The w = 0
            # edge is different: G stays finite there and a nearby root is
            # the near-critical atom with order-one mass.)
            continue
        atoms.append(Atom(1.0 - w_root, _root_mass(mu, eb, w_root)))

    # Supercritical atom at x_beta > 1.
    if crit > _CRIT_TOL:
        w_root = _supercritical_root(mu, eb)
        atoms.append(Atom(1.0 - w_root, _root_mass(mu, eb, w_root)))

    pieces = [_involute_piece(mu, p, eb, beta) for p in mu.pieces]

    nu = SpectralMeasure(atoms, pieces, provenance=provenance)
    if check_mass:
        mass = nu.total_mass()
        if abs(mass - 1.0) > mass_tol:
            raise ConsistencyError(
                "spectral measure mass %.12g deviates from 1 by %.3g"
                % (mass, abs(mass - 1.0)))
    return nu


def involute(mu, mass_tol=_MASS_TOL):
    """The spectral measure nu with s_nu(z) s_mu(1-z) = 1/(z(1-z))."""
    return build_spectral(mu, beta=0.0, provenance="involution",
                          mass_tol=mass_tol)


def residue_mass(mu, y):
    """Atom mass of nu at an interior zero y of s_mu(1-.):
    1 / (y (1-y) s'_mu(1-y))."""
    if y <= 0.0 or y >= 1.0:
        raise ValidationError("residue location must lie in (0, 1)")
    sp = stieltjes_derivative(mu, 1.0 - y)
    mass = 1.0 / (y * (1.0 - y) * sp)
    if not (mass > 0.0 and math.isfinite(mass)):
        raise ConsistencyError("non-positive residue mass at %r" % (y,))
    return mass


def _interior_gap_atoms(mu):
    nu = build_spectral(mu, beta=0.0, check_mass=False)
    return [(a.location, a.mass) for a in nu.atoms
            if 0.0 < a.location < 1.0]


def gap_atoms_atomic(mu):
    """Interior atoms of nu for purely atomic mu: one zero per gap between
    consecutive reflected atom positions, with its residue mass."""
    if mu.pieces:
        raise ValidationError("gap_atoms_atomic requires a purely atomic "
                              "measure")
    return _interior_gap_atoms(mu)


def gap_atoms_ac(mu):
    """Interior atoms of nu for purely a.c. mu: at most one zero per gap
    between reflected support intervals."""
    if mu.atoms:
        raise ValidationError("gap_atoms_ac requires a purely a.c. measure")
    return _interior_gap_atoms(mu)
