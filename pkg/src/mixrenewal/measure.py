"""Positive measures on an interval or half-line: atoms plus density pieces.

A MixtureMeasure is a finite list of point masses and a finite list of
density pieces.  Each piece carries singularity metadata so that quadrature
and divergence decisions are made from declared exponents, never from
numerical blow-up:

* ``sing_lo`` / ``sing_hi`` — the algebraic exponent p with
  ``density(endpoint +- d) ~ C * d**(-p)``.  p in (0, 1) is an integrable
  blow-up; p <= 0 means the density stays bounded (negative p records that
  it vanishes like d**|p|, which sharpens divergence tests for weighted
  integrals).
* ``soft_lo`` / ``soft_hi`` — flags a logarithmic-type blow-up
  ``~ 1/(d * ln(d)**2)`` that no algebraic exponent captures (these arise
  as outputs of the spectral constructions, not as user inputs).
* optional ``density_from_lo(d)`` / ``density_from_hi(d)`` evaluators that
  receive the exact distance to the endpoint, for densities that must be
  evaluated much closer to an endpoint than floating-point subtraction
  allows.
"""

import math
import warnings

from .errors import ValidationError, DomainError, PrecisionLossWarning
from .quadrature import segment_integral, ABS_TOL, REL_TOL

DOMAIN_UNIT = "unit"
DOMAIN_HALFLINE = "halfline"

_MASS_TOL = 1e-10


class Atom:
    """A point mass."""

    __slots__ = ("location", "mass")

    def __init__(self, location, mass):
        if not (mass > 0.0) or not math.isfinite(mass):
            raise ValidationError("atom mass must be positive and finite")
        if not math.isfinite(location):
            raise ValidationError("atom location must be finite")
        object.__setattr__(self, "location", float(location))
        object.__setattr__(self, "mass", float(mass))

    def __setattr__(self, *args):
        raise AttributeError("Atom is immutable")

    def __repr__(self):
        return "Atom(%r, %r)" % (self.location, self.mass)


class DensityPiece:
    """An absolutely continuous piece on [lo, hi] with endpoint metadata."""

    __slots__ = ("lo", "hi", "density", "sing_lo", "sing_hi",
                 "soft_lo", "soft_hi", "density_from_lo", "density_from_hi")

    def __init__(self, lo, hi, density, sing_lo=0.0, sing_hi=0.0,
                 soft_lo=False, soft_hi=False,
                 density_from_lo=None, density_from_hi=None):
        if not lo < hi:
            raise ValidationError("piece requires lo < hi")
        if sing_lo >= 1.0 or sing_hi >= 1.0:
            raise ValidationError("singularity exponents must be < 1 "
                                  "(integrability)")
        sset = object.__setattr__
        sset(self, "lo", float(lo))
        sset(self, "hi", float(hi))
        sset(self, "density", density)
        sset(self, "sing_lo", float(sing_lo))
        sset(self, "sing_hi", float(sing_hi))
        sset(self, "soft_lo", bool(soft_lo))
        sset(self, "soft_hi", bool(soft_hi))
        sset(self, "density_from_lo",
             density_from_lo if density_from_lo is not None
             else (lambda d, _f=density, _lo=float(lo): _f(_lo + d)))
        sset(self, "density_from_hi",
             density_from_hi if density_from_hi is not None
             else (lambda d, _f=density, _hi=float(hi): _f(_hi - d)))

    def __setattr__(self, *args):
        raise AttributeError("DensityPiece is immutable")

    def integral(self, g=None, g_from_lo=None, g_from_hi=None,
                 abs_tol=ABS_TOL, rel_tol=REL_TOL,
                 extra_sing_lo=0.0, extra_sing_hi=0.0):
        """Integrate density * g over the piece, honoring endpoint metadata.

        extra_sing_lo / extra_sing_hi add to the declared exponents (used
        when the weight g itself is singular at an endpoint, e.g. 1/x).
        """
        dens = self.density
        flo, fhi = self.density_from_lo, self.density_from_hi
        if g is None:
            f = dens
            f_lo, f_hi = flo, fhi
        else:
            f = lambda x: dens(x) * g(x)
            glo = g_from_lo if g_from_lo is not None else (
                lambda d: g(self.lo + d))
            ghi = g_from_hi if g_from_hi is not None else (
                lambda d: g(self.hi - d))
            f_lo = lambda d: flo(d) * glo(d)
            f_hi = lambda d: fhi(d) * ghi(d)
        return segment_integral(
            f, self.lo, self.hi,
            sing_a=self.sing_lo + extra_sing_lo, soft_a=self.soft_lo,
            f_from_a=f_lo,
            sing_b=self.sing_hi + extra_sing_hi, soft_b=self.soft_hi,
            f_from_b=f_hi,
            abs_tol=abs_tol, rel_tol=rel_tol)

    def __repr__(self):
        return "DensityPiece([%g, %g])" % (self.lo, self.hi)


class MixtureMeasure:
    """A positive measure: atoms + density pieces, immutable after build."""

    def __init__(self, atoms=(), pieces=(), domain=DOMAIN_UNIT,
                 probability=False, validate=True):
        if domain not in (DOMAIN_UNIT, DOMAIN_HALFLINE):
            raise ValidationError("unknown domain tag %r" % (domain,))
        self._atoms = tuple(sorted(atoms, key=lambda a: a.location))
        self._pieces = tuple(sorted(pieces, key=lambda p: p.lo))
        self._domain = domain
        self._probability = bool(probability)
        self._cache = {}
        if validate:
            self._validate()
        self._frozen = True

    def __setattr__(self, name, value):
        if getattr(self, "_frozen", False) and name != "_cache":
            raise AttributeError("MixtureMeasure is immutable")
        object.__setattr__(self, name, value)

    # -- structure ---------------------------------------------------------

    @property
    def atoms(self):
        return self._atoms

    @property
    def pieces(self):
        return self._pieces

    @property
    def domain(self):
        return self._domain

    @property
    def is_probability(self):
        return self._probability

    def _domain_interval(self):
        if self._domain == DOMAIN_UNIT:
            return 0.0, 1.0
        return 0.0, math.inf

    def _validate(self):
        lo_dom, hi_dom = self._domain_interval()
        locs = [a.location for a in self._atoms]
        if any(l2 <= l1 for l1, l2 in zip(locs, locs[1:])):
            raise ValidationError("atom locations must be strictly increasing")
        for loc in locs:
            if not (lo_dom <= loc <= hi_dom):
                raise ValidationError("atom at %g outside domain" % loc)
        prev_hi = -math.inf
        for p in self._pieces:
            if p.lo < lo_dom or p.hi > hi_dom:
                raise ValidationError("piece [%g, %g] outside domain"
                                      % (p.lo, p.hi))
            if p.lo < prev_hi:
                raise ValidationError("pieces must be disjoint and ordered")
            prev_hi = p.hi
            for loc in locs:
                if p.lo < loc < p.hi:
                    raise ValidationError("atom at %g inside piece interior"
                                          % loc)
        mass = self.total_mass()
        if not math.isfinite(mass):
            raise ValidationError("total mass is not finite")
        if self._probability and abs(mass - 1.0) > _MASS_TOL:
            raise ValidationError("probability measure has mass %.15g" % mass)

    def support_items(self):
        """Sorted list of support components: ('atom', x) and
        ('piece', lo, hi)."""
        items = [("atom", a.location) for a in self._atoms]
        items += [("piece", p.lo, p.hi) for p in self._pieces]
        items.sort(key=lambda it: it[1])
        return items

    def atom_at(self, x, tol=0.0):
        for a in self._atoms:
            if abs(a.location - x) <= tol:
                return a
        return None

    def piece_containing(self, x):
        for p in self._pieces:
            if p.lo < x < p.hi:
                return p
        return None

    def in_support(self, x, tol=0.0):
        if self.atom_at(x, tol) is not None:
            return True
        return any(p.lo - tol <= x <= p.hi + tol for p in self._pieces)

    # -- functionals --------------------------------------------------------

    def total_mass(self, abs_tol=ABS_TOL, rel_tol=REL_TOL):
        key = ("mass", abs_tol, rel_tol)
        if key not in self._cache:
            mass = sum(a.mass for a in self._atoms)
            mass += sum(p.integral(abs_tol=abs_tol, rel_tol=rel_tol)
                        for p in self._pieces)
            self._cache[key] = mass
        return self._cache[key]

    def moment(self, n, abs_tol=ABS_TOL, rel_tol=REL_TOL):
        """Integral of x**n against the measure (exact over atoms)."""
        if n < 0 or n != int(n):
            raise ValidationError("moment order must be a nonnegative integer")
        n = int(n)
        total = 0.0
        for a in self._atoms:
            total += a.mass * (1.0 if n == 0 else a.location ** n)
        for p in self._pieces:
            if n == 0:
                total += p.integral(abs_tol=abs_tol, rel_tol=rel_tol)
                continue

            def g(x, _n=n):
                return x ** _n

            if p.hi == 1.0:
                g_hi = lambda d, _n=n: math.exp(_n * math.log1p(-d)) \
                    if d < 1.0 else 0.0
            else:
                g_hi = lambda d, _n=n, _hi=p.hi: (_hi - d) ** _n
            g_lo = lambda d, _n=n, _lo=p.lo: (_lo + d) ** _n
            total += p.integral(g=g, g_from_lo=g_lo, g_from_hi=g_hi,
                                abs_tol=abs_tol, rel_tol=rel_tol)
        has_support_above_zero = (
            any(a.location > 0.0 for a in self._atoms) or bool(self._pieces))
        if total == 0.0 and n > 0 and has_support_above_zero:
            warnings.warn("moment underflowed to zero",
                          PrecisionLossWarning, stacklevel=2)
        return total

    def exp_moment(self, x, abs_tol=ABS_TOL, rel_tol=REL_TOL):
        """Integral of exp(-x*s) over s against the measure."""
        total = sum(a.mass * math.exp(-x * a.location) for a in self._atoms)
        for p in self._pieces:
            total += p.integral(g=lambda s: math.exp(-x * s),
                                abs_tol=abs_tol, rel_tol=rel_tol)
        return total

    def weighted_integral(self, weight, abs_tol=ABS_TOL, rel_tol=REL_TOL):
        """Integral of 1/x ('inv_x') or 1/(1-x) ('inv_1mx'); +inf when the
        declared singularity exponents make it divergent."""
        if weight not in ("inv_x", "inv_1mx"):
            raise ValidationError("unknown weight tag %r" % (weight,))
        if weight == "inv_1mx" and self._domain != DOMAIN_UNIT:
            raise DomainError("inv_1mx weight requires the unit domain")
        pole = 0.0 if weight == "inv_x" else 1.0
        for a in self._atoms:
            if a.location == pole:
                return math.inf
        total = 0.0
        for a in self._atoms:
            total += a.mass / (a.location if weight == "inv_x"
                               else 1.0 - a.location)
        for p in self._pieces:
            extra_lo = extra_hi = 0.0
            if weight == "inv_x" and p.lo == 0.0:
                if p.soft_lo or p.sing_lo >= 0.0:
                    return math.inf
                extra_lo = 1.0
            if weight == "inv_1mx" and p.hi == 1.0:
                if p.soft_hi or p.sing_hi >= 0.0:
                    return math.inf
                extra_hi = 1.0
            if weight == "inv_x":
                g = lambda x: 1.0 / x
                g_lo = lambda d, _lo=p.lo: 1.0 / (_lo + d)
                g_hi = lambda d, _hi=p.hi: 1.0 / (_hi - d)
            else:
                g = lambda x: 1.0 / (1.0 - x)
                g_lo = (lambda d, _lo=p.lo: 1.0 / ((1.0 - _lo) - d))
                g_hi = (lambda d, _hi=p.hi: 1.0 / ((1.0 - _hi) + d))
            total += p.integral(g=g, g_from_lo=g_lo, g_from_hi=g_hi,
                                extra_sing_lo=extra_lo,
                                extra_sing_hi=extra_hi,
                                abs_tol=abs_tol, rel_tol=rel_tol)
        return total

    def geometric_mixture_pmf(self, n, abs_tol=ABS_TOL, rel_tol=REL_TOL):
        """Inter-arrival probability K(n) = integral of (1-x)**(n-1) * x."""
        if self._domain != DOMAIN_UNIT:
            raise DomainError("geometric mixture requires the unit domain")
        if n < 1 or n != int(n):
            raise ValidationError("pmf index must be a positive integer")
        n = int(n)
        total = 0.0
        for a in self._atoms:
            x = a.location
            total += a.mass * ((1.0 - x) ** (n - 1)) * x
        for p in self._pieces:

            def g(x, _n=n):
                return ((1.0 - x) ** (_n - 1)) * x

            if p.hi == 1.0:
                g_hi = lambda d, _n=n: (d ** (_n - 1)) * (1.0 - d)
            else:
                g_hi = lambda d, _n=n, _hi=p.hi: \
                    (((1.0 - _hi) + d) ** (_n - 1)) * (_hi - d)
            g_lo = lambda d, _n=n, _lo=p.lo: \
                (((1.0 - _lo) - d) ** (_n - 1)) * (_lo + d)
            total += p.integral(g=g, g_from_lo=g_lo, g_from_hi=g_hi,
                                abs_tol=abs_tol, rel_tol=rel_tol)
        return total

    def defect(self):
        """Mass of the atom at 0 (the probability of no renewal)."""
        if self._domain != DOMAIN_UNIT:
            raise DomainError("defect requires the unit domain")
        a = self.atom_at(0.0)
        return a.mass if a is not None else 0.0

    def mean_interarrival(self):
        """Mean inter-arrival time: integral of 1/x, +inf when divergent or
        when there is mass at 0."""
        if self._domain != DOMAIN_UNIT:
            raise DomainError("mean_interarrival requires the unit domain")
        return self.weighted_integral("inv_x")

    def restricted(self, drop_atom_at=None):
        """Copy of the measure without the atom at the given location."""
        atoms = [a for a in self._atoms if a.location != drop_atom_at]
        return MixtureMeasure(atoms, self._pieces, domain=self._domain,
                              probability=False, validate=False)

    def __repr__(self):
        return ("MixtureMeasure(%d atoms, %d pieces, %s)"
                % (len(self._atoms), len(self._pieces), self._domain))


def scale_pushforward(m, factor, snap_atoms=()):
    """Pushforward of the measure under x -> factor * x (factor > 0).

    snap_atoms: atom locations whose images should be snapped to an exact
    target when within 1e-9 (list of (approx_image, exact_target) pairs).
    """
    if not factor > 0.0:
        raise ValidationError("scale factor must be positive")
    atoms = []
    for a in m.atoms:
        loc = a.location * factor
        for approx, exact in snap_atoms:
            if abs(loc - exact) <= 1e-9:
                loc = exact
        atoms.append(Atom(loc, a.mass))
    pieces = []
    for p in m.pieces:
        inv = 1.0 / factor
        dens = (lambda x, _f=p.density, _i=inv: _f(x * _i) * _i)
        d_lo = (lambda d, _f=p.density_from_lo, _i=inv: _f(d * _i) * _i)
        d_hi = (lambda d, _f=p.density_from_hi, _i=inv: _f(d * _i) * _i)
        pieces.append(DensityPiece(p.lo * factor, p.hi * factor, dens,
                                   sing_lo=p.sing_lo, sing_hi=p.sing_hi,
                                   soft_lo=p.soft_lo, soft_hi=p.soft_hi,
                                   density_from_lo=d_lo, density_from_hi=d_hi))
    return atoms, pieces
