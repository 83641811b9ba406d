"""Stieltjes transforms, Hilbert transforms, and boundary values.

The Stieltjes transform of a positive measure m is
``s_m(z) = integral of dm(x) / (x - z)``, analytic off the support and
mapping the upper half-plane to itself.  On the support its boundary limit
from above is ``H_m(x) + i*pi*f_m(x)`` where H_m is the principal-value
Hilbert transform and f_m the a.c. density.

The spectral constructions need H_m extremely close to support endpoints
(distances far below floating-point resolution around the point itself),
so the core evaluator works with points represented as ``base + delta``
where ``base`` is exact and ``delta`` is a small exact offset; all
differences are computed as ``(y - base) - delta``.
"""

import math

from .errors import ValidationError, ConsistencyError
from .measure import MixtureMeasure
from .quadrature import segment_integral, segment_integral_complex, \
    _raw_quad, ABS_TOL, REL_TOL

_EDGE_GUARD = 1e-8  # public PV evaluation refuses points this close to edges


class BoundaryValue:
    """Boundary limit of a Stieltjes transform: H + i*pi*density."""

    __slots__ = ("hilbert", "density")

    def __init__(self, hilbert, density):
        if density < 0.0:
            raise ValidationError("boundary density must be nonnegative")
        object.__setattr__(self, "hilbert", float(hilbert))
        object.__setattr__(self, "density", float(density))

    def __setattr__(self, *args):
        raise AttributeError("BoundaryValue is immutable")

    def __iter__(self):
        return iter((self.hilbert, self.density))

    def __repr__(self):
        return "BoundaryValue(H=%r, f=%r)" % (self.hilbert, self.density)


def stieltjes_eval(m, z, abs_tol=ABS_TOL, rel_tol=REL_TOL):
    """s_m(z) for complex z off the support (or real z off the closure)."""
    z = complex(z)
    if z.imag == 0.0:
        return complex(stieltjes_real(m, z.real,
                                      abs_tol=abs_tol, rel_tol=rel_tol))
    if abs(z.imag) < 1e-10 and m.in_support(z.real, tol=1e-10):
        raise ValidationError("evaluation point too close to the support")
    total = complex(0.0, 0.0)
    for a in m.atoms:
        total += a.mass / (a.location - z)
    for p in m.pieces:
        dens = p.density
        total += segment_integral_complex(
            lambda x: dens(x) / (x - z), p.lo, p.hi,
            sing_a=p.sing_lo, soft_a=p.soft_lo,
            f_from_a=lambda d: p.density_from_lo(d) / ((p.lo - z) + d),
            sing_b=p.sing_hi, soft_b=p.soft_hi,
            f_from_b=lambda d: p.density_from_hi(d) / ((p.hi - z) - d),
            abs_tol=abs_tol, rel_tol=rel_tol)
    return total


def _pole_segment(p, d, k, pole_below, abs_tol, rel_tol):
    """Integral of density(y) / |y - w|**k over piece p, for a pole w
    outside the piece at exact distance d (0 < d < width) from its nearer
    edge (the lo edge when pole_below, else the hi edge).

    Split into three zones so adaptive quadrature never faces a spike many
    orders of magnitude narrower than its interval: distances below d in
    from-near-edge coordinates (denominator varies by at most 2**k), the
    stretch from d out to half the width in log-distance coordinates, and
    the remainder in from-far-edge coordinates (denominator bounded below
    by d + width/2)."""
    width = p.hi - p.lo
    if pole_below:
        f_near, sing_near, soft_near = \
            p.density_from_lo, p.sing_lo, p.soft_lo
        f_far, sing_far, soft_far = p.density_from_hi, p.sing_hi, p.soft_hi
    else:
        f_near, sing_near, soft_near = \
            p.density_from_hi, p.sing_hi, p.soft_hi
        f_far, sing_far, soft_far = p.density_from_lo, p.sing_lo, p.soft_lo

    def g_near(t):
        return f_near(t) / (d + t) ** k

    t1 = min(d, 0.5 * width)
    near = segment_integral(g_near, 0.0, t1,
                            sing_a=sing_near, soft_a=soft_near,
                            f_from_a=g_near,
                            abs_tol=abs_tol, rel_tol=rel_tol)
    middle = 0.0
    if t1 < 0.5 * width:
        middle = _raw_quad(
            lambda lam: (lambda t: f_near(t) * t / (d + t) ** k)
            (math.exp(lam)),
            math.log(t1), math.log(0.5 * width), abs_tol, rel_tol)
    far = segment_integral(
        lambda s: f_far(s) / ((d + width) - s) ** k, 0.0, 0.5 * width,
        sing_a=sing_far, soft_a=soft_far,
        f_from_a=lambda s: f_far(s) / ((d + width) - s) ** k,
        abs_tol=abs_tol, rel_tol=rel_tol)
    return near + middle + far


def _piece_kernel_integral(p, d_lo, d_hi, k, abs_tol, rel_tol):
    """Integral of density(y) / (y - x)**k over piece p for a point x
    strictly outside the piece, with exact signed edge distances
    d_lo = x - lo < 0 or d_hi = hi - x < 0; returns the signed value."""
    width = p.hi - p.lo
    if d_lo < 0.0 and -d_lo < width:  # pole just below the piece
        return _pole_segment(p, -d_lo, k, True, abs_tol, rel_tol)
    if d_hi < 0.0 and -d_hi < width:  # pole just above the piece
        val = _pole_segment(p, -d_hi, k, False, abs_tol, rel_tol)
        return val if k % 2 == 0 else -val
    dens = p.density
    x = p.lo + d_lo
    return segment_integral(
        lambda y: dens(y) / (y - x) ** k, p.lo, p.hi,
        sing_a=p.sing_lo, soft_a=p.soft_lo,
        f_from_a=lambda t: p.density_from_lo(t) / (t - d_lo) ** k,
        sing_b=p.sing_hi, soft_b=p.soft_hi,
        f_from_b=lambda t: p.density_from_hi(t) / (d_hi - t) ** k,
        abs_tol=abs_tol, rel_tol=rel_tol)


def stieltjes_real(m, w, abs_tol=ABS_TOL, rel_tol=REL_TOL):
    """s_m(w) for real w outside the open support.

    w may sit exactly on a piece endpoint: the integral is then evaluated
    with the sharpened endpoint exponent, and returns +-inf when the
    declared exponents make it divergent (+inf when w touches a piece from
    below, -inf from above).
    """
    total = 0.0
    for a in m.atoms:
        if a.location == w:
            raise ValidationError("Stieltjes transform at an atom location")
        total += a.mass / (a.location - w)
    for p in m.pieces:
        if p.lo < w < p.hi:
            raise ValidationError("real evaluation inside a density piece")
        if w == p.lo or w == p.hi:
            extra_lo = extra_hi = 0.0
            if w == p.lo:
                if p.soft_lo or p.sing_lo >= 0.0:
                    return math.inf
                extra_lo = 1.0
            else:
                if p.soft_hi or p.sing_hi >= 0.0:
                    return -math.inf
                extra_hi = 1.0
            dens = p.density
            total += segment_integral(
                lambda x: dens(x) / (x - w), p.lo, p.hi,
                sing_a=p.sing_lo + extra_lo, soft_a=p.soft_lo,
                f_from_a=lambda d: p.density_from_lo(d) / ((p.lo - w) + d),
                sing_b=p.sing_hi + extra_hi, soft_b=p.soft_hi,
                f_from_b=lambda d: p.density_from_hi(d) / ((p.hi - w) - d),
                abs_tol=abs_tol, rel_tol=rel_tol)
            continue
        total += _piece_kernel_integral(p, w - p.lo, p.hi - w, 1,
                                        abs_tol, rel_tol)
    return total


def hilbert_offset(m, base, delta, abs_tol=ABS_TOL, rel_tol=REL_TOL):
    """Principal-value Hilbert transform at x = base + delta.

    base must be exact (a piece endpoint, 0, 1, or the point itself with
    delta = 0); differences to support coordinates are computed as
    (y - base) - delta so that tiny offsets from an endpoint survive.
    The point must not coincide with an atom; inside a piece the pole is
    removed by the subtracted-singularity form.
    """
    x = base + delta
    total = 0.0
    for a in m.atoms:
        diff = (a.location - base) - delta
        if diff == 0.0:
            raise ValidationError("Hilbert transform at an atom location")
        total += a.mass / diff
    for p in m.pieces:
        d_lo = (base - p.lo) + delta   # distance from piece lo to the point
        d_hi = (p.hi - base) - delta   # distance from the point to piece hi
        if d_lo > 0.0 and d_hi > 0.0:
            total += _pv_piece(p, d_lo, d_hi, abs_tol, rel_tol)
            continue
        extra_lo = extra_hi = 0.0
        if d_lo == 0.0 or d_hi == 0.0:
            # Exactly on an edge: the transform diverges unless the density
            # vanishes there (then sharpen the exponent and integrate).
            if d_lo == 0.0:
                if p.soft_lo or p.sing_lo >= 0.0:
                    return math.inf
                extra_lo = 1.0
            if d_hi == 0.0:
                if p.soft_hi or p.sing_hi >= 0.0:
                    return -math.inf
                extra_hi = 1.0
            dens = p.density
            total += segment_integral(
                lambda y: dens(y) / (y - x), p.lo, p.hi,
                sing_a=p.sing_lo + extra_lo, soft_a=p.soft_lo,
                f_from_a=lambda t: p.density_from_lo(t) / (t - d_lo),
                sing_b=p.sing_hi + extra_hi, soft_b=p.soft_hi,
                f_from_b=lambda t: p.density_from_hi(t) / (d_hi - t),
                abs_tol=abs_tol, rel_tol=rel_tol)
            continue
        total += _piece_kernel_integral(p, d_lo, d_hi, 1, abs_tol, rel_tol)
    return total


def _pv_piece(p, d_lo, d_hi, abs_tol, rel_tol):
    """PV integral of density(y)/(y - x) over a piece containing x, where
    d_lo = x - lo > 0 and d_hi = hi - x > 0 are exact distances.

    The pole is neutralized on the symmetric window |y - x| < r (r = half
    the smaller endpoint distance), where the PV of the constant term
    vanishes identically.  Between r and half the larger endpoint distance
    the integrand is nearly 1/(y - x), so that stretch is integrated in
    log distance-to-the-pole coordinates; what remains on each side has a
    denominator varying by at most a factor of two, which keeps adaptive
    quadrature honest even when x sits 1e-300 from an endpoint."""
    near_lo = d_lo <= d_hi
    d_far = max(d_lo, d_hi)
    r = 0.5 * min(d_lo, d_hi)
    if near_lo:
        # signed offset u = y - x; distance from lo is d_lo + u, exact
        f_at = lambda u: p.density_from_lo(d_lo + u)
        fx = p.density_from_lo(d_lo)
    else:
        f_at = lambda u: p.density_from_hi(d_hi - u)
        fx = p.density_from_hi(d_hi)

    def window_integrand(u):
        if u == 0.0:
            return 0.0
        return (f_at(u) - fx) / u

    window = _raw_quad(window_integrand, -r, r, abs_tol, rel_tol)

    # Transition zone on the far side: r < |y - x| < d_far / 2, taken in
    # lam = log|y - x| so the near-pole decades carry equal weight.
    sign_far = 1.0 if near_lo else -1.0
    trans = 0.0
    lam_lo = math.log(r)
    lam_hi = math.log(0.5 * d_far)
    if lam_hi > lam_lo:
        trans = sign_far * _raw_quad(
            lambda lam: f_at(sign_far * math.exp(lam)), lam_lo, lam_hi,
            abs_tol, rel_tol)

    # Outer zones in distance-from-endpoint coordinates.  The cut on each
    # side is where the window/transition coverage ends.
    cut_lo = r if near_lo else 0.5 * d_lo
    cut_hi = 0.5 * d_hi if near_lo else r
    left = right = 0.0
    if d_lo - cut_lo > 0.0:
        # y = lo + t, t in (0, d_lo - cut_lo); y - x = t - d_lo <= -cut_lo.
        left = segment_integral(
            lambda t: p.density_from_lo(t) / (t - d_lo), 0.0, d_lo - cut_lo,
            sing_a=p.sing_lo, soft_a=p.soft_lo,
            f_from_a=lambda t: p.density_from_lo(t) / (t - d_lo),
            abs_tol=abs_tol, rel_tol=rel_tol)
    if d_hi - cut_hi > 0.0:
        # y = hi - s, s in (0, d_hi - cut_hi); y - x = d_hi - s >= cut_hi.
        right = segment_integral(
            lambda s: p.density_from_hi(s) / (d_hi - s), 0.0, d_hi - cut_hi,
            sing_a=p.sing_hi, soft_a=p.soft_hi,
            f_from_a=lambda s: p.density_from_hi(s) / (d_hi - s),
            abs_tol=abs_tol, rel_tol=rel_tol)
    return left + right + trans + window


def hilbert(m, x, abs_tol=ABS_TOL, rel_tol=REL_TOL):
    """PV Hilbert transform at x (ordinary integral off the support).

    Refuses points within 1e-8 of a piece endpoint or atom: boundary limits
    there are better computed from the endpoint-distance evaluators.
    """
    for a in m.atoms:
        if abs(a.location - x) < _EDGE_GUARD:
            raise ValidationError("point within the guard band of an atom")
    for p in m.pieces:
        near_edge = min(abs(x - p.lo), abs(x - p.hi)) < _EDGE_GUARD
        if near_edge:
            raise ValidationError("point within the guard band of a piece "
                                  "endpoint")
    return hilbert_offset(m, x, 0.0, abs_tol=abs_tol, rel_tol=rel_tol)


def density_at(m, x):
    """A.c. density of m at x (0 in gaps); error at atoms/edges."""
    p = m.piece_containing(x)
    if p is None:
        if m.atom_at(x) is not None:
            raise ValidationError("density requested at an atom")
        return 0.0
    return p.density(x)


def boundary(m, x, abs_tol=ABS_TOL, rel_tol=REL_TOL):
    """Boundary value (H_m(x), f_m(x)) of s_m at a real point x."""
    return BoundaryValue(hilbert(m, x, abs_tol=abs_tol, rel_tol=rel_tol),
                         density_at(m, x))


def stieltjes_derivative(m, w, abs_tol=ABS_TOL, rel_tol=REL_TOL):
    """s'_m(w) = integral of dm(x)/(x - w)**2, for w off the support."""
    wc = complex(w)
    is_real = (wc.imag == 0.0)
    if is_real:
        w = wc.real
        if m.in_support(w):
            raise ValidationError("derivative requested on the support")
        total = 0.0
        for a in m.atoms:
            total += a.mass / (a.location - w) ** 2
        for p in m.pieces:
            total += _piece_kernel_integral(p, w - p.lo, p.hi - w, 2,
                                            abs_tol, rel_tol)
        if total <= 0.0:
            raise ConsistencyError("s' must be positive for a positive "
                                   "measure off its support")
        return total
    if abs(wc.imag) < 1e-10 and m.in_support(wc.real, tol=1e-10):
        raise ValidationError("evaluation point too close to the support")
    total = complex(0.0, 0.0)
    for a in m.atoms:
        total += a.mass / (a.location - wc) ** 2
    for p in m.pieces:
        dens = p.density
        total += segment_integral_complex(
            lambda x: dens(x) / (x - wc) ** 2, p.lo, p.hi,
            sing_a=p.sing_lo, soft_a=p.soft_lo,
            f_from_a=lambda d: p.density_from_lo(d) / ((p.lo - wc) + d) ** 2,
            sing_b=p.sing_hi, soft_b=p.soft_hi,
            f_from_b=lambda d: p.density_from_hi(d) / ((p.hi - wc) - d) ** 2,
            abs_tol=abs_tol, rel_tol=rel_tol)
    return total
