"""Continuous-time counterpart: exponential-mixture inter-arrival laws.

A probability measure mu on rates s in (0, inf) defines the inter-arrival
density f(x) = integral of s e^{-sx} dmu(s).  The renewal intensity
H(x) = sum over k of the k-fold convolution f^{*k}(x) is the Laplace
transform of a positive measure nu with

    (1 + s_nu(z)) * s_mu(z) = -1/z,

so s_nu = -(1 + z s_mu(z)) / (z s_mu(z)): nu has an atom at 0 of mass
1/m (m = integral of dmu/s) when m is finite, one atom at each zero y of
s_mu in a support gap with mass 1/(y s'_mu(y)), and a.c. density
f_mu(x) / (x (H_mu(x)^2 + pi^2 f_mu(x)^2)) on the support.  Its total mass
is the mean rate, integral of s dmu(s).
"""

import math
import warnings
from functools import lru_cache

import numpy as np
from scipy.linalg import expm
from scipy.signal import fftconvolve

from .errors import ValidationError, ConsistencyError
from .measure import MixtureMeasure, Atom, DensityPiece, DOMAIN_HALFLINE
from .quadrature import bisect_root, segment_integral
from .stieltjes import stieltjes_real, stieltjes_derivative, hilbert_offset
from .involution import SpectralMeasure

_ROOT_TOL = 1e-13


def interarrival_density(mu, x):
    """f(x) = integral of s e^{-sx} dmu(s), for x > 0."""
    if not x > 0.0:
        raise ValidationError("the inter-arrival density needs x > 0")
    total = sum(a.mass * a.location * math.exp(-a.location * x)
                for a in mu.atoms)
    for p in mu.pieces:
        total += p.integral(g=lambda s: s * math.exp(-s * x))
    return total


def _gaps_halfline(mu):
    """Open gaps between consecutive support components on (0, inf)."""
    edges = []
    for a in mu.atoms:
        edges.append((a.location, a.location))
    for p in mu.pieces:
        edges.append((p.lo, p.hi))
    edges.sort()
    gaps = []
    cursor = None
    for lo, hi in edges:
        if cursor is not None and lo > cursor:
            gaps.append((cursor, lo))
        cursor = hi if cursor is None else max(cursor, hi)
    return gaps


def _s_at_gap_edge(mu, w):
    if mu.atom_at(w) is not None:
        return None  # pole; sign is forced by the side, handled by caller
    return stieltjes_real(mu, w)


def _continuous_piece(mu, p):
    """A.c. piece of nu over the support piece p of mu."""
    lo_is_zero = (p.lo == 0.0)

    def value(x, f, h):
        denom = x * (h * h + math.pi * math.pi * f * f)
        return f / denom if denom != 0.0 else 0.0

    @lru_cache(maxsize=None)
    def dens(x):
        return value(x, p.density(x), hilbert_offset(mu, x, 0.0))

    @lru_cache(maxsize=None)
    def dens_from_lo(d):
        return value(p.lo + d, p.density_from_lo(d),
                     hilbert_offset(mu, p.lo, d))

    @lru_cache(maxsize=None)
    def dens_from_hi(d):
        return value(p.hi - d, p.density_from_hi(d),
                     hilbert_offset(mu, p.hi, -d))

    def edge(p_exp, at_origin):
        if p_exp > 0.0:
            return (1.0 - p_exp, False) if at_origin else (-p_exp, False)
        if p_exp == 0.0:
            return (0.0, True) if at_origin else (0.0, False)
        return (1.0 + p_exp, False) if at_origin else (p_exp, False)

    sing_lo, soft_lo = edge(p.sing_lo, lo_is_zero)
    sing_hi, soft_hi = edge(p.sing_hi, False)
    return DensityPiece(p.lo, p.hi, dens,
                        sing_lo=sing_lo, sing_hi=sing_hi,
                        soft_lo=soft_lo, soft_hi=soft_hi,
                        density_from_lo=dens_from_lo,
                        density_from_hi=dens_from_hi)


def nu_continuous(mu, mass_tol=1e-6):
    """The measure nu with (1 + s_nu(z)) s_mu(z) = -1/z."""
    if mu.domain != DOMAIN_HALFLINE:
        raise ValidationError("nu_continuous requires the half-line domain")
    if mu.atom_at(0.0) is not None:
        raise ValidationError("rate measures cannot charge 0")
    mean_rate = mu.moment(1)
    if not math.isfinite(mean_rate):
        raise ValidationError("mean rate must be finite")

    atoms = []
    m = mu.weighted_integral("inv_x")  # = s_mu(0) = mean inter-arrival time
    if math.isfinite(m):
        atoms.append(Atom(0.0, 1.0 / m))
    for wl, wr in _gaps_halfline(mu):
        # s_mu is strictly increasing on each gap, -inf at the left edge
        # (support just below), +inf at the right edge, so the zero exists
        # unless a finite edge value forbids it.
        g_left = _s_at_gap_edge(mu, wl)
        if g_left is None:
            g_left = -math.inf
        g_right = _s_at_gap_edge(mu, wr)
        if g_right is None:
            g_right = math.inf
        if not (g_left < 0.0 < g_right):
            continue
        width = wr - wl
        lo, hi = wl + 1e-9 * width, wr - 1e-9 * width
        y = bisect_root(lambda w: stieltjes_real(mu, w), lo, hi,
                        tol=_ROOT_TOL)
        sp = stieltjes_derivative(mu, y)
        mass = 1.0 / (y * sp)
        if not mass > 0.0:
            raise ConsistencyError("non-positive residue mass at %r" % (y,))
        atoms.append(Atom(y, mass))
    pieces = [_continuous_piece(mu, p) for p in mu.pieces]
    nu = SpectralMeasure(atoms, pieces, provenance="continuous",
                         domain=DOMAIN_HALFLINE)
    mass = nu.total_mass()
    if abs(mass - mean_rate) > mass_tol:
        raise ConsistencyError("nu mass %.12g != mean rate %.12g"
                               % (mass, mean_rate))
    return nu


def intensity(mu, x, nu=None):
    """Renewal intensity H(x) = integral of e^{-xs} dnu(s)."""
    if not x > 0.0:
        raise ValidationError("intensity needs x > 0")
    if nu is None:
        nu = nu_continuous(mu)
    return nu.exp_moment(x)


def intensity_oracle(mu, x, k_max, grid_step=5e-4, warn_tol=1e-6):
    """Truncated series sum_{k=1..k_max} f^{*k}(x), independently of nu.

    Atomic mu: exact phase-type evaluation.  The process that runs through
    k_max renewal stages, picking an exponential rate from mu at each stage,
    is a Markov chain on (stage, rate) states; the truncated intensity is
    the total completion flux at time x, read off one matrix exponential.

    A.c. mu: trapezoid-grid convolutions with a Richardson step-halving
    check; disagreement beyond warn_tol emits a warning.
    """
    if k_max < 1:
        raise ValidationError("k_max must be >= 1")
    if not x > 0.0:
        raise ValidationError("x must be positive")
    if not mu.pieces:
        return _oracle_atomic(mu, x, k_max, warn_tol)
    return _oracle_grid(mu, x, k_max, grid_step, warn_tol)


def _oracle_atomic(mu, x, k_max, warn_tol):
    rates = np.array([a.location for a in mu.atoms])
    weights = np.array([a.mass for a in mu.atoms])
    n = len(rates)
    dim = n * k_max
    q = np.zeros((dim, dim))
    for k in range(k_max):
        for i in range(n):
            idx = k * n + i
            q[idx, idx] = -rates[i]
            if k + 1 < k_max:
                for j in range(n):
                    q[idx, (k + 1) * n + j] = rates[i] * weights[j]
    p0 = np.zeros(dim)
    p0[:n] = weights
    pt = p0 @ expm(q * x)
    flux = float(np.dot(pt, np.tile(rates, k_max)))
    # Tail estimate: flux through the last stage bounds what truncation drops.
    last = float(np.dot(pt[-n:], rates))
    if last > warn_tol:
        warnings.warn("intensity oracle truncation tail ~ %.3g exceeds "
                      "%.3g" % (last, warn_tol), UserWarning, stacklevel=3)
    return flux


def _oracle_grid(mu, x, k_max, h, warn_tol):
    def run(step):
        grid = np.arange(0.0, 4.0 * x + step, step)
        f = _density_on_grid(mu, grid)
        n = len(f)
        total = np.zeros_like(f)
        conv = f.copy()
        idx = int(round(x / step))
        for _ in range(k_max):
            total += conv
            # trapezoid-rule convolution: rectangle sum minus edge halves
            conv = step * (fftconvolve(conv, f)[:n]
                           - 0.5 * conv[0] * f - 0.5 * f[0] * conv)
        return total[idx]

    coarse = run(h)
    fine = run(h / 2.0)
    if abs(fine - coarse) > warn_tol:
        warnings.warn("intensity oracle grid check: |h - h/2| = %.3g "
                      "exceeds %.3g" % (abs(fine - coarse), warn_tol),
                      UserWarning, stacklevel=3)
    return float(fine)


def _density_on_grid(mu, grid):
    """f(x_i) = integral of s e^{-s x_i} dmu(s), vectorized over the grid
    with fixed Gauss-Legendre nodes per piece (smooth pieces only)."""
    f = np.zeros_like(grid)
    for a in mu.atoms:
        f += a.mass * a.location * np.exp(-a.location * grid)
    nodes, w = np.polynomial.legendre.leggauss(200)
    for p in mu.pieces:
        mid, half = 0.5 * (p.lo + p.hi), 0.5 * (p.hi - p.lo)
        s = mid + half * nodes
        dens = np.array([p.density(si) for si in s]) * w * half
        f += (dens * s) @ np.exp(-np.outer(s, grid))
    return f
