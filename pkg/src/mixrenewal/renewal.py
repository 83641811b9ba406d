"""Renewal probabilities, convolution oracles, and tilted laws.

The spectral route computes P(N in tau) as a single moment of the measure
nu = involute(mu) — O(1) quadratures per N — and is cross-checked against
the O(N^2) renewal recursion u_N = sum K(n) u_{N-n}.

Exponential tilting (`tilted_law`, `nu_tilted`) replaces K by
K_b(n) = K(n) e^{-nb} / c(b); the tilted renewal probabilities approach
1/m_{K_b} at rate e^{-bN}, and `decay_rate` extracts that rate.
"""

import math

import numpy as np

from .errors import ValidationError, DomainError
from .measure import MixtureMeasure, DOMAIN_UNIT, scale_pushforward
from .involution import involute, build_spectral, SpectralMeasure


def renewal_probability(mu, n, nu=None):
    """P(N in tau) = N-th moment of the spectral measure."""
    if nu is None:
        nu = involute(mu)
    return nu.moment(n)


def renewal_oracle(mu, n_max):
    """u_0..u_{n_max} by the renewal recursion u_N = sum K(n) u_{N-n}."""
    if n_max < 0:
        raise ValidationError("n_max must be nonnegative")
    k = np.array([0.0] + [mu.geometric_mixture_pmf(n)
                          for n in range(1, n_max + 1)])
    u = np.zeros(n_max + 1)
    u[0] = 1.0
    for n in range(1, n_max + 1):
        u[n] = float(np.dot(k[1:n + 1], u[n - 1::-1]))
    return u


def renewal_limit(mu):
    """Long-run renewal density 1/m_K (0 when the mean is infinite)."""
    m_k = mu.mean_interarrival()
    return 0.0 if math.isinf(m_k) else 1.0 / m_k


class RenewalLaw:
    """Inter-arrival law K (optionally tilted: K_b(n) = K(n)e^{-nb}/c(b))."""

    __slots__ = ("base", "tilt_b", "normalizer", "mean")

    def __init__(self, base, tilt_b, normalizer, mean):
        sset = object.__setattr__
        sset(self, "base", base)
        sset(self, "tilt_b", float(tilt_b))
        sset(self, "normalizer", float(normalizer))
        sset(self, "mean", mean)

    def __setattr__(self, *args):
        raise AttributeError("RenewalLaw is immutable")

    def pmf(self, n):
        if self.tilt_b == 0.0:
            return self.base.geometric_mixture_pmf(n)
        return (self.base.geometric_mixture_pmf(n)
                * math.exp(-n * self.tilt_b) / self.normalizer)

    def __repr__(self):
        return ("RenewalLaw(b=%g, c=%.12g, mean=%r)"
                % (self.tilt_b, self.normalizer, self.mean))


def _tilt_normalizer(mu, b):
    """c(b) = sum_n K(n) e^{-nb}, summed in closed form:
    integral of x e^{-b} / (1 - e^{-b}(1-x)) dmu(x)."""
    q = math.exp(-b)
    total = 0.0
    for a in mu.atoms:
        x = a.location
        total += a.mass * x * q / (1.0 - q * (1.0 - x))
    for p in mu.pieces:
        g = lambda x: x * q / (1.0 - q * (1.0 - x))
        total += p.integral(g=g)
    return total


def _tilt_mean(mu, b, c):
    """m_{K_b} = sum_n n K(n) e^{-nb} / c(b); the series is the q-derivative
    of the normalizer at q = e^{-b}:
    integral of x q / (1 - q(1-x))^2 dmu(x) / c."""
    q = math.exp(-b)
    total = 0.0
    for a in mu.atoms:
        x = a.location
        total += a.mass * x * q / (1.0 - q * (1.0 - x)) ** 2
    for p in mu.pieces:
        g = lambda x: x * q / (1.0 - q * (1.0 - x)) ** 2
        total += p.integral(g=g)
    return total / c


def tilted_law(mu, b):
    """The tilted law K_b with its normalizer c(b) and mean m_{K_b}."""
    if mu.domain != DOMAIN_UNIT:
        raise ValidationError("tilted law requires the unit domain")
    if not b > 0.0:
        raise ValidationError("tilt parameter b must be positive")
    c = _tilt_normalizer(mu, b)
    mean = _tilt_mean(mu, b, c)
    return RenewalLaw(mu, b, c, mean)


def nu_tilted(mu, b, mass_tol=1e-6):
    """Spectral measure of the tilted renewal process.

    The tilted renewal probabilities are e^{-Nb} Z_{N,beta} with
    beta = -log c(b), so nu_b is the pushforward of nu_beta under
    x -> x e^{-b}; the supercritical atom of nu_beta sits exactly at
    x_beta = e^b (because F(beta) = b by construction) and lands at 1,
    where its mass equals 1/m_{K_b}."""
    law = tilted_law(mu, b)
    beta = -math.log(law.normalizer)
    nub = build_spectral(mu, beta=beta, provenance="tilted",
                         mass_tol=mass_tol)
    factor = math.exp(-b)
    atoms, pieces = scale_pushforward(nub, factor,
                                      snap_atoms=((1.0, 1.0),))
    return SpectralMeasure(atoms, pieces, provenance="tilted")


def decay_rate(mu, b, n_lo=None, n_hi=200):
    """Least-squares slope of N -> log(P(N in tau(b)) - 1/m_{K_b}).

    The difference is evaluated directly as the N-th moment of nu_b with
    its atom at 1 removed, which keeps it accurate in relative terms far
    below the double-precision floor of a subtraction."""
    if n_lo is None:
        n_lo = max(1, n_hi // 4)
    if not n_lo < n_hi:
        raise ValidationError("need n_lo < n_hi")
    nub = nu_tilted(mu, b)
    if nub.atom_at(1.0) is None:
        raise DomainError("tilted spectral measure has no atom at 1")
    transient = nub.restricted(drop_atom_at=1.0)
    ns, logs = [], []
    for n in range(n_lo, n_hi + 1):
        diff = transient.moment(n, abs_tol=1e-280, rel_tol=1e-10)
        if diff > 0.0:
            ns.append(float(n))
            logs.append(math.log(diff))
    if len(ns) < 2:
        raise DomainError("no positive differences in the window; "
                          "try a smaller n_hi")
    slope = np.polyfit(np.array(ns), np.array(logs), 1)[0]
    return float(slope)
