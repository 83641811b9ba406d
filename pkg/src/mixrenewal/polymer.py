"""Pinning model on a geometric-mixture renewal process.

Each renewal contact is rewarded with weight e^beta; the partition function

    Z_{N,beta} = sum over contact sets of prod e^beta K(gaps)

is the N-th moment of the spectral measure nu_beta built in `involution`.
The free energy F(beta) = lim (1/N) log Z_{N,beta} is log x_beta, where
x_beta > 1 is the location of the supercritical atom of nu_beta; its mass
is F'(beta), the asymptotic contact fraction.
"""

import math

import numpy as np
from scipy.special import logsumexp

from .errors import ValidationError, DomainError
from .measure import DOMAIN_UNIT
from .involution import (build_spectral, _supercritical_root, _root_mass,
                         _CRIT_TOL,
                         involute)


def beta_critical(mu):
    """Depinning threshold -log(1 - mu({0})); 0 for non-defective mu."""
    defect = mu.defect()
    if defect >= 1.0:
        raise DomainError("degenerate model: all mass at 0")
    return -math.log1p(-defect)


def free_energy(mu, beta):
    """F(beta): 0 up to the critical point, else log of the root x_beta."""
    if mu.domain != DOMAIN_UNIT:
        raise ValidationError("free energy requires the unit domain")
    beta_c = beta_critical(mu)
    if beta <= beta_c:
        return 0.0
    eb = math.exp(beta)
    if eb * (1.0 - mu.defect()) - 1.0 <= _CRIT_TOL:
        return 0.0  # numerically at the critical point
    w_root = _supercritical_root(mu, eb)
    x_beta = 1.0 - w_root
    return math.log(x_beta)


def contact_fraction(mu, beta):
    """F'(beta): mass of the nu_beta atom at x_beta; 0 below criticality."""
    beta_c = beta_critical(mu)
    if beta <= beta_c:
        return 0.0
    eb = math.exp(beta)
    if eb * (1.0 - mu.defect()) - 1.0 <= _CRIT_TOL:
        return 0.0
    w_root = _supercritical_root(mu, eb)
    return _root_mass(mu, eb, w_root)


def nu_beta(mu, beta, mass_tol=1e-6):
    """The measure with s_nu_beta(z) (e^b s_mu(1-z) - (1-e^b)/(1-z))
    = 1/(z(1-z)); beta = 0 reduces to the plain spectral measure."""
    if beta == 0.0:
        return involute(mu, mass_tol=mass_tol)
    return build_spectral(mu, beta=beta, provenance="polymer",
                          mass_tol=mass_tol)


def partition_function(mu, beta, n, nu=None, abs_tol=1e-300, rel_tol=1e-10):
    """Z_{N,beta} as the N-th moment of nu_beta."""
    if nu is None:
        nu = nu_beta(mu, beta)
    return nu.moment(n, abs_tol=abs_tol, rel_tol=rel_tol)


def partition_oracle(mu, beta, n_max):
    """Brute-force recursion Z_N = sum_{n<=N} e^beta K(n) Z_{N-n}.

    Switches to a log-space recursion if values overflow past 1e300."""
    if n_max < 0:
        raise ValidationError("n_max must be nonnegative")
    k = np.array([0.0] + [mu.geometric_mixture_pmf(n)
                          for n in range(1, n_max + 1)])
    ebk = math.exp(beta) * k
    z = np.zeros(n_max + 1)
    z[0] = 1.0
    overflow = False
    for n in range(1, n_max + 1):
        z[n] = float(np.dot(ebk[1:n + 1], z[n - 1::-1]))
        if z[n] > 1e300:
            overflow = True
            break
    if not overflow:
        return z
    # Log-space fallback: log Z_N = logsumexp over n of log(e^b K(n)) + log Z.
    with np.errstate(divide="ignore"):
        log_ebk = np.log(ebk)
    log_z = np.full(n_max + 1, -np.inf)
    log_z[0] = 0.0
    for n in range(1, n_max + 1):
        log_z[n] = logsumexp(log_ebk[1:n + 1] + log_z[n - 1::-1])
    return np.exp(log_z)


class PolymerState:
    """Bundle of pinned-polymer quantities at a given beta."""

    __slots__ = ("mu", "beta", "beta_c", "free_energy", "x_beta",
                 "contact_fraction", "nu_beta")

    def __init__(self, mu, beta, mass_tol=1e-6):
        sset = object.__setattr__
        sset(self, "mu", mu)
        sset(self, "beta", float(beta))
        sset(self, "beta_c", beta_critical(mu))
        f = free_energy(mu, beta)
        sset(self, "free_energy", f)
        sset(self, "x_beta", math.exp(f))
        sset(self, "contact_fraction", contact_fraction(mu, beta))
        sset(self, "nu_beta", nu_beta(mu, beta, mass_tol=mass_tol))

    def __setattr__(self, *args):
        raise AttributeError("PolymerState is immutable")

    def partition_function(self, n):
        return partition_function(self.mu, self.beta, n, nu=self.nu_beta)

    def __repr__(self):
        return ("PolymerState(beta=%g, beta_c=%g, F=%.12g, contact=%.12g)"
                % (self.beta, self.beta_c, self.free_energy,
                   self.contact_fraction))
