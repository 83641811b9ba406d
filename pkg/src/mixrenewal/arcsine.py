"""Closed forms for the generalized Arcsine (Beta(1-v, v)) family.

The measure mu_v with density (sin(pi v)/pi) x^{-v} (1-x)^{v-1} on (0,1)
is a fixed point of the spectral involution, and the whole pinned-polymer
picture is explicit for it: inter-arrival probabilities, boundary Stieltjes
values, the pinned measure nu_{v,beta}, the free energy, and the beta = 0
partition function all have closed forms.  These are the golden values the
numerical modules are tested against.
"""

import cmath
import math

from scipy.special import gammaln

from .errors import ValidationError
from .measure import MixtureMeasure, Atom, DensityPiece, DOMAIN_UNIT
from .stieltjes import BoundaryValue
from .involution import SpectralMeasure


def _check_v(v):
    if not 0.0 < v < 1.0:
        raise ValidationError("arcsine parameter v must lie in (0, 1)")


def mu_v(v):
    """The generalized Arcsine law: Beta(1-v, v) on [0, 1]."""
    _check_v(v)
    c = math.sin(math.pi * v) / math.pi

    def dens(x):
        return c * x ** (-v) * (1.0 - x) ** (v - 1.0)

    piece = DensityPiece(
        0.0, 1.0, dens, sing_lo=v, sing_hi=1.0 - v,
        density_from_lo=lambda d: c * d ** (-v) * (1.0 - d) ** (v - 1.0),
        density_from_hi=lambda d: c * (1.0 - d) ** (-v) * d ** (v - 1.0))
    return MixtureMeasure(pieces=[piece], domain=DOMAIN_UNIT,
                          probability=True)


def K_v_pmf(v, n):
    """Inter-arrival probability K_v(n) =
    (sin(pi v)/pi) Gamma(n+v-1) Gamma(2-v) / Gamma(n+1)."""
    _check_v(v)
    if n < 1 or n != int(n):
        raise ValidationError("pmf index must be a positive integer")
    n = int(n)
    return (math.sin(math.pi * v) / math.pi
            * math.exp(gammaln(n + v - 1.0) + gammaln(2.0 - v)
                       - gammaln(n + 1.0)))


def stieltjes_mu_v_closed(v, z):
    """Closed-form s_{mu_v}(z) = e^{i pi v} (1-z)^{-1} (z/(1-z))^{-v},
    with the principal branch; valid off [0, 1]."""
    _check_v(v)
    z = complex(z)
    w = z / (1.0 - z)
    return cmath.exp(1j * math.pi * v) / (1.0 - z) * w ** (-v)


def stieltjes_mu_v_real(v, w):
    """Real branch of s_{mu_v} at w outside [0, 1]:
    (1/(1-w)) |w/(1-w)|^{-v} (positive below the support, negative above)."""
    _check_v(v)
    if 0.0 <= w <= 1.0:
        raise ValidationError("real closed form needs w outside [0, 1]")
    return abs(w / (1.0 - w)) ** (-v) / (1.0 - w)


def stieltjes_mu_v_boundary(v, x):
    """Boundary value of s_{mu_v} from above at x in (0, 1):
    H = cos(pi v) x^{-v} (1-x)^{v-1} and the Arcsine density itself."""
    _check_v(v)
    if not 0.0 < x < 1.0:
        raise ValidationError("boundary value needs x in (0, 1)")
    shape = x ** (-v) * (1.0 - x) ** (v - 1.0)
    return BoundaryValue(math.cos(math.pi * v) * shape,
                         math.sin(math.pi * v) / math.pi * shape)


def gamma_v_beta(v, beta):
    """gamma_{v,beta} = (1 - e^{-beta})^{1/(1-v)}, for beta > 0."""
    _check_v(v)
    if not beta > 0.0:
        raise ValidationError("gamma_{v,beta} needs beta > 0")
    return (-math.expm1(-beta)) ** (1.0 / (1.0 - v))


class ArcsineParams:
    """Atom data of nu_{v,beta} in the localized phase."""

    __slots__ = ("v", "beta", "gamma", "x_atom", "c_atom")

    def __init__(self, v, beta):
        _check_v(v)
        sset = object.__setattr__
        sset(self, "v", float(v))
        sset(self, "beta", float(beta))
        if beta > 0.0:
            g = gamma_v_beta(v, beta)
            sset(self, "gamma", g)
            sset(self, "x_atom", 1.0 / (1.0 - g))
            sset(self, "c_atom",
                 math.exp(-beta) / (1.0 - v) * g ** v / (1.0 - g))
        else:
            sset(self, "gamma", 0.0)
            sset(self, "x_atom", 1.0)
            sset(self, "c_atom", 0.0)

    def __setattr__(self, *args):
        raise AttributeError("ArcsineParams is immutable")


def free_energy_arcsine(v, beta):
    """F(beta) for the Arcsine pinning model: log(1/(1 - gamma)) above 0."""
    _check_v(v)
    if beta <= 0.0:
        return 0.0
    return -math.log1p(-gamma_v_beta(v, beta))


def nu_v_beta(v, beta):
    """Closed-form pinned spectral measure nu_{v,beta}."""
    _check_v(v)
    eb = math.exp(beta)
    sv = math.sin(math.pi * v)
    cv = math.cos(math.pi * v)
    one = 1.0 - eb

    def shape(x, omx):
        a = x ** (1.0 - v)
        bq = omx ** (1.0 - v)
        denom = (one * one * a * a - 2.0 * eb * one * cv * a * bq
                 + eb * eb * bq * bq)
        return sv / math.pi * eb * a * bq / (x * denom)

    piece = DensityPiece(
        0.0, 1.0, lambda x: shape(x, 1.0 - x),
        sing_lo=v,
        sing_hi=(1.0 - v if beta == 0.0 else v - 1.0),
        density_from_lo=lambda d: shape(d, 1.0 - d),
        density_from_hi=lambda d: shape(1.0 - d, d))
    atoms = []
    if beta > 0.0:
        params = ArcsineParams(v, beta)
        atoms.append(Atom(params.x_atom, params.c_atom))
    return SpectralMeasure(atoms, [piece], provenance="polymer")


def partition_exact_beta0(v, n):
    """Z_{N,0} = Gamma(N+1-v) / (Gamma(1-v) Gamma(N+1)), exact in logs."""
    _check_v(v)
    if n < 0 or n != int(n):
        raise ValidationError("N must be a nonnegative integer")
    n = int(n)
    return math.exp(gammaln(n + 1.0 - v) - gammaln(1.0 - v)
                    - gammaln(n + 1.0))


def nu_half_beta(beta):
    """The v = 1/2 pinned measure in its dedicated closed form:
    density e^beta sqrt(x(1-x)) / (pi x (x (1 - 2 e^beta) + e^{2 beta}))
    plus, for beta > 0, an atom at e^{2 beta}/(2 e^beta - 1) of mass
    (2 e^beta - 2)/(2 e^beta - 1)."""
    eb = math.exp(beta)

    def shape(x, omx):
        return (eb * math.sqrt(x * omx)
                / (math.pi * x * (x * (1.0 - 2.0 * eb) + eb * eb)))

    piece = DensityPiece(
        0.0, 1.0, lambda x: shape(x, 1.0 - x),
        sing_lo=0.5,
        sing_hi=(0.5 if beta == 0.0 else -0.5),
        density_from_lo=lambda d: shape(d, 1.0 - d),
        density_from_hi=lambda d: shape(1.0 - d, d))
    atoms = []
    if beta > 0.0:
        atoms.append(Atom(eb * eb / (2.0 * eb - 1.0),
                          (2.0 * eb - 2.0) / (2.0 * eb - 1.0)))
    return SpectralMeasure(atoms, [piece], provenance="polymer")
