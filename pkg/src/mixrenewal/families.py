"""Named density families and the serialized measure format.

A serialized measure is a JSON object:

    {"domain": "unit" | "halfline",
     "atoms":  [{"x": 0.25, "mass": 0.5}, ...],
     "pieces": [{"lo": 0.0, "hi": 1.0, "family": "arcsine",
                 "params": {"v": 0.5}}, ...]}

Families (each supports an optional "weight" parameter, default 1, giving
the total mass of the piece):

* uniform                      — constant density
* beta   {"a": ..., "b": ...}  — Beta(a, b) rescaled to [lo, hi]
* arcsine {"v": ...}           — Beta(1-v, v) rescaled to [lo, hi]
* piecewise_poly {"coeffs": [...]} — density sum c_k t^k, t = (x-lo)/(hi-lo),
  in which case "weight" must be absent (the coefficients set the mass)
"""

import math

from scipy.special import betaln

from .errors import ValidationError
from .measure import MixtureMeasure, Atom, DensityPiece

FAMILIES = ("uniform", "beta", "arcsine", "piecewise_poly")


def uniform_piece(lo, hi, weight=1.0):
    height = weight / (hi - lo)
    return DensityPiece(lo, hi, lambda x: height)


def beta_piece(lo, hi, a, b, weight=1.0):
    """Beta(a, b) density rescaled from [0,1] to [lo, hi], total mass
    `weight`.  Endpoint exponents are 1-a and 1-b (negative for a, b > 1)."""
    if not (a > 0.0 and b > 0.0):
        raise ValidationError("beta parameters must be positive")
    width = hi - lo
    norm = weight / (math.exp(betaln(a, b)) * width)

    def from_t(t):
        if t <= 0.0 or t >= 1.0:
            # limits for the bounded-exponent cases; singular ends are
            # evaluated through the distance forms below
            if t <= 0.0:
                return norm if a == 1.0 else (0.0 if a > 1.0 else math.inf)
            return norm if b == 1.0 else (0.0 if b > 1.0 else math.inf)
        return norm * t ** (a - 1.0) * (1.0 - t) ** (b - 1.0)

    return DensityPiece(
        lo, hi, lambda x: from_t((x - lo) / width),
        sing_lo=1.0 - a, sing_hi=1.0 - b,
        density_from_lo=lambda d: norm * (d / width) ** (a - 1.0)
        * (1.0 - d / width) ** (b - 1.0),
        density_from_hi=lambda d: norm * (1.0 - d / width) ** (a - 1.0)
        * (d / width) ** (b - 1.0))


def arcsine_piece(lo, hi, v, weight=1.0):
    if not 0.0 < v < 1.0:
        raise ValidationError("arcsine parameter v must lie in (0, 1)")
    return beta_piece(lo, hi, 1.0 - v, v, weight=weight)


def piecewise_poly_piece(lo, hi, coeffs, weight=None):
    """Polynomial density in the rescaled coordinate t = (x-lo)/(hi-lo);
    with `weight` set, coefficients are rescaled to that total mass."""
    coeffs = [float(c) for c in coeffs]
    if not coeffs:
        raise ValidationError("piecewise_poly needs coefficients")
    width = hi - lo
    if weight is not None:
        raw_mass = width * sum(c / (i + 1.0) for i, c in enumerate(coeffs))
        if raw_mass <= 0.0:
            raise ValidationError("piecewise_poly mass must be positive")
        coeffs = [c * weight / raw_mass for c in coeffs]

    def dens(x):
        t = (x - lo) / width
        val = 0.0
        for c in reversed(coeffs):
            val = val * t + c
        return val

    for i in range(201):  # densities must be nonnegative
        if dens(lo + width * i / 200.0) < -1e-12:
            raise ValidationError("piecewise_poly density is negative")
    return DensityPiece(lo, hi, dens)


def piece_from_spec(d):
    """Build a DensityPiece from one serialized piece object."""
    try:
        lo, hi = float(d["lo"]), float(d["hi"])
        family = d["family"]
        params = dict(d.get("params", {}))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError("malformed piece spec: %s" % (exc,))
    if family not in FAMILIES:
        raise ValidationError("unknown density family %r" % (family,))
    try:
        if family == "uniform":
            return uniform_piece(lo, hi, weight=float(params.pop("weight", 1.0)))
        if family == "beta":
            return beta_piece(lo, hi, float(params.pop("a")),
                              float(params.pop("b")),
                              weight=float(params.pop("weight", 1.0)))
        if family == "arcsine":
            return arcsine_piece(lo, hi, float(params.pop("v")),
                                 weight=float(params.pop("weight", 1.0)))
        weight = params.pop("weight", None)
        return piecewise_poly_piece(lo, hi, params.pop("coeffs"),
                                    weight=None if weight is None
                                    else float(weight))
    except KeyError as exc:
        raise ValidationError("missing family parameter: %s" % (exc,))


def measure_from_spec(spec, probability=True):
    """Build a MixtureMeasure from a deserialized measure object."""
    if not isinstance(spec, dict):
        raise ValidationError("measure spec must be an object")
    domain = spec.get("domain", "unit")
    atoms = [Atom(float(a["x"]), float(a["mass"]))
             for a in spec.get("atoms", [])]
    pieces = [piece_from_spec(p) for p in spec.get("pieces", [])]
    if not atoms and not pieces:
        raise ValidationError("empty measure")
    return MixtureMeasure(atoms, pieces, domain=domain,
                          probability=probability)
