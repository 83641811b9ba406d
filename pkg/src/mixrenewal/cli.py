"""Command-line front end.

Measure specifications come in as JSON (a file path or ``-`` for stdin):

    {"domain": "unit",
     "atoms":  [{"x": 0.25, "mass": 0.5}],
     "pieces": [{"lo": 0.0, "hi": 1.0, "family": "beta",
                 "params": {"a": 2.0, "b": 3.0, "weight": 0.5}}]}

Families: uniform, beta(a, b), arcsine(v), piecewise_poly(coeffs); every
piece takes an optional ``weight`` (its total mass).  Results go to stdout
as CSV by default, or as JSON with ``--json``; all numbers are printed
with 15 significant digits and JSON keys are sorted, so identical inputs
produce byte-identical output.

Exit codes: 0 success, 2 usage/parse error, 3 numeric consistency error,
4 precision floor reached.  The environment variable RENEWAL_TOL (a
float) overrides the internal consistency tolerance (the allowed deviation
of constructed spectral masses from their exact totals).
"""

import argparse
import json
import math
import os
import sys

from .errors import (MixRenewalError, ValidationError, DomainError,
                     ConsistencyError)
from .families import measure_from_spec
from .involution import involute, build_spectral
from .renewal import renewal_oracle, decay_rate
from .polymer import PolymerState
from .expmix import nu_continuous, intensity
from .arcsine import (mu_v, gamma_v_beta, free_energy_arcsine,
                      partition_exact_beta0, nu_v_beta)
from . import acceptance


# ---------------------------------------------------------------------------
# Deterministic formatting.
# ---------------------------------------------------------------------------

def _fmt(value):
    """15-significant-digit rendering of a number."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return "nan"
        return format(value, ".15g")
    raise TypeError("unsupported scalar %r" % (value,))


def _to_json(obj):
    """JSON with sorted keys and fixed numeric formatting."""
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (bool, int, float)):
        text = _fmt(obj)
        return json.dumps(text) if text in ("inf", "-inf", "nan") else text
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_to_json(v) for v in obj) + "]"
    if isinstance(obj, dict):
        items = sorted(obj.items())
        return "{" + ", ".join('%s: %s' % (json.dumps(k), _to_json(v))
                               for k, v in items) + "}"
    raise TypeError("unsupported JSON value %r" % (obj,))


def _print_json(obj):
    sys.stdout.write(_to_json(obj) + "\n")


def _print_csv(header, rows, preamble=()):
    out = sys.stdout
    for key, value in preamble:
        out.write("# %s = %s\n" % (key, _fmt(value)))
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(_fmt(v) for v in row) + "\n")


# ---------------------------------------------------------------------------
# Input plumbing.
# ---------------------------------------------------------------------------

def _load_spec(path):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r") as handle:
                text = handle.read()
    except OSError as exc:
        raise ValidationError("cannot read spec: %s" % (exc,))
    try:
        data = json.loads(text)
    except ValueError as exc:
        raise ValidationError("spec is not valid JSON: %s" % (exc,))
    return measure_from_spec(data)


def _mass_tol():
    raw = os.environ.get("RENEWAL_TOL")
    if raw is None:
        return 1e-6
    try:
        tol = float(raw)
    except ValueError:
        raise ValidationError("RENEWAL_TOL must be a float, got %r" % (raw,))
    if tol <= 0.0:
        raise ValidationError("RENEWAL_TOL must be positive")
    return tol


def _grid_arg(text):
    try:
        lo, hi, count = text.split(":")
        lo, hi, count = float(lo), float(hi), int(count)
    except ValueError:
        raise ValidationError("grid must look like LO:HI:COUNT, got %r"
                              % (text,))
    if count < 1 or not hi > lo:
        raise ValidationError("grid needs LO < HI and COUNT >= 1")
    return lo, hi, count


# ---------------------------------------------------------------------------
# Commands.
# ---------------------------------------------------------------------------

def cmd_involute(args):
    mu = _load_spec(args.spec)
    nu = involute(mu, mass_tol=_mass_tol())
    back = involute(nu, mass_tol=_mass_tol())

    grid = [(i + 0.5) / args.grid for i in range(args.grid)]
    samples = []
    for x in grid:
        p = nu.piece_containing(x)
        samples.append([x, 0.0 if p is None else p.density(x)])

    residual = 0.0
    if len(back.atoms) != len(mu.atoms):
        residual = math.inf
    else:
        for a, b in zip(mu.atoms, back.atoms):
            residual = max(residual, abs(a.location - b.location),
                           abs(a.mass - b.mass))
    for x in grid:
        p0 = mu.piece_containing(x)
        p1 = back.piece_containing(x)
        f0 = 0.0 if p0 is None else p0.density(x)
        f1 = 0.0 if p1 is None else p1.density(x)
        residual = max(residual, abs(f1 - f0))

    # exploratory probe: sup distance between nu and mu itself (zero only
    # for fixed points of the map, e.g. the Beta(1-v, v) family)
    fixed_dist = 0.0
    mu_atoms = {a.location: a.mass for a in mu.atoms}
    nu_atoms = {a.location: a.mass for a in nu.atoms}
    for loc in set(mu_atoms) | set(nu_atoms):
        fixed_dist = max(fixed_dist, abs(mu_atoms.get(loc, 0.0)
                                         - nu_atoms.get(loc, 0.0)))
    for x, f_nu in samples:
        p0 = mu.piece_containing(x)
        f0 = 0.0 if p0 is None else p0.density(x)
        fixed_dist = max(fixed_dist, abs(f_nu - f0))

    _print_json({
        "atoms": [[a.location, a.mass] for a in nu.atoms],
        "density_samples": samples,
        "total_mass": nu.total_mass(),
        "roundtrip_residual": residual,
        "fixed_point_distance": fixed_dist,
    })
    return 0


def cmd_renewal(args):
    mu = _load_spec(args.spec)
    nu = involute(mu, mass_tol=_mass_tol())
    probs = [nu.moment(n) for n in range(args.n_max + 1)]
    if args.oracle:
        oracle = renewal_oracle(mu, args.n_max)
        rows = [[n, probs[n], oracle[n], abs(probs[n] - oracle[n])]
                for n in range(args.n_max + 1)]
        header = ["N", "p_moment", "p_oracle", "abs_diff"]
    else:
        rows = [[n, probs[n]] for n in range(args.n_max + 1)]
        header = ["N", "p_moment"]
    if args.json:
        _print_json({"rows": [dict(zip(header, row)) for row in rows]})
    else:
        _print_csv(header, rows)
    return 0


def cmd_polymer(args):
    mu = _load_spec(args.spec)
    state = PolymerState(mu, args.beta, mass_tol=_mass_tol())
    summary = [
        ("beta", args.beta),
        ("beta_c", state.beta_c),
        ("free_energy", state.free_energy),
        ("contact_fraction", state.contact_fraction),
        ("x_beta", state.x_beta),
    ]
    rows = [[n, state.partition_function(n)]
            for n in range(args.n_max + 1)]
    if args.json:
        _print_json({**dict(summary),
                     "partition": [{"N": n, "Z": z} for n, z in rows]})
    else:
        _print_csv(["N", "Z"], rows, preamble=summary)
    return 0


def cmd_corrlen(args):
    mu = _load_spec(args.spec)
    n_lo, n_hi = args.window if args.window else (None, 200)
    slope = decay_rate(mu, args.b, n_lo=n_lo, n_hi=n_hi)
    n_lo = n_lo if n_lo is not None else max(1, n_hi // 4)
    if args.json:
        _print_json({"b": args.b, "n_lo": n_lo, "n_hi": n_hi,
                     "slope": slope})
    else:
        _print_csv(["b", "n_lo", "n_hi", "slope"],
                   [[args.b, n_lo, n_hi, slope]])
    return 0


def cmd_continuous(args):
    mu = _load_spec(args.spec)
    lo, hi, count = _grid_arg(args.x_grid)
    nu = nu_continuous(mu, mass_tol=_mass_tol())
    rows = []
    for i in range(count):
        x = lo + (hi - lo) * i / max(count - 1, 1)
        rows.append([x, intensity(mu, x, nu=nu)])
    if args.json:
        _print_json({"rows": [{"x": x, "intensity": u} for x, u in rows]})
    else:
        _print_csv(["x", "intensity"], rows)
    return 0


def cmd_arcsine(args):
    v, beta = args.v, args.beta
    if not 0.0 < v < 1.0:
        raise ValidationError("--v must lie in (0, 1)")
    free = free_energy_arcsine(v, beta)
    if beta > 0.0:
        gamma = gamma_v_beta(v, beta)
        x_atom = 1.0 / (1.0 - gamma)
        nu = nu_v_beta(v, beta)
        contact = nu.atoms[-1].mass
    else:
        gamma, x_atom, contact = 0.0, 1.0, 0.0
    summary = [
        ("v", v),
        ("beta", beta),
        ("beta_c", 0.0),
        ("free_energy", free),
        ("contact_fraction", contact),
        ("x_atom", x_atom),
    ]
    rows = []
    if args.n_max > 0:
        if beta == 0.0:
            rows = [[n, partition_exact_beta0(v, n)]
                    for n in range(args.n_max + 1)]
        else:
            nu = nu_v_beta(v, beta)
            rows = [[n, nu.moment(n)] for n in range(args.n_max + 1)]
    if args.json:
        payload = dict(summary)
        if rows:
            payload["partition"] = [{"N": n, "Z": z} for n, z in rows]
        _print_json(payload)
    elif rows:
        _print_csv(["N", "Z"], rows, preamble=summary)
    else:
        _print_csv(["key", "value"], summary)
    return 0


def cmd_selftest(args):
    numbers = None
    if args.criteria:
        try:
            numbers = {int(tok) for tok in args.criteria.split(",")}
        except ValueError:
            raise ValidationError("--criteria wants comma-separated "
                                  "integers, got %r" % (args.criteria,))
        unknown = numbers - set(range(1, len(acceptance.ALL_CHECKS) + 1))
        if unknown:
            raise ValidationError("unknown criteria: %s" % sorted(unknown))
    results = acceptance.run_all(numbers)
    all_ok = True
    for r in results:
        all_ok &= r.passed
        sys.stdout.write("%2d %-22s %s  %s\n"
                         % (r.number, r.name,
                            "PASS" if r.passed else "FAIL", r.detail))
    sys.stdout.write("selftest: %d/%d passed\n"
                     % (sum(r.passed for r in results), len(results)))
    return 0 if all_ok else 1


# ---------------------------------------------------------------------------
# Parser / entry point.
# ---------------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="mixrenewal",
        description="Renewal and pinning computations for geometric-mixture "
                    "inter-arrival laws.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true",
                       help="emit JSON instead of CSV")
        return p

    p = add("involute", "spectral measure of a renewal law "
                        "(atoms, density samples, roundtrip residual; "
                        "always JSON)")
    p.add_argument("spec", help="measure spec JSON file, or - for stdin")
    p.add_argument("--grid", type=int, default=101,
                   help="number of density sample points in (0, 1) "
                        "(default 101)")

    p = add("renewal", "renewal probabilities P(N in tau) "
                       "(columns: N, p_moment[, p_oracle, abs_diff])")
    p.add_argument("spec")
    p.add_argument("--n-max", type=int, default=50,
                   help="largest N (default 50)")
    p.add_argument("--oracle", action="store_true",
                   help="also run the convolution oracle and report diffs")

    p = add("polymer", "pinning model: beta_c, F(beta), contact fraction, "
                       "x_beta, and partition values Z_N")
    p.add_argument("spec")
    p.add_argument("--beta", type=float, required=True,
                   help="pinning strength")
    p.add_argument("--n-max", type=int, default=50,
                   help="largest N for Z_N rows (default 50)")

    p = add("corrlen", "correlation-length slope of the tilted renewal "
                       "law (columns: b, n_lo, n_hi, slope)")
    p.add_argument("spec")
    p.add_argument("--b", type=float, required=True, help="tilt parameter")
    p.add_argument("--window", type=int, nargs=2, metavar=("N_LO", "N_HI"),
                   help="fit window (default: N_HI=200, N_LO=N_HI//4)")

    p = add("continuous", "renewal intensity for an exponential-mixture "
                          "law on the half-line (columns: x, intensity)")
    p.add_argument("spec")
    p.add_argument("--x-grid", default="0.1:5:50",
                   help="evaluation grid LO:HI:COUNT (default 0.1:5:50)")

    p = add("arcsine", "closed-form Beta(1-v, v) family: free energy, "
                       "contact fraction, atom location, optional Z_N rows")
    p.add_argument("--v", type=float, required=True,
                   help="arcsine parameter in (0, 1)")
    p.add_argument("--beta", type=float, default=0.0,
                   help="pinning strength (default 0)")
    p.add_argument("--n-max", type=int, default=0,
                   help="emit Z_N rows up to this N (default: none)")

    p = add("selftest", "run the numbered end-to-end checks; exit 0 iff "
                        "all pass")
    p.add_argument("--criteria",
                   help="comma-separated check numbers (default: all)")
    return parser


_COMMANDS = {
    "involute": cmd_involute,
    "renewal": cmd_renewal,
    "polymer": cmd_polymer,
    "corrlen": cmd_corrlen,
    "continuous": cmd_continuous,
    "arcsine": cmd_arcsine,
    "selftest": cmd_selftest,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ValidationError as exc:
        sys.stderr.write("error: %s\n" % (exc,))
        return 2
    except DomainError as exc:
        sys.stderr.write("precision/domain error: %s\n" % (exc,))
        return 4
    except MixRenewalError as exc:  # ConsistencyError and friends
        sys.stderr.write("consistency error: %s\n" % (exc,))
        return 3


if __name__ == "__main__":
    sys.exit(main())
