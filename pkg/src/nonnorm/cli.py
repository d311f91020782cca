"""Command-line interface.

Exit codes: 0 success, 1 a valid but negative answer (the payload carries a
``reasons`` array), 2 usage or internal error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from .construct import find_modulus, generate_table, load_reference_tables, plan_extension, table_csv
from .errors import ArgumentError, NonNormError, SearchExhaustedError, UncertifiedError
from .periods import galois_orbit
from .quadring import parse_quadint
from .stbc import CodeSpec, code_metrics, min_det_bruteforce
from .verify import get_base, verify_entry

SCHEMA = "nonnorm/1"
_JSON_SAFE = 2**53

log = logging.getLogger("nonnorm")


def _safe(obj):
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) >= _JSON_SAFE else obj
    if isinstance(obj, dict):
        return {k: _safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_safe(v) for v in obj]
    return obj


def _emit(payload, out):
    out.write(json.dumps(_safe({"schema": SCHEMA, **payload}), sort_keys=False) + "\n")


def _plan_args(p, need_m=True):
    p.add_argument("--base", required=True, choices=["gaussian", "eisenstein"])
    p.add_argument("-n", type=int, required=True)
    if need_m:
        p.add_argument("-m", type=int, required=True)
    p.add_argument("--json", action="store_true", help="(default) JSON output")


def build_parser():
    parser = argparse.ArgumentParser(prog="nonnorm", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="smallest certified modulus for degree n")
    _plan_args(p, need_m=False)
    p.add_argument("--limit", type=int, default=None)

    p = sub.add_parser("verify", help="certify (n, m)")
    p.add_argument("--base", choices=["gaussian", "eisenstein"])
    p.add_argument("-n", type=int)
    p.add_argument("-m", type=int)
    p.add_argument("--json", action="store_true")
    p.add_argument("--from-json", metavar="PATH", help="read base/n/m from a construct payload ('-' for stdin)")

    p = sub.add_parser("table", help="regenerate a degree table")
    p.add_argument("--base", required=True, choices=["gaussian", "eisenstein"])
    p.add_argument("--from", dest="n_from", type=int, required=True)
    p.add_argument("--to", dest="n_to", type=int, required=True)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--csv", action="store_true")
    fmt.add_argument("--json", action="store_true")
    p.add_argument("--conformance", nargs="?", const="", default=None, metavar="FIXTURE",
                   help="annotate rows against a base,n,modulus CSV (bundled tables if no path)")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("orbit", help="Galois orbit of the primitive element")
    _plan_args(p)

    p = sub.add_parser("metrics", help="energy and normalized diversity product")
    _plan_args(p)
    p.add_argument("--gamma", required=True)
    p.add_argument("--exact", action="store_true", help="require the exact integer energy")
    p.add_argument("--permute", default=None, help="comma-separated row order for the orbit")

    p = sub.add_parser("mindet", help="brute-force minimum determinant")
    _plan_args(p)
    p.add_argument("--gamma", required=True)
    p.add_argument("--radius", type=int, required=True)
    return parser


def _spec(args):
    base = get_base(args.base)
    plan = plan_extension(base, args.n, args.m)
    orbit = galois_orbit(plan)
    if getattr(args, "permute", None):
        orbit = orbit.permuted(int(x) for x in args.permute.split(","))
    gamma = parse_quadint(args.gamma, base.kind)
    return CodeSpec(orbit, gamma, f"{base.name} n={args.n} m={args.m} gamma={gamma}")


def _cmd_construct(args, out):
    plan = find_modulus(args.base, args.n, args.limit)
    _emit({"command": "construct", **plan.to_dict()}, out)
    return 0


def _cmd_verify(args, out):
    if args.from_json:
        fh = sys.stdin if args.from_json == "-" else open(args.from_json)
        with fh:
            doc = json.load(fh)
        args.base, args.n, args.m = doc["base"], int(doc["n"]), int(doc["m"])
    if args.base is None or args.n is None or args.m is None:
        raise ArgumentError("verify needs --base, -n and -m (or --from-json)")
    report = verify_entry(args.base, args.n, args.m)
    _emit({"command": "verify", **report.to_dict()}, out)
    return 0 if report.certified else 1


def _cmd_table(args, out):
    reference = None
    if args.conformance is not None:
        reference = load_reference_tables(args.conformance or None)
    rows = generate_table(args.base, args.n_from, args.n_to, reference, args.limit, args.workers)
    if args.json:
        _emit({"command": "table", "base": args.base, "rows": [r.to_dict() for r in rows]}, out)
    else:
        out.write(table_csv(rows))
    return 0


def _cmd_orbit(args, out):
    plan = plan_extension(args.base, args.n, args.m)
    orbit = galois_orbit(plan)
    _emit({"command": "orbit", **orbit.to_dict()}, out)
    return 0


def _cmd_metrics(args, out):
    spec = _spec(args)
    metrics = code_metrics(spec)
    if args.exact:
        if metrics.energy_exact is None:
            _emit({"E": metrics.energy, "xi": metrics.xi,
                   "reasons": ["orbit values are not all roots of unity; no exact integer energy"]}, out)
            return 1
        _emit({"E": metrics.energy_exact, "xi": metrics.xi}, out)
        return 0
    _emit({"command": "metrics", **metrics.to_dict()}, out)
    return 0


def _cmd_mindet(args, out):
    spec = _spec(args)
    result = min_det_bruteforce(spec, args.radius)
    _emit({"command": "mindet", "n": args.n, "m": args.m, "gamma": str(spec.gamma),
           "radius": args.radius, **result.to_dict()}, out)
    return 0


_COMMANDS = {
    "construct": _cmd_construct,
    "verify": _cmd_verify,
    "table": _cmd_table,
    "orbit": _cmd_orbit,
    "metrics": _cmd_metrics,
    "mindet": _cmd_mindet,
}


def run(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        return _COMMANDS[args.command](args, out)
    except SearchExhaustedError as exc:
        _emit({"command": args.command, "reasons": [str(exc)],
               "search_trace": [{"m": m, "reason": r} for m, r in exc.trace[-20:]]}, out)
        return 1
    except UncertifiedError as exc:
        _emit({"command": args.command, **exc.report.to_dict(), "reasons": exc.report.reasons or [str(exc)]}, out)
        return 1
    except (NonNormError, ValueError, OSError, KeyError) as exc:
        log.error("%s", exc)
        return 2


def main():
    sys.exit(run())
