"""Command-line interface: ``nilcensus {describe,count,fibers,bounds,verify,interpolate}``.

Exit codes: 0 success, 1 a check failed, 2 usage or validation error,
3 refused because an enumeration cap would be exceeded.
"""

from __future__ import annotations

import argparse
import sys

from . import report as rp
from .algebra import load_algebra
from .bounds import bound_report
from .census import census, enumerate_ideals, fiber_census, interpolate_count
from .errors import EnumerationTooLarge, NilcensusError, NonIntegerCoefficients, ValidationMismatch
from .qcomb import s_eval

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_REFUSED = 0, 1, 2, 3


def _common(sub: argparse.ArgumentParser, algebra=True):
    if algebra:
        sub.add_argument("--algebra", required=True,
                         help="built-in like triangular(2)@3, or a JSON algebra spec file")
    sub.add_argument("--strategy", choices=["join-closure", "filter"], default="join-closure")
    sub.add_argument("--max-enum-dim", type=int, default=6,
                     help="largest ambient dimension for brute-force subspace scans")
    sub.add_argument("--force", action="store_true", help="ignore the enumeration cap")
    sub.add_argument("--workers", type=int, default=1)
    sub.add_argument("--format", choices=["json", "csv"], default="json")
    sub.add_argument("-o", "--output", help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nilcensus", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", required=True)
    _common(subs.add_parser("describe", help="chain data of an algebra"))
    _common(subs.add_parser("count", help="i(A), s(A) and per-stratum counts"))
    _common(subs.add_parser("fibers", help="fiber sizes of the ideal-generator map"))
    b = subs.add_parser("bounds", help="all lower and upper bounds on i(A)")
    _common(b)
    b.add_argument("--no-census", action="store_true", help="skip computing i(A)")
    b.add_argument("--q-mode", choices=["exact", "generic", "binomial"])
    v = subs.add_parser("verify", help="run the reproduction checks")
    _common(v, algebra=False)
    v.add_argument("--only", help="comma-separated check names")
    i = subs.add_parser("interpolate", help="fit a count as a polynomial in p")
    _common(i, algebra=False)
    i.add_argument("--family", required=True, help="e.g. triangular(2)")
    i.add_argument("--primes", required=True, help="comma-separated primes")
    i.add_argument("--validate", type=int, help="held-out prime")
    i.add_argument("--quantity", default="ideals",
                   choices=["ideals", "lambda", "subspaces", "top-fiber"])
    return parser


def cmd_describe(args, A) -> tuple:
    chain = A.chain
    payload = {"dims": rp.encode(chain.dims), "layer_dims": rp.encode(chain.layer_dims),
               "power_dims": rp.encode(tuple(s.dim for s in A.power_chain)),
               "annihilators": [[A.format_vector(r) for r in s.rows] for s in chain.spaces]}
    return rp.envelope("describe", A, payload), EXIT_OK


def cmd_count(args, A) -> tuple:
    rep = census(A, strategy=args.strategy, max_dim=args.max_enum_dim, force=args.force)
    return rp.envelope("count", A, {"census": rp.census_to_dict(rep)}), EXIT_OK


def cmd_fibers(args, A) -> tuple:
    fibers = fiber_census(A, workers=args.workers, max_dim=args.max_enum_dim, force=args.force)
    groups = rp.fiber_groups(A, fibers)
    ideal_total = sum(g[3] for g in groups)
    sub_total = sum(g[4] for g in groups)
    i_A = len(enumerate_ideals(A))
    s_A = s_eval(A.n, A.p)
    payload = {
        "groups": [{"stratum": rp.encode(t), "dim": rp.encode(d), "fiber_size": rp.encode(f),
                    "ideals": rp.encode(k), "subspaces": rp.encode(tot)} for t, d, f, k, tot in groups],
        "fibers": [{"ideal": rp.encode(J), "basis": [A.format_vector(r) for r in J.space.rows],
                    "fiber": rp.encode(f)} for J, f in fibers.items()],
        "checks": {"ideal_column_sum": ideal_total == i_A, "subspace_column_sum": sub_total == s_A},
        "i_A": rp.encode(i_A), "s_A": rp.encode(s_A),
    }
    if args.format == "csv":
        payload["_csv"] = rp.fiber_csv(groups)
    ok = ideal_total == i_A and sub_total == s_A
    return rp.envelope("fibers", A, payload), EXIT_OK if ok else EXIT_CHECK


def cmd_bounds(args, A) -> tuple:
    i_A = None
    if not args.no_census:
        try:
            i_A = len(enumerate_ideals(A, args.strategy, args.max_enum_dim, args.force))
        except EnumerationTooLarge:
            i_A = None
    rep = bound_report(A, i_A=i_A, q_mode=args.q_mode)
    payload = {"bounds": rp.bounds_to_dict(rep), "sandwich_ok": rep.sandwich_ok()}
    status = EXIT_CHECK if rep.sandwich_ok() is False else EXIT_OK
    return rp.envelope("bounds", A, payload), status


def cmd_verify(args, A=None) -> tuple:
    from . import verify

    only = [s.strip() for s in args.only.split(",")] if args.only else None
    results = verify.run(only)
    payload = {"results": [{"check": r.check, "label": r.label, "ok": r.ok, "detail": r.detail}
                           for r in results],
               "passed": all(r.ok for r in results)}
    return rp.envelope("verify", None, payload), EXIT_OK if payload["passed"] else EXIT_CHECK


def cmd_interpolate(args, A=None) -> tuple:
    primes = [int(x) for x in args.primes.split(",")]
    payload = {"family": args.family, "quantity": args.quantity, "primes": rp.encode(primes),
               "validate": rp.encode(args.validate)}
    try:
        poly = interpolate_count(args.family, primes, args.validate, args.quantity)
    except (NonIntegerCoefficients, ValidationMismatch) as exc:
        payload.update(verdict="fail", error=str(exc))
        return rp.envelope("interpolate", None, payload), EXIT_CHECK
    payload.update(polynomial=str(poly), coefficients=rp.encode(poly.coeffs),
                   verdict="validated" if args.validate is not None else "fitted")
    return rp.envelope("interpolate", None, payload), EXIT_OK


COMMANDS = {
    "describe": cmd_describe,
    "count": cmd_count,
    "fibers": cmd_fibers,
    "bounds": cmd_bounds,
    "verify": cmd_verify,
    "interpolate": cmd_interpolate,
}


def render(report: dict, fmt: str) -> str:
    csv_text = report.pop("_csv", None)
    if fmt == "csv":
        return csv_text if csv_text is not None else rp.flat_csv(report)
    return rp.dumps(report)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        A = load_algebra(args.algebra) if getattr(args, "algebra", None) else None
        report, status = COMMANDS[args.command](args, A)
    except EnumerationTooLarge as exc:
        print(f"nilcensus: {exc}; try --strategy join-closure, a larger --max-enum-dim, or --force",
              file=sys.stderr)
        return EXIT_REFUSED
    except (NilcensusError, ValueError, KeyError, OSError) as exc:
        print(f"nilcensus: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(report, args.format)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
