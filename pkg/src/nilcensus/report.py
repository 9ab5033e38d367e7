"""JSON/CSV report encoding.

Integers travel as decimal strings and rationals as ``{"num", "den"}``
pairs of decimal strings, so reports never touch floating point and decode
back to equal values.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import fields
from fractions import Fraction

from .bounds import BoundReport
from .census import CensusReport, Ideal
from .fp import Subspace

SCHEMA_VERSION = 1


def encode(value):
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, int):
        return str(int(value))
    if isinstance(value, Fraction):
        return {"num": str(value.numerator), "den": str(value.denominator)}
    if isinstance(value, Ideal):
        value = value.space
    if isinstance(value, Subspace):
        return {"dim": str(value.dim), "pivots": [str(c) for c in value.pivots],
                "rows": [[str(x) for x in r] for r in value.rows]}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    raise TypeError(f"cannot encode {type(value).__name__}")


def decode_int(s) -> int | None:
    return None if s is None else int(s)


def decode_fraction(d) -> Fraction | None:
    return None if d is None else Fraction(int(d["num"]), int(d["den"]))


def decode_subspace(d, p: int, n: int) -> Subspace:
    return Subspace(p, n, tuple(tuple(int(x) for x in r) for r in d["rows"]),
                    tuple(int(c) for c in d["pivots"]))


def census_to_dict(rep: CensusReport) -> dict:
    out = {
        "descriptor": rep.descriptor,
        "p": encode(rep.p), "n": encode(rep.n), "e": encode(rep.e),
        "i_A": encode(rep.i_A), "s_A": encode(rep.s_A), "ratio": encode(rep.ratio),
        "dims": encode(rep.dims), "i_strata": encode(rep.i_strata),
        "s_strata": encode(rep.s_strata), "q": encode(rep.q),
    }
    if rep.fibers is not None:
        out["fibers"] = [{"ideal": encode(J), "fiber": encode(f)} for J, f in rep.fibers.items()]
    return out


def census_from_dict(d: dict) -> CensusReport:
    p, n = int(d["p"]), int(d["n"])
    fibers = None
    if "fibers" in d:
        fibers = {Ideal(decode_subspace(row["ideal"], p, n)): int(row["fiber"]) for row in d["fibers"]}
    ints = lambda key: tuple(int(x) for x in d[key])  # noqa: E731
    return CensusReport(d["descriptor"], p, n, int(d["e"]), int(d["i_A"]), int(d["s_A"]),
                        ints("dims"), ints("i_strata"), ints("s_strata"), ints("q"), fibers)


_BOUND_FRACTIONS = ("upper_main", "upper_stratified", "upper_dropped",
                    "upper_stratified_refined", "upper_small_e",
                    "ratio_bound_sharp", "ratio_bound_rounded")


def bounds_to_dict(rep: BoundReport) -> dict:
    out = {}
    for f in fields(rep):
        out[f.name] = encode(getattr(rep, f.name))
    out["ratio"] = encode(rep.ratio)
    return out


def bounds_from_dict(d: dict) -> BoundReport:
    kw = {}
    for f in fields(BoundReport):
        v = d.get(f.name)
        if f.name in _BOUND_FRACTIONS:
            v = decode_fraction(v)
        elif f.name in ("p", "n", "e", "lambda_lower", "rough_lower", "i_A"):
            v = decode_int(v)
        elif f.name in ("dims", "layer_dims", "q"):
            v = tuple(int(x) for x in v)
        elif f.name == "notes":
            v = list(v)
        kw[f.name] = v
    return BoundReport(**kw)


def envelope(command: str, algebra, payload: dict) -> dict:
    desc = None
    if algebra is not None:
        desc = {"name": algebra.descriptor, "p": encode(int(algebra.p)), "n": encode(algebra.n),
                "e": encode(algebra.e), "basis": list(algebra.labels)}
    return {"schema_version": SCHEMA_VERSION, "command": command, "algebra": desc, **payload}


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def fiber_groups(A, fibers: dict) -> list:
    """Rows (stratum, dim, fiber size, number of ideals, subspaces covered)."""
    chain = A.chain
    groups = {}
    for J, f in fibers.items():
        key = (chain.stratum_of(J.space), J.dim, f)
        groups[key] = groups.get(key, 0) + 1
    return [(t, d, f, k, f * k) for (t, d, f), k in sorted(groups.items())]


def fiber_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["family", "ideals", "fiber_size", "subspaces"])
    for t, d, f, k, total in rows:
        w.writerow([f"stratum{t}/dim{d}", k, f, total])
    return buf.getvalue()


def flat_csv(report: dict) -> str:
    """key,value lines for scalar entries of a report; nested data is JSON-encoded."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["key", "value"])

    def walk(prefix, v):
        if isinstance(v, dict) and set(v) == {"num", "den"}:
            w.writerow([prefix, f"{v['num']}/{v['den']}"])
        elif isinstance(v, dict):
            for k, x in v.items():
                walk(f"{prefix}.{k}" if prefix else k, x)
        elif isinstance(v, list):
            w.writerow([prefix, json.dumps(v, separators=(",", ":"))])
        else:
            w.writerow([prefix, "" if v is None else v])

    walk("", report)
    return buf.getvalue()
