"""Reproduction checks run by ``nilcensus verify``.

Each check returns a list of :class:`CheckResult`; a check passes when all
of its results do.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import basis_products, build_binomial, build_triangular, build_uniserial
from .bounds import (
    lambda_lower,
    main_factor,
    refined_terms,
    threshold_flag,
    upper_main,
    upper_stratified,
    verify_prop_2_4,
)
from .census import (
    compute_q_t,
    enumerate_ideals,
    fiber_census,
    ideal_closure,
    interpolate_count,
    principal_ideal_dim,
    principal_ideals,
    stratified_identity_check,
)
from .fp import (
    enumerate_subspaces,
    full_space,
    intersection,
    is_subspace_of,
    rref,
    unit_vector,
)
from .qcomb import (
    QPolynomial,
    check_growth_inequalities,
    count_general_position,
    count_not_in_hyperplane,
    delta,
    s_eval,
    s_poly,
)


@dataclass(frozen=True)
class CheckResult:
    check: str
    label: str
    ok: bool
    detail: str = ""


def _poly(*coeffs_high_first) -> QPolynomial:
    return QPolynomial(tuple(reversed(coeffs_high_first)))


S5 = _poly(2, 2, 6, 6, 6, 4, 6)
TRIANGULAR_IDEALS = _poly(3, 4, 6)
BINOMIAL3_IDEALS = _poly(7, 4, 8)


def check_growth():
    out = []
    for p in (2, 3, 5, 7):
        for n in range(9):
            for m in range(n + 1):
                rep = check_growth_inequalities(n, m, p)
                out.append(CheckResult("growth", f"n={n} m={m} p={p}", rep.passed,
                                       "; ".join(c.statement for c in rep.failures())))
    return out


def _fixed(d, r, p):
    return rref([unit_vector(d, i) for i in range(r)], p, d)


def check_general_position():
    out = []
    for p in (2, 3):
        for d in range(1, 5):
            for r in range(d + 1):
                W0 = _fixed(d, r, p)
                for k in range(d - r + 1):
                    brute = sum(1 for U in enumerate_subspaces(d, p, k) if intersection(U, W0).dim == 0)
                    got = count_general_position(d, r, k, p)
                    out.append(CheckResult("genpos", f"d={d} r={r} k={k} p={p}", got == brute,
                                           f"{got} vs brute {brute}"))
    return out


def check_hyperplane():
    out = []
    for p in (2, 3):
        for t in range(1, 5):
            H = _fixed(t, t - 1, p)
            brute = sum(1 for U in enumerate_subspaces(t, p) if not is_subspace_of(U, H))
            got = count_not_in_hyperplane(t, p)
            ok = got == brute and got >= p ** delta(t)
            out.append(CheckResult("hyperplane", f"t={t} p={p}", ok, f"{got} vs brute {brute}"))
    return out


def check_s5():
    brute = sum(1 for _ in enumerate_subspaces(5, 3))
    return [CheckResult("s5", "s_poly(5)", s_poly(5) == S5, str(s_poly(5))),
            CheckResult("s5", "enumeration F_3^5", brute == S5(3) == 2664, str(brute))]


def check_idcount():
    out = []
    for p in (3, 5):
        A = build_triangular(p, 2)
        filt = enumerate_ideals(A, "filter")
        join = enumerate_ideals(A)
        out.append(CheckResult("idcount", f"triangular(2)@{p}",
                               len(filt) == TRIANGULAR_IDEALS(p) and filt == join,
                               f"filter {len(filt)}, join {len(join)}"))
    return out


def check_binom3():
    out = []
    for p in (5, 7):
        i = len(enumerate_ideals(build_binomial(p, 3)))
        out.append(CheckResult("binom3", f"binomial(3)@{p}", i == BINOMIAL3_IDEALS(p), str(i)))
    return out


def triangular_families(A):
    """The ideals J_1(a,d), J_15(a), J_2(b), J_23 of triangular(2) from their generators."""
    p = int(A.p)
    v = A.vector
    fam = {"A": [ideal_closure(A, full_space(A.n, p))]}
    fam["J1"] = [ideal_closure(A, rref([v({"x": 1, "y": a, "y^2": d})], p, A.n))
                 for a in range(p) for d in range(p)]
    fam["J15"] = [ideal_closure(A, rref([v({"x": 1, "y": a}), v({"y^2": 1})], p, A.n))
                  for a in range(p)]
    fam["J2"] = [ideal_closure(A, rref([v({"y": 1, "x^2": b})], p, A.n)) for b in range(p)]
    fam["J23"] = [ideal_closure(A, rref([v({"y": 1}), v({"x^2": 1})], p, A.n))]
    return fam


def fiber_table_expectations(p):
    """(number of ideals, fiber size) per family, as polynomials evaluated at p."""
    return {
        "A": (1, 2 * p**6 + p**5 + 2 * p**4 + p**3 + p**2 + 1),
        "J1": (p**2, 2 * p**2 + p + 1),
        "J15": (p, p**4 + p**3 + p**2 + 1),
        "J2": (p, 2 * p**2 + p + 1),
        "J23": (1, p**4 + p**3 + p**2 + 1),
        "N1": (2 * p**2 + 2 * p + 4, 1),
    }


def check_fibers(p=3):
    A = build_triangular(p, 2)
    fibers = fiber_census(A)
    expect = fiber_table_expectations(p)
    fam = triangular_families(A)
    N1 = A.chain.level(1)
    fam["N1"] = [J for J in fibers if J.space <= N1]
    out = []
    seen = set()
    for name, ideals in fam.items():
        count, size = expect[name]
        distinct = set(ideals)
        seen |= distinct
        ok = len(distinct) == count and all(fibers.get(J) == size for J in distinct)
        out.append(CheckResult("fibers", f"{name}@{p}", ok,
                               f"{len(distinct)} ideals, fibers {sorted({fibers.get(J) for J in distinct})}"))
    out.append(CheckResult("fibers", "families cover all ideals", seen == set(fibers)))
    out.append(CheckResult("fibers", "ideal column sum", len(fibers) == TRIANGULAR_IDEALS(p),
                           str(len(fibers))))
    out.append(CheckResult("fibers", "subspace column sum", sum(fibers.values()) == s_eval(5, p),
                           str(sum(fibers.values()))))
    return out


STRATA_CASES = [("triangular", 2, 3), ("triangular", 2, 5)] + [
    ("uniserial", e, p) for e in range(1, 5) for p in (5, 7)]

_BUILD = {"triangular": build_triangular, "uniserial": build_uniserial, "binomial": build_binomial}


def check_strata():
    out = []
    for fam, k, p in STRATA_CASES:
        rep = stratified_identity_check(_BUILD[fam](p, k))
        for s in rep.strata:
            out.append(CheckResult("strata", f"{fam}({k})@{p} t={s.t}", s.ok,
                                   f"sum {s.fiber_sum} vs {s.expected}; "
                                   f"{s.lhs} <= {s.rhs}; min fiber {s.min_fiber} >= {s.fiber_floor}"))
    return out


def check_stratum_inequality():
    out = []
    for fam, k, p in STRATA_CASES:
        for c in verify_prop_2_4(_BUILD[fam](p, k)):
            out.append(CheckResult("inequality", f"{fam}({k})@{p} t={c.t}", c.ok, f"{c.lhs} <= {c.rhs}"))
    return out


def check_generators(p=3):
    A = build_triangular(p, 2)
    failures = 0
    points = 0
    for x in full_space(A.n, p).projective_points():
        points += 1
        W = ideal_closure(A, rref([x], p, A.n)).space
        W0 = rref(basis_products(A, x), p, A.n)
        for coeffs in enumerate_subspaces(W.dim, p):
            U = rref([_combine(c, W.rows, p) for c in coeffs.rows], p, A.n)
            if not is_subspace_of(U, W0) and ideal_closure(A, U).space != W:
                failures += 1
    return [CheckResult("generators", f"triangular(2)@{p}, {points} generators", failures == 0,
                        f"{failures} failures")]


def _combine(coeffs, rows, p):
    n = len(rows[0])
    return tuple(sum(c * r[i] for c, r in zip(coeffs, rows)) % p for i in range(n))


def censused_instances():
    """Built-in algebras with n <= 7 and e < p for p in 3, 5, 7."""
    out = []
    for p in (3, 5, 7):
        for e in range(1, 8):
            if e < p:
                out.append(build_uniserial(p, e))
        for m in (1, 2, 3):
            if m < p:
                out.append(build_binomial(p, m))
        for e in (1, 2):
            if e < p:
                out.append(build_triangular(p, e))
    return out


def check_qt():
    out = []
    for A in censused_instances():
        q = compute_q_t(A)
        out.append(CheckResult("qt", f"{A.descriptor} q={q}",
                               all(qt >= t for t, qt in enumerate(q, 1))))
    q = compute_q_t(build_triangular(3, 2))
    out.append(CheckResult("qt", "triangular(2) q = (1, 3)", q == (1, 3), str(q)))
    return out


def check_doubling(p=5):
    A = build_binomial(p, 3)
    chain = A.chain
    bad = 0
    for x in full_space(A.n, p).projective_points():
        t = chain.stratum(x)
        if principal_ideal_dim(A, x) < 2 ** (t - 1):
            bad += 1
    return [CheckResult("doubling", f"binomial(3)@{p}", bad == 0, f"{bad} violations")]


def check_lambda():
    tri = interpolate_count("triangular(2)", (3, 5, 7), validate=11, quantity="lambda")
    bi = interpolate_count("binomial(3)", (3, 5, 7), validate=11, quantity="lambda")
    out = [CheckResult("lambda", "triangular(2)", tri == _poly(2, 3, 6), str(tri)),
           CheckResult("lambda", "binomial(3)", bi == _poly(4, 4, 8), str(bi))]
    for A in censused_instances():
        out.append(CheckResult("lambda", f"{A.descriptor} lambda <= i",
                               lambda_lower(A) <= len(enumerate_ideals(A))))
    return out


def check_sandwich():
    out = []
    for A in censused_instances():
        principals = principal_ideals(A)
        i = len(enumerate_ideals(A, principals=principals))
        exact = upper_stratified(A, q=compute_q_t(A, principals))
        generic = upper_stratified(A, "generic")
        main = upper_main(A)
        ok = (lambda_lower(A) <= i <= exact.telescoped <= generic.telescoped
              and exact.refined <= generic.refined <= main and exact.telescoped <= main)
        out.append(CheckResult("sandwich", A.descriptor, ok,
                               f"{lambda_lower(A)} <= {i} <= {exact.telescoped} <= {main}"))
    return out


def check_bounds():
    out = []
    for e, expect in ((2, lambda p: Fraction(3, p)), (3, lambda p: Fraction(5, p * p))):
        ok = all(main_factor(e, p) == expect(p) for p in (3, 5, 7, 11, 13))
        out.append(CheckResult("bounds", f"main factor e={e}", ok))
    dims, q = (1, 5, 11, 15), (1, 2, 4, 8)
    sharp = refined_terms(dims, q, sharp=True)
    out.append(CheckResult("bounds", "binomial(4) exponents", sharp == [(1, 56), (1, 51), (1, 30), (1, 16)],
                           str(sharp)))
    ok = all(sum(Fraction(c, p**k) for c, k in sharp) <= Fraction(2, p**16) for p in (5, 7, 11))
    out.append(CheckResult("bounds", "binomial(4) final 2/p^16", ok))
    cases = [(2, 199, False), (2, 211, True), (3, 13, False), (3, 17, True),
             (4, 5, False), (4, 7, True), (5, 7, True), (6, 7, True), (7, 11, True)]
    for e, p, want in cases:
        got = threshold_flag(e, p, n=max(4, e))
        out.append(CheckResult("bounds", f"threshold e={e} p={p}", got == want, str(got)))
    return out


CHECKS = {
    "growth": check_growth,
    "genpos": check_general_position,
    "hyperplane": check_hyperplane,
    "s5": check_s5,
    "idcount": check_idcount,
    "binom3": check_binom3,
    "fibers": check_fibers,
    "strata": check_strata,
    "inequality": check_stratum_inequality,
    "generators": check_generators,
    "qt": check_qt,
    "doubling": check_doubling,
    "lambda": check_lambda,
    "sandwich": check_sandwich,
    "bounds": check_bounds,
}


def run(only=None) -> list:
    names = list(CHECKS) if not only else list(only)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise KeyError(f"unknown checks {unknown}; choose from {sorted(CHECKS)}")
    results = []
    for name in names:
        results.extend(CHECKS[name]())
    return results
