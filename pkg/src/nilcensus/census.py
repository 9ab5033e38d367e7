"""Ideals of a nilpotent algebra and the ideal-generator map G(U) = U + AU."""

from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .algebra import NilpotentAlgebra, basis_products, module_product, parse_builtin
from .errors import (
    DimensionMismatch,
    EnumerationTooLarge,
    NonIntegerCoefficients,
    NotAnIdeal,
    ValidationMismatch,
    ZeroAlgebra,
)
from .fp import (
    Subspace,
    _from_basis,
    _insert,
    mat_vec,
    pivot_patterns,
    rref,
    span_membership,
    subspaces_with_pattern,
    zero_subspace,
)
from .qcomb import QPolynomial, delta, interpolate, s_eval

# largest p**n for which the principal-ideal bitmap is allocated
MAX_POINTS = 2 * 10**8


@dataclass(frozen=True)
class Ideal:
    space: Subspace
    verified: bool = True

    @property
    def dim(self) -> int:
        return self.space.dim

    def __le__(self, other: "Ideal") -> bool:
        return self.space <= other.space


def _canonical_key(s: Subspace):
    return (s.dim, s.pivots, s.rows)


def _closure_space(A: NilpotentAlgebra, U: Subspace) -> Subspace:
    p = int(A.p)
    mats = A.mult_matrices
    basis = U.basis_dict()
    changed = False
    for u in U.rows:
        for m in mats:
            if len(basis) == A.n:
                break
            v = mat_vec(u, m, p)
            if any(v):
                changed |= _insert(basis, list(v), p)
    return _from_basis(basis, p, A.n) if changed else U


def make_ideal(A: NilpotentAlgebra, V: Subspace) -> Ideal:
    if not is_ideal(A, V):
        raise NotAnIdeal("subspace is not closed under multiplication by A")
    return Ideal(V)


def ideal_closure(A: NilpotentAlgebra, U: Subspace) -> Ideal:
    """G(U) = U + AU, the smallest ideal containing U.

    One step suffices because A(AU) is already inside AU.
    """
    if U.n != A.n:
        raise DimensionMismatch("subspace ambient dimension does not match algebra")
    return Ideal(_closure_space(A, U))


def generate(A: NilpotentAlgebra, *vectors) -> Ideal:
    """G of the span of ``vectors``."""
    return ideal_closure(A, rref(vectors, int(A.p), A.n))


def is_ideal(A: NilpotentAlgebra, V: Subspace) -> bool:
    if V.n != A.n:
        raise DimensionMismatch("subspace ambient dimension does not match algebra")
    p = int(A.p)
    return all(span_membership(V, mat_vec(v, m, p)) for v in V.rows for m in A.mult_matrices)


def enumeration_limit(p: int) -> int:
    """Default largest ambient dimension for brute-force subspace scans."""
    if p >= 5:
        return 6
    if p >= 3:
        return 7
    return 8


def check_enumeration(A: NilpotentAlgebra, max_dim: int | None = None, force: bool = False):
    if force:
        return
    limit = enumeration_limit(int(A.p)) if max_dim is None else max_dim
    if A.n > limit:
        raise EnumerationTooLarge(
            f"{A.descriptor}: brute force over s({A.n}) = {s_eval(A.n, A.p)} subspaces "
            f"exceeds the ambient-dimension cap {limit}; raise the cap or force")


def _require_nonzero(A: NilpotentAlgebra):
    if A.n == 0:
        raise ZeroAlgebra("the zero algebra is excluded")


@dataclass(frozen=True)
class PrincipalIdeal:
    """G(x) for a generator x; ``stratum`` is the t with x in N_t minus N_(t-1)."""

    space: Subspace
    generator: tuple
    stratum: int

    @property
    def dim(self) -> int:
        return self.space.dim


def _next_unseen(seen: np.ndarray, start: int, chunk: int = 1 << 16) -> int:
    size = len(seen)
    while start < size:
        block = seen[start:start + chunk]
        if not block.all():
            return start + int(np.argmin(block))
        start += chunk
    return size


def _decode(code: int, n: int, p: int) -> tuple:
    digits = [0] * n
    for i in range(n - 1, -1, -1):
        code, digits[i] = divmod(code, p)
    return tuple(digits)


def principal_ideals(A: NilpotentAlgebra, max_points: int = MAX_POINTS) -> list:
    """Every principal ideal G(x), x != 0, each exactly once.

    For W = G(x) and W0 = Ax, every y in W outside W0 has G(y) = W, so the
    nonzero vectors of the algebra split into classes W minus W0.  Vectors
    are scanned in increasing base-p code order; each new class is marked
    in a bitmap wholesale, so G is evaluated once per principal ideal.
    """
    _require_nonzero(A)
    p, n = int(A.p), A.n
    total = p**n
    if total > max_points:
        raise EnumerationTooLarge(f"{A.descriptor}: {total} vectors exceed max_points={max_points}")
    weights = np.array([p ** (n - 1 - i) for i in range(n)], dtype=np.int64)
    seen = np.zeros(total, dtype=bool)
    seen[0] = True
    chain = A.chain
    out = []
    pos = 1
    while True:
        pos = _next_unseen(seen, pos)
        if pos >= total:
            break
        x = _decode(pos, n, p)
        ax = rref(basis_products(A, x), p, n)
        w = _closure_space(A, rref([x], p, n))
        out.append(PrincipalIdeal(w, x, chain.stratum(x)))
        _mark_class(seen, np.array(x, dtype=np.int64), ax, p, weights)
    out.sort(key=lambda P: _canonical_key(P.space))
    return out


def _mark_class(seen, x, ax: Subspace, p, weights, block: int = 1 << 16):
    k = ax.dim
    rows = np.array(ax.rows, dtype=np.int64).reshape(k, len(x))
    count = p**k
    for start in range(0, count, block):
        idx = np.arange(start, min(count, start + block), dtype=np.int64)
        coeffs = np.empty((len(idx), k), dtype=np.int64)
        rem = idx
        for j in range(k - 1, -1, -1):
            rem, coeffs[:, j] = np.divmod(rem, p)
        ys = coeffs @ rows if k else np.zeros((len(idx), len(x)), dtype=np.int64)
        for c in range(1, p):
            seen[((ys + c * x) % p) @ weights] = True


def _join_closure(principals: Sequence[PrincipalIdeal], n: int, p: int) -> list:
    zero = zero_subspace(n, p)
    found = {zero}
    queue = [zero]
    for current in queue:
        for P in principals:
            if span_membership(current, P.generator):
                continue
            joined = current + P.space
            if joined not in found:
                found.add(joined)
                queue.append(joined)
    return sorted(found, key=_canonical_key)


def enumerate_ideals(A: NilpotentAlgebra, strategy: str = "join-closure",
                     max_dim: int | None = None, force: bool = False,
                     principals: Sequence[PrincipalIdeal] | None = None) -> list:
    """All ideals of A ordered by dimension, then canonical form.

    ``join-closure`` closes {0} and the principal ideals under sums (every
    ideal is the sum of the principal ideals of its elements).  ``filter``
    scans every subspace and is capped like the fiber census.
    """
    _require_nonzero(A)
    if strategy == "filter":
        check_enumeration(A, max_dim, force)
        p = int(A.p)
        spaces = [U for pat in pivot_patterns(A.n) for U in subspaces_with_pattern(A.n, p, pat)
                  if is_ideal(A, U)]
        spaces.sort(key=_canonical_key)
    elif strategy == "join-closure":
        if principals is None:
            principals = principal_ideals(A)
        spaces = _join_closure(principals, A.n, int(A.p))
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return [Ideal(s) for s in spaces]


def count_ideals_within(A: NilpotentAlgebra, bound: Subspace,
                        principals: Sequence[PrincipalIdeal] | None = None) -> int:
    """Number of ideals of A contained in the ideal ``bound``.

    Uses the principal ideals of A generated inside ``bound``; G(x) lies in
    ``bound`` exactly when x does.
    """
    if not is_ideal(A, bound):
        raise NotAnIdeal("bound is not an ideal")
    if bound.dim == 0:
        return 1
    if principals is None:
        principals = principal_ideals(A)
    inside = [P for P in principals if span_membership(bound, P.generator)]
    return len(_join_closure(inside, A.n, int(A.p)))


def principal_ideal_dim(A: NilpotentAlgebra, x) -> int:
    """q(x) = dim G(x)."""
    if not any(x):
        raise ValueError("q(x) is undefined for x = 0")
    return ideal_closure(A, rref([x], int(A.p), A.n)).dim


def compute_q_t(A: NilpotentAlgebra, principals: Sequence[PrincipalIdeal] | None = None) -> tuple:
    """(q_1, ..., q_e): minimal principal-ideal dimension per annihilator stratum."""
    if principals is None:
        principals = principal_ideals(A)
    best = {}
    for P in principals:
        t = P.stratum
        best[t] = min(best.get(t, P.dim), P.dim)
    return tuple(best[t] for t in range(1, A.chain.length + 1))


def _fibers_for_patterns(A: NilpotentAlgebra, patterns) -> Counter:
    p = int(A.p)
    tally = Counter()
    for pat in patterns:
        for U in subspaces_with_pattern(A.n, p, pat):
            tally[_closure_space(A, U)] += 1
    return tally


def fiber_census(A: NilpotentAlgebra, workers: int = 1, max_dim: int | None = None,
                 force: bool = False) -> dict:
    """|G^-1(J)| for every ideal J, by pushing every subspace through G.

    Work is split by pivot pattern; per-worker tallies are merged and the
    result is ordered canonically, so the output does not depend on
    ``workers``.
    """
    _require_nonzero(A)
    check_enumeration(A, max_dim, force)
    patterns = pivot_patterns(A.n)
    if workers <= 1:
        tally = _fibers_for_patterns(A, patterns)
    else:
        parts = [patterns[i::workers] for i in range(workers)]
        tally = Counter()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_fibers_for_patterns, itertools.repeat(A), parts):
                tally.update(part)
    return {Ideal(s): tally[s] for s in sorted(tally, key=_canonical_key)}


def fibers_by_inversion(A: NilpotentAlgebra, ideals: Sequence[Ideal] | None = None) -> dict:
    """Fiber sizes without scanning subspaces.

    U lies in an ideal J iff G(U) does, so s(dim J) = sum of |G^-1(J')| over
    ideals J' inside J; inverting over the ideal lattice gives each fiber.
    """
    if ideals is None:
        ideals = enumerate_ideals(A)
    ordered = sorted(ideals, key=lambda I: _canonical_key(I.space))
    p = int(A.p)
    fibers = {}
    for k, J in enumerate(ordered):
        below = sum(fibers[K] for K in ordered[:k] if K.dim < J.dim and K.space <= J.space)
        fibers[J] = s_eval(J.dim, p) - below
    return fibers


@dataclass
class StratumCheck:
    t: int
    fiber_sum: int
    expected: int
    i_t: int
    i_prev: int
    q_t: int
    fiber_floor: int
    min_fiber: int
    lhs: int
    rhs: int

    @property
    def identity_ok(self) -> bool:
        return self.fiber_sum == self.expected

    @property
    def inequality_ok(self) -> bool:
        return self.lhs <= self.rhs and self.min_fiber >= self.fiber_floor

    @property
    def ok(self) -> bool:
        return self.identity_ok and self.inequality_ok


@dataclass
class StratifiedReport:
    strata: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(s.ok for s in self.strata)


def stratified_identity_check(A: NilpotentAlgebra, fibers: dict | None = None,
                              **census_kw) -> StratifiedReport:
    """Check sum_{J in stratum t} |G^-1(J)| = s(N_t) - s(N_(t-1)) and
    p^delta(q_t) (i(N_t) - i(N_(t-1))) <= s(N_t) - s(N_(t-1)) for each t."""
    if fibers is None:
        fibers = fiber_census(A, **census_kw)
    p = int(A.p)
    chain = A.chain
    q = compute_q_t(A)
    by_stratum = {}
    for J, f in fibers.items():
        by_stratum.setdefault(chain.stratum_of(J.space), []).append(f)
    rep = StratifiedReport()
    i_prev = 1
    for t in range(1, chain.length + 1):
        fs = by_stratum.get(t, [])
        i_t = i_prev + len(fs)
        d_t, d_prev = chain.level(t).dim, chain.level(t - 1).dim
        rhs = s_eval(d_t, p) - s_eval(d_prev, p)
        pd = p ** delta(q[t - 1])
        rep.strata.append(StratumCheck(
            t=t, fiber_sum=sum(fs), expected=rhs, i_t=i_t, i_prev=i_prev,
            q_t=q[t - 1], fiber_floor=pd, min_fiber=min(fs) if fs else pd,
            lhs=pd * (i_t - i_prev), rhs=rhs))
        i_prev = i_t
    return rep


@dataclass
class CensusReport:
    descriptor: str
    p: int
    n: int
    e: int
    i_A: int
    s_A: int
    dims: tuple
    i_strata: tuple
    s_strata: tuple
    q: tuple
    fibers: dict | None = None

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.i_A, self.s_A)


def census(A: NilpotentAlgebra, strategy: str = "join-closure", with_fibers: bool = False,
           workers: int = 1, max_dim: int | None = None, force: bool = False) -> CensusReport:
    """i(A), s(A), per-stratum ideal and subspace counts, q_t, optionally fibers."""
    _require_nonzero(A)
    p = int(A.p)
    principals = principal_ideals(A)
    ideals = enumerate_ideals(A, strategy, max_dim, force, principals=principals)
    chain = A.chain
    i_strata = tuple(sum(1 for I in ideals if I.space <= s) for s in chain.spaces)
    s_strata = tuple(s_eval(d, p) for d in chain.dims)
    fibers = fiber_census(A, workers, max_dim, force) if with_fibers else None
    return CensusReport(A.descriptor, p, A.n, A.e, len(ideals), s_eval(A.n, p), chain.dims,
                        i_strata, s_strata, compute_q_t(A, principals), fibers)


QUANTITIES = {
    "ideals": lambda A: len(enumerate_ideals(A)),
    "subspaces": lambda A: s_eval(A.n, A.p),
    "top-fiber": lambda A: fibers_by_inversion(A)[Ideal(_full(A))],
}


def _full(A):
    from .fp import full_space
    return full_space(A.n, int(A.p))


def _lambda(A):
    from .bounds import lambda_lower
    return lambda_lower(A)


QUANTITIES["lambda"] = _lambda


def family_counter(family: str | Callable, quantity: str = "ideals") -> Callable[[int], int]:
    """p -> count for a family spec such as ``"triangular(2)"``."""
    if callable(family):
        return family
    measure = QUANTITIES[quantity]
    return lambda p: measure(parse_builtin(f"{family}@{p}"))


def interpolate_count(family: str | Callable, primes: Iterable[int], validate: int | None = None,
                      quantity: str = "ideals") -> QPolynomial:
    """Fit a polynomial in p through exact counts at ``primes``.

    Raises NonIntegerCoefficients if the fit is not integral and
    ValidationMismatch if it misses the count at ``validate``.
    """
    primes = list(primes)
    if len(set(primes)) != len(primes):
        raise ValueError("primes must be distinct")
    count = family_counter(family, quantity)
    coeffs = interpolate([(p, count(p)) for p in primes])
    if any(c.denominator != 1 for c in coeffs):
        raise NonIntegerCoefficients(f"fitted coefficients {coeffs} are not integers")
    poly = QPolynomial(tuple(int(c) for c in coeffs))
    if validate is not None:
        actual = count(validate)
        if poly(validate) != actual:
            raise ValidationMismatch(f"fit {poly} predicts {poly(validate)} at p={validate}, "
                                     f"actual {actual}")
    return poly
