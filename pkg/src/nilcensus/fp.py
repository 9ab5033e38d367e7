"""Exact linear algebra over the prime field F_p.

Vectors are plain tuples of residues in ``range(p)``; matrices are sequences
of such row vectors and act on row vectors from the right (``v -> v @ M``).
Subspaces are stored in reduced row echelon form, so two :class:`Subspace`
values are equal exactly when they span the same set of vectors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import isqrt
from typing import Iterable, Iterator, Sequence

from .errors import DimensionMismatch

Vector = tuple


class PrimeModulus(int):
    """An ``int`` that is known to be prime.

    >>> PrimeModulus(7) + 1
    8
    """

    def __new__(cls, p):
        if isinstance(p, PrimeModulus):
            return p
        value = int(p)
        if value != p or not is_prime(value):
            raise ValueError(f"{p!r} is not a prime")
        return super().__new__(cls, value)

    def __repr__(self):
        return f"PrimeModulus({int(self)})"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def zero_vector(n: int) -> Vector:
    return (0,) * n


def unit_vector(n: int, i: int) -> Vector:
    v = [0] * n
    v[i] = 1
    return tuple(v)


def normalize(v: Sequence[int], p: int) -> Vector:
    """Scale ``v`` so that its first nonzero entry is 1 (projective representative)."""
    for a in v:
        if a:
            if a == 1:
                return tuple(v)
            inv = pow(a, -1, p)
            return tuple(x * inv % p for x in v)
    return tuple(v)


def _insert(basis: dict, v: list, p: int) -> bool:
    # basis maps pivot column -> row; rows are kept fully reduced against each other
    for c, row in basis.items():
        a = v[c]
        if a:
            v = [(x - a * y) % p for x, y in zip(v, row)]
    for c, a in enumerate(v):
        if a:
            break
    else:
        return False
    if a != 1:
        inv = pow(a, -1, p)
        v = [x * inv % p for x in v]
    for c2, row in basis.items():
        b = row[c]
        if b:
            basis[c2] = [(x - b * y) % p for x, y in zip(row, v)]
    basis[c] = v
    return True


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_p^n in canonical RREF form.

    ``rows`` are the nonzero RREF rows, ordered by strictly increasing
    ``pivots``.  Build instances with :func:`rref` or :func:`span`; the
    constructor trusts its input.
    """

    p: int
    n: int
    rows: tuple
    pivots: tuple

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    def __contains__(self, v) -> bool:
        return span_membership(self, v)

    def __le__(self, other: "Subspace") -> bool:
        return is_subspace_of(self, other)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def basis_dict(self) -> dict:
        return {c: list(r) for c, r in zip(self.pivots, self.rows)}

    def vectors(self) -> Iterator[Vector]:
        """Every vector of the subspace, coefficients in lexicographic order."""
        p, n = self.p, self.n
        for coeffs in itertools.product(range(p), repeat=self.dim):
            v = [0] * n
            for a, row in zip(coeffs, self.rows):
                if a:
                    for i, x in enumerate(row):
                        if x:
                            v[i] = (v[i] + a * x) % p
            yield tuple(v)

    def projective_points(self) -> Iterator[Vector]:
        """One representative per line: vectors whose leading coefficient is 1."""
        p, n, d = self.p, self.n, self.dim
        for lead in range(d):
            head = self.rows[lead]
            for coeffs in itertools.product(range(p), repeat=d - lead - 1):
                v = list(head)
                for a, row in zip(coeffs, self.rows[lead + 1:]):
                    if a:
                        for i, x in enumerate(row):
                            if x:
                                v[i] = (v[i] + a * x) % p
                yield tuple(v)


def _check_rows(rows, n):
    for r in rows:
        if len(r) != n:
            raise DimensionMismatch(f"row of length {len(r)} in ambient dimension {n}")


def rref(matrix: Iterable[Sequence[int]], p: int, n: int | None = None) -> Subspace:
    """Canonical subspace spanned by the rows of ``matrix``.

    ``n`` must be given when ``matrix`` may be empty.

    >>> rref([(1, 2, 0), (0, 1, 1)], 3).rows
    ((1, 0, 1), (0, 1, 1))
    """
    rows = [list(r) for r in matrix]
    if n is None:
        if not rows:
            raise DimensionMismatch("ambient dimension unknown for an empty matrix")
        n = len(rows[0])
    _check_rows(rows, n)
    basis: dict = {}
    for r in rows:
        if len(basis) == n:
            break
        _insert(basis, [x % p for x in r], p)
    return _from_basis(basis, p, n)


def _from_basis(basis: dict, p: int, n: int) -> Subspace:
    pivots = tuple(sorted(basis))
    return Subspace(p, n, tuple(tuple(basis[c]) for c in pivots), pivots)


span = rref


def zero_subspace(n: int, p: int) -> Subspace:
    return Subspace(p, n, (), ())


def full_space(n: int, p: int) -> Subspace:
    return Subspace(p, n, tuple(unit_vector(n, i) for i in range(n)), tuple(range(n)))


def span_membership(s: Subspace, v: Sequence[int]) -> bool:
    if len(v) != s.n:
        raise DimensionMismatch(f"vector of length {len(v)} vs ambient dimension {s.n}")
    p = s.p
    w = [x % p for x in v]
    for c, row in zip(s.pivots, s.rows):
        a = w[c]
        if a:
            w = [(x - a * y) % p for x, y in zip(w, row)]
    return not any(w)


def is_subspace_of(a: Subspace, b: Subspace) -> bool:
    if a.n != b.n:
        raise DimensionMismatch("subspaces live in different ambient spaces")
    if a.dim > b.dim:
        return False
    return all(span_membership(b, r) for r in a.rows)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.n != b.n or a.p != b.p:
        raise DimensionMismatch("subspaces live in different ambient spaces")
    if a.dim < b.dim:
        a, b = b, a
    basis = a.basis_dict()
    changed = False
    for r in b.rows:
        if len(basis) == a.n:
            break
        changed |= _insert(basis, list(r), a.p)
    return _from_basis(basis, a.p, a.n) if changed else a


def extend(s: Subspace, vectors: Iterable[Sequence[int]]) -> Subspace:
    """``s`` plus the span of ``vectors``."""
    basis = s.basis_dict()
    changed = False
    for v in vectors:
        if len(basis) == s.n:
            break
        if len(v) != s.n:
            raise DimensionMismatch("vector length does not match ambient dimension")
        changed |= _insert(basis, [x % s.p for x in v], s.p)
    return _from_basis(basis, s.p, s.n) if changed else s


def complement(inner: Subspace, outer: Subspace) -> Subspace:
    """A subspace W with ``W + inner = outer`` and ``W & inner = 0``.

    Deterministic: the RREF rows of ``outer`` are scanned in order and each
    one independent of what has been chosen so far is kept.  When ``outer``
    is the whole space these rows are the standard basis vectors.
    """
    if not is_subspace_of(inner, outer):
        raise ValueError("inner subspace is not contained in outer subspace")
    p, n = outer.p, outer.n
    basis = inner.basis_dict()
    chosen = []
    for row in outer.rows:
        if len(basis) == outer.dim:
            break
        if _insert(basis, list(row), p):
            chosen.append(row)
    return rref(chosen, p, n)


def intersection(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus intersection: row-reduce ``[a | a]`` over ``[b | 0]``."""
    if a.n != b.n or a.p != b.p:
        raise DimensionMismatch("subspaces live in different ambient spaces")
    n, p = a.n, a.p
    rows = [tuple(r) + tuple(r) for r in a.rows] + [tuple(r) + (0,) * n for r in b.rows]
    big = rref(rows, p, 2 * n)
    return rref([r[n:] for r, c in zip(big.rows, big.pivots) if c >= n], p, n)


def mat_vec(v: Sequence[int], m: Sequence[Sequence[int]], p: int) -> Vector:
    """Row vector times matrix, mod p."""
    out = [0] * (len(m[0]) if m else 0)
    for a, row in zip(v, m):
        if a:
            for j, x in enumerate(row):
                if x:
                    out[j] += a * x
    return tuple(x % p for x in out)


def left_kernel(m: Sequence[Sequence[int]], p: int, n: int) -> Subspace:
    """``{v in F_p^n : v @ m = 0}`` for an ``n x k`` matrix ``m``."""
    if len(m) != n:
        raise DimensionMismatch(f"matrix has {len(m)} rows, expected {n}")
    k = len(m[0]) if n else 0
    aug = [tuple(m[i]) + unit_vector(n, i) for i in range(n)]
    big = rref(aug, p, k + n)
    return rref([r[k:] for r, c in zip(big.rows, big.pivots) if c >= k], p, n)


def preimage_kernel(f: Sequence[Sequence[int]], target: Subspace) -> Subspace:
    """``{v : v @ f in target}`` for a linear map given as an ``n_in x n_out`` matrix."""
    p, n_out = target.p, target.n
    for row in f:
        if len(row) != n_out:
            raise DimensionMismatch("map codomain does not match target ambient dimension")
    n_in = len(f)
    # w -> w - sum_i w[pivot_i] * row_i vanishes exactly on target
    red = [list(unit_vector(n_out, j)) for j in range(n_out)]
    for c, row in zip(target.pivots, target.rows):
        for j, x in enumerate(row):
            red[c][j] = (red[c][j] - x) % p
    composed = [mat_vec(row, red, p) for row in f]
    return left_kernel(composed, p, n_in)


def pivot_patterns(n: int, k: int | None = None) -> list:
    """Pivot column tuples in enumeration order.

    With ``k`` given, ``itertools.combinations`` order; otherwise all
    patterns by dimension, then lexicographically.
    """
    if k is not None:
        if not 0 <= k <= n:
            raise ValueError(f"dimension {k} out of range for ambient dimension {n}")
        return list(itertools.combinations(range(n), k))
    return [c for j in range(n + 1) for c in itertools.combinations(range(n), j)]


def free_positions(n: int, pattern: Sequence[int]) -> list:
    """(row, col) slots of an RREF matrix with the given pivots that are unconstrained."""
    piv = set(pattern)
    return [(r, c) for r, pc in enumerate(pattern) for c in range(pc + 1, n) if c not in piv]


def subspaces_with_pattern(n: int, p: int, pattern: Sequence[int]) -> Iterator[Subspace]:
    pattern = tuple(pattern)
    slots = free_positions(n, pattern)
    base = [[0] * n for _ in pattern]
    for r, c in enumerate(pattern):
        base[r][c] = 1
    for values in itertools.product(range(p), repeat=len(slots)):
        rows = [list(b) for b in base]
        for (r, c), x in zip(slots, values):
            rows[r][c] = x
        yield Subspace(p, n, tuple(tuple(r) for r in rows), pattern)


def enumerate_subspaces(n: int, p: int, k: int | None = None) -> Iterator[Subspace]:
    """Stream every subspace of F_p^n (of dimension ``k`` if given) exactly once."""
    p = PrimeModulus(p)
    for pattern in pivot_patterns(n, k):
        yield from subspaces_with_pattern(n, int(p), pattern)


def pattern_size(n: int, p: int, pattern: Sequence[int]) -> int:
    return p ** len(free_positions(n, pattern))
