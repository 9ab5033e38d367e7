"""Finite commutative nilpotent F_p-algebras given by structure constants.

An algebra of dimension n has basis b_0..b_{n-1} and a table
``table[i][j]`` holding the coordinates of b_i * b_j.  Construction checks
commutativity, associativity and nilpotency exhaustively.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import (
    BadCoordinates,
    DimensionMismatch,
    NotAssociative,
    NotCommutative,
    NotNilpotent,
)
from .fp import (
    PrimeModulus,
    Subspace,
    complement,
    full_space,
    mat_vec,
    preimage_kernel,
    rref,
    unit_vector,
    zero_subspace,
)


@dataclass(frozen=True)
class AnnihilatorChain:
    """N_1 < N_2 < ... < N_e = A with layer complements W_r (N_r = W_r + N_{r-1})."""

    spaces: tuple
    complements: tuple

    @property
    def dims(self) -> tuple:
        return tuple(s.dim for s in self.spaces)

    @property
    def layer_dims(self) -> tuple:
        return tuple(w.dim for w in self.complements)

    @property
    def length(self) -> int:
        return len(self.spaces)

    def level(self, t: int) -> Subspace:
        """N_t, with N_0 the zero subspace."""
        if t == 0:
            s = self.spaces[0]
            return zero_subspace(s.n, s.p)
        return self.spaces[t - 1]

    def stratum(self, v) -> int:
        """Smallest t with v in N_t (0 for the zero vector)."""
        if not any(v):
            return 0
        for t, s in enumerate(self.spaces, 1):
            if v in s:
                return t
        raise ValueError("vector outside the algebra")

    def stratum_of(self, space: Subspace) -> int:
        if space.dim == 0:
            return 0
        for t, s in enumerate(self.spaces, 1):
            if space <= s:
                return t
        raise ValueError("subspace outside the algebra")


@dataclass(frozen=True, eq=False)
class NilpotentAlgebra:
    """A validated commutative nilpotent algebra; build with :func:`build_custom`
    or one of the family constructors."""

    p: int
    n: int
    labels: tuple
    table: tuple
    family: str | None = None
    param: int | None = None
    _check: bool = field(default=True, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "p", PrimeModulus(self.p))
        if self._check:
            _validate(self)

    # multiplication by b_i as an n x n matrix acting on row vectors
    @cached_property
    def mult_matrices(self) -> tuple:
        return tuple(tuple(self.table[i][j] for j in range(self.n)) for i in range(self.n))

    @cached_property
    def power_chain(self) -> tuple:
        return power_chain(self)

    @property
    def e(self) -> int:
        """Nilpotency index: A^e != 0 = A^(e+1)."""
        return len(self.power_chain)

    @cached_property
    def chain(self) -> AnnihilatorChain:
        return annihilator_chain(self)

    @property
    def descriptor(self) -> str:
        if self.family:
            return f"{self.family}({self.param})@{int(self.p)}"
        return f"custom(dim={self.n})@{int(self.p)}"

    def __repr__(self):
        return f"NilpotentAlgebra({self.descriptor})"

    def __eq__(self, other):
        if not isinstance(other, NilpotentAlgebra):
            return NotImplemented
        return (self.p, self.n, self.table) == (other.p, other.n, other.table)

    def __hash__(self):
        return hash((int(self.p), self.n, self.table))

    def __reduce__(self):
        # skip revalidation in worker processes
        return (NilpotentAlgebra, (int(self.p), self.n, self.labels, self.table, self.family, self.param, False))

    def vector(self, coords: Mapping[str, int]) -> tuple:
        """Element from a {label: coefficient} map, e.g. ``{"x": 1, "y^2": 2}``."""
        v = [0] * self.n
        for name, c in coords.items():
            v[self.labels.index(name)] = c % self.p
        return tuple(v)

    def format_vector(self, v) -> str:
        terms = []
        for c, name in zip(v, self.labels):
            if c:
                terms.append(name if c == 1 else f"{c}{name}")
        return " + ".join(terms) if terms else "0"


def _mul_basis(table, i: int, v, p: int) -> tuple:
    # b_i * v
    n = len(table)
    out = [0] * n
    for j, a in enumerate(v):
        if a:
            for k, x in enumerate(table[i][j]):
                if x:
                    out[k] += a * x
    return tuple(x % p for x in out)


def _mul(table, u, v, p: int) -> tuple:
    n = len(table)
    out = [0] * n
    for i, a in enumerate(u):
        if not a:
            continue
        for j, b in enumerate(v):
            if not b:
                continue
            ab = a * b
            for k, x in enumerate(table[i][j]):
                if x:
                    out[k] += ab * x
    return tuple(x % p for x in out)


def _validate(A: NilpotentAlgebra) -> None:
    n, p, table = A.n, int(A.p), A.table
    if len(table) != n or any(len(row) != n for row in table):
        raise DimensionMismatch(f"structure table must be {n} x {n}")
    if len(A.labels) != n:
        raise DimensionMismatch(f"expected {n} basis labels, got {len(A.labels)}")
    for i, j in itertools.product(range(n), repeat=2):
        v = table[i][j]
        if len(v) != n or any(not (isinstance(x, int) and 0 <= x < p) for x in v):
            raise BadCoordinates(f"product ({i},{j}) has coordinates outside [0,{p})", (i, j))
    for i, j in itertools.combinations(range(n), 2):
        if table[i][j] != table[j][i]:
            raise NotCommutative(f"b{i}*b{j} != b{j}*b{i}", (i, j))
    for i, j, k in itertools.product(range(n), repeat=3):
        left = _mul_basis(table, k, table[i][j], p)
        right = _mul_basis(table, i, table[j][k], p)
        if left != right:
            raise NotAssociative(f"(b{i}*b{j})*b{k} != b{i}*(b{j}*b{k})", (i, j, k))
    power_chain(A)


def build_custom(p: int, n: int, labels: Sequence[str] | None = None,
                 products: Iterable = (), family: str | None = None,
                 param: int | None = None) -> NilpotentAlgebra:
    """Build and validate an algebra from sparse products.

    ``products`` yields ``(i, j, coords)`` where ``coords`` is either a full
    coordinate sequence or a ``{basis index: coefficient}`` mapping.  Unlisted
    products are zero and the table is completed symmetrically.
    """
    p = PrimeModulus(p)
    if labels is None:
        labels = [f"b{i}" for i in range(n)]
    zero = (0,) * n
    table = [[zero] * n for _ in range(n)]
    given = {}
    for i, j, coords in products:
        if not (0 <= i < n and 0 <= j < n):
            raise BadCoordinates(f"product index ({i},{j}) out of range", (i, j))
        if isinstance(coords, Mapping):
            v = [0] * n
            for k, c in coords.items():
                k = int(k)
                if not 0 <= k < n:
                    raise BadCoordinates(f"basis index {k} out of range in product ({i},{j})", (i, j, k))
                v[k] = c
        else:
            v = list(coords)
            if len(v) != n:
                raise BadCoordinates(f"product ({i},{j}) has {len(v)} coordinates", (i, j))
        if any(not isinstance(c, int) or not 0 <= c < p for c in v):
            raise BadCoordinates(f"product ({i},{j}) has coordinates outside [0,{p})", (i, j))
        v = tuple(v)
        for key in ((i, j), (j, i)):
            if key in given and given[key] != v:
                raise NotCommutative(f"conflicting values for b{i}*b{j}", (i, j))
        given[(i, j)] = given[(j, i)] = v
        table[i][j] = table[j][i] = v
    return NilpotentAlgebra(p, n, tuple(labels), tuple(tuple(r) for r in table), family, param)


def _monomial_algebra(p, monomials, product, labels, family, param):
    index = {m: i for i, m in enumerate(monomials)}
    n = len(monomials)
    prods = []
    for i, j in itertools.combinations_with_replacement(range(n), 2):
        m = product(monomials[i], monomials[j])
        if m is not None and m in index:
            prods.append((i, j, {index[m]: 1}))
    return build_custom(p, n, labels, prods, family, param)


def build_uniserial(p: int, e: int) -> NilpotentAlgebra:
    """span(x, x^2, ..., x^e) with x^(e+1) = 0."""
    if e < 1:
        raise ValueError("e must be at least 1")
    monos = list(range(1, e + 1))
    labels = ["x" if k == 1 else f"x^{k}" for k in monos]
    return _monomial_algebra(p, monos, lambda a, b: a + b, labels, "uniserial", e)


def _var_names(m: int) -> list:
    return list("xyzw"[:m]) if m <= 4 else [f"x{i + 1}" for i in range(m)]


def build_binomial(p: int, m: int) -> NilpotentAlgebra:
    """Square-free monomials in m variables whose squares vanish (dimension 2^m - 1)."""
    if m < 1:
        raise ValueError("m must be at least 1")
    names = _var_names(m)
    monos = [frozenset(c) for k in range(1, m + 1) for c in itertools.combinations(range(m), k)]
    labels = ["".join(names[i] for i in sorted(s)) for s in monos]
    return _monomial_algebra(p, monos, lambda a, b: None if a & b else a | b,
                             labels, "binomial", m)


def build_triangular(p: int, e: int) -> NilpotentAlgebra:
    """Monomials x^i y^j with 1 <= i + j <= e, products truncated above degree e."""
    if e < 1:
        raise ValueError("e must be at least 1")
    monos = [(d - j, j) for d in range(1, e + 1) for j in range(d + 1)]

    def label(i, j):
        def part(v, k):
            return "" if k == 0 else (v if k == 1 else f"{v}^{k}")
        return part("x", i) + part("y", j)

    labels = [label(i, j) for i, j in monos]
    return _monomial_algebra(p, monos, lambda a, b: (a[0] + b[0], a[1] + b[1]),
                             labels, "triangular", e)


def zero_product_algebra(p: int, n: int) -> NilpotentAlgebra:
    return build_custom(p, n, [f"b{i}" for i in range(n)], ())


BUILDERS = {
    "uniserial": build_uniserial,
    "binomial": build_binomial,
    "triangular": build_triangular,
}

_GRAMMAR = re.compile(r"^\s*(uniserial|binomial|triangular)\s*\(\s*(\d+)\s*\)\s*@\s*(\d+)\s*$")


def parse_builtin(text: str) -> NilpotentAlgebra:
    """Parse ``name(k)@p``, e.g. ``triangular(2)@3``."""
    m = _GRAMMAR.match(text)
    if not m:
        raise ValueError(f"cannot parse algebra {text!r}; expected name(k)@p with "
                         f"name in {sorted(BUILDERS)}")
    name, k, p = m.group(1), int(m.group(2)), int(m.group(3))
    return BUILDERS[name](p, k)


def from_spec(data: Mapping) -> NilpotentAlgebra:
    """Algebra from the structured spec format (``p``, ``dim``, ``basis``, ``products``)."""
    try:
        n = int(data["dim"])
        labels = data.get("basis") or [f"b{i}" for i in range(n)]
        prods = []
        for q in data.get("products", []):
            coords = q["coords"]
            # the format uses an index -> coefficient map; a full list is accepted too
            coords = ({int(k): int(v) for k, v in coords.items()} if isinstance(coords, Mapping)
                      else [int(v) for v in coords])
            prods.append((int(q["i"]), int(q["j"]), coords))
        p = int(data["p"])
    except (KeyError, TypeError, AttributeError, ValueError) as exc:
        raise BadCoordinates(f"malformed algebra spec: {exc!r}") from exc
    return build_custom(p, n, labels, prods)


def to_spec(A: NilpotentAlgebra) -> dict:
    prods = []
    for i in range(A.n):
        for j in range(i, A.n):
            v = A.table[i][j]
            if any(v):
                prods.append({"i": i, "j": j, "coords": {str(k): c for k, c in enumerate(v) if c}})
    return {"p": int(A.p), "dim": A.n, "basis": list(A.labels), "products": prods}


def load_algebra(source: str) -> NilpotentAlgebra:
    """Built-in grammar string or path to a JSON spec file."""
    if _GRAMMAR.match(source):
        return parse_builtin(source)
    path = Path(source)
    if path.exists():
        return from_spec(json.loads(path.read_text()))
    return parse_builtin(source)


def multiply(A: NilpotentAlgebra, u, v) -> tuple:
    if len(u) != A.n or len(v) != A.n:
        raise DimensionMismatch("vector length does not match algebra dimension")
    return _mul(A.table, u, v, int(A.p))


def basis_products(A: NilpotentAlgebra, u) -> list:
    """[b_0 * u, ..., b_{n-1} * u]."""
    p = int(A.p)
    return [mat_vec(u, m, p) for m in A.mult_matrices]


def module_product(A: NilpotentAlgebra, U: Subspace) -> Subspace:
    """A*U, spanned by b_i * u over basis vectors."""
    if U.n != A.n:
        raise DimensionMismatch("subspace ambient dimension does not match algebra")
    p = int(A.p)
    return rref([mat_vec(u, m, p) for u in U.rows for m in A.mult_matrices], p, A.n)


def power_chain(A: NilpotentAlgebra) -> tuple:
    """(A^1, A^2, ..., A^e), all nonzero."""
    p = int(A.p)
    cur = full_space(A.n, p)
    chain = []
    while cur.dim:
        chain.append(cur)
        nxt = module_product(A, cur)
        if nxt == cur:
            raise NotNilpotent(f"power chain stabilises at dimension {cur.dim}", (len(chain),))
        cur = nxt
    return tuple(chain)


def annihilator_chain(A: NilpotentAlgebra) -> AnnihilatorChain:
    """N_k = {a : b_i * a in N_(k-1) for all i}, starting from N_0 = 0."""
    p, n = int(A.p), A.n
    # a -> (b_0 a, ..., b_{n-1} a) as one n x n^2 matrix
    stacked = [tuple(x for m in A.mult_matrices for x in m[r]) for r in range(n)]
    prev = zero_subspace(n, p)
    spaces, comps = [], []
    while prev.dim < n:
        target = rref([tuple(0 for _ in range(n * i)) + r + (0,) * (n * (n - i - 1))
                       for i in range(n) for r in prev.rows], p, n * n)
        cur = preimage_kernel(stacked, target)
        if cur == prev:
            raise NotNilpotent("annihilator chain stalls", (len(spaces),))
        comps.append(complement(prev, cur))
        spaces.append(cur)
        prev = cur
    return AnnihilatorChain(tuple(spaces), tuple(comps))


def unit(A: NilpotentAlgebra, i: int) -> tuple:
    return unit_vector(A.n, i)
