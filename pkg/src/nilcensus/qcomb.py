"""Gaussian binomial coefficients and subspace counts.

Everything here is exact: polynomials have integer coefficients and are
evaluated with Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence


@dataclass(frozen=True)
class QPolynomial:
    """Integer polynomial in q, ``coeffs[i]`` is the coefficient of q**i."""

    coeffs: tuple = ()

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def constant(cls, a: int) -> "QPolynomial":
        return cls((a,))

    @classmethod
    def monomial(cls, k: int, a: int = 1) -> "QPolynomial":
        return cls((0,) * k + (a,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading_coefficient(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __bool__(self):
        return bool(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, QPolynomial):
            return other
        if isinstance(other, int):
            return QPolynomial((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return QPolynomial(tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)))

    __radd__ = __add__

    def __neg__(self):
        return QPolynomial(tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return QPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return QPolynomial(tuple(out))

    __rmul__ = __mul__

    def shift(self, k: int) -> "QPolynomial":
        """Multiply by q**k."""
        if not self.coeffs:
            return self
        return QPolynomial((0,) * k + self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                var = "q" if k == 1 else f"q^{k}"
                body = var if mag == 1 else f"{mag}{var}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


ONE = QPolynomial((1,))
ZERO = QPolynomial()


@lru_cache(maxsize=None)
def gauss_binomial_poly(n: int, k: int) -> QPolynomial:
    """[n choose k]_q via [n,k] = [n-1,k-1] + q^k [n-1,k]."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k < 0 or k > n:
        return ZERO
    if k == 0 or k == n:
        return ONE
    return gauss_binomial_poly(n - 1, k - 1) + gauss_binomial_poly(n - 1, k).shift(k)


def gauss_binomial_eval(n: int, k: int, p: int) -> int:
    return gauss_binomial_poly(n, k)(int(p))


@lru_cache(maxsize=None)
def s_poly(n: int) -> QPolynomial:
    """Total number of subspaces of an n-dimensional space, as a polynomial in q."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    total = ZERO
    for k in range(n + 1):
        total = total + gauss_binomial_poly(n, k)
    return total


@lru_cache(maxsize=4096)
def s_eval(n: int, p: int) -> int:
    return s_poly(n)(int(p))


def delta(t: int) -> int:
    """floor(t^2 / 4)."""
    if t < 0:
        raise ValueError("delta is defined for t >= 0")
    return t * t // 4


def count_general_position(d: int, r: int, k: int, p: int) -> int:
    """Number of k-subspaces of F_p^d meeting a fixed r-subspace only in 0."""
    if not 0 <= r <= d:
        raise ValueError("need 0 <= r <= d")
    if k < 0 or k > d - r:
        raise ValueError(f"k={k} exceeds d-r={d - r}")
    p = int(p)
    return p ** (r * k) * gauss_binomial_eval(d - r, k, p)


def count_not_in_hyperplane(t: int, p: int) -> int:
    """Number of subspaces of a t-dimensional space not inside a fixed hyperplane.

    By duality this is sum_k s(t, 1; k) = sum_k p^k [t-1 choose k].
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    p = int(p)
    return sum(p**k * gauss_binomial_eval(t - 1, k, p) for k in range(t))


@dataclass(frozen=True)
class InequalityCheck:
    part: str
    statement: str
    lhs: int
    rhs: Fraction
    ok: bool


@dataclass
class GrowthReport:
    n: int
    m: int
    p: int
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.ok]


def growth_factor(n: int, m: int) -> Fraction:
    """Constant in s(n) >= c * p^(delta(n)-delta(m)) * s(m).

    The factor 1/2 is needed only when n is even and m is odd; the chain of
    parts a) and c) gives the bound without it in every other case.
    """
    if (n - m) % 2 == 0 or n % 2 == 1:
        return Fraction(1)
    return Fraction(1, 2)


def check_growth_inequalities(n: int, m: int, p: int) -> GrowthReport:
    """Evaluate the four s(n) growth inequalities exactly for one (n, m, p)."""
    if not 0 <= m <= n:
        raise ValueError("need 0 <= m <= n")
    p = int(p)
    s = lambda k: s_eval(k, p)  # noqa: E731
    rep = GrowthReport(n, m, p)

    def add(part, statement, lhs, rhs):
        rhs = Fraction(rhs)
        rep.checks.append(InequalityCheck(part, statement, lhs, rhs, lhs >= rhs))

    if n >= 2:
        add("a", f"s({n}) >= p^{n - 1} s({n - 2})", s(n), p ** (n - 1) * s(n - 2))
    if n > 1 and n % 2 == 0:
        add("b", f"s({n}) >= 1/2 p^{n // 2} s({n - 1})", s(n), Fraction(p ** (n // 2) * s(n - 1), 2))
    if n > 0 and n % 2 == 1:
        add("c", f"s({n}) >= p^{(n - 1) // 2} s({n - 1})", s(n), p ** ((n - 1) // 2) * s(n - 1))
    gap = delta(n) - delta(m)
    add("d", f"s({n}) >= 1/2 p^{gap} s({m})", s(n), Fraction(p**gap * s(m), 2))
    c = growth_factor(n, m)
    if c == 1:
        add("d*", f"s({n}) >= p^{gap} s({m})", s(n), p**gap * s(m))
    return rep


def interpolate(points: Sequence[tuple]) -> list:
    """Exact Lagrange interpolation; returns Fraction coefficients, lowest degree first."""
    xs = [Fraction(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    k = len(points)
    coeffs = [Fraction(0)] * k
    for i, (xi, (_, yi)) in enumerate(zip(xs, points)):
        # basis polynomial prod_{j != i} (x - xj) / (xi - xj)
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xj * basis[t + 1]
            denom *= xi - xj
        scale = Fraction(yi) / denom
        for t, b in enumerate(basis):
            coeffs[t] += scale * b
    return coeffs
