"""Exact upper and lower bounds on the number of ideals i(A).

Upper bounds are returned as exact :class:`~fractions.Fraction` values
bounding i(A) itself (multiply a ratio bound by s(A) to get these).  The
functions taking ``(p, dims, q)`` need only chain data, so a serialized
report can be re-evaluated without the algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import NilpotentAlgebra
from .census import (
    MAX_POINTS,
    compute_q_t,
    count_ideals_within,
    principal_ideals,
)
from .errors import HypothesisViolated, ZeroAlgebra
from .qcomb import delta, s_eval

THRESHOLD = Fraction(1, 100)


def _require(A: NilpotentAlgebra, need_e_lt_p: bool = True):
    if A.n == 0:
        raise ZeroAlgebra("the zero algebra is excluded")
    if need_e_lt_p and A.e >= A.p:
        raise HypothesisViolated(f"{A.descriptor}: nilpotency index e={A.e} is not below p={int(A.p)}")


def lambda_from_layers(layer_dims: Sequence[int], p: int) -> int:
    """s(t_1) + (s(t_2) - 1) + ... + (s(t_e) - 1)."""
    return s_eval(layer_dims[0], p) + sum(s_eval(t, p) - 1 for t in layer_dims[1:])


def lambda_lower(A: NilpotentAlgebra) -> int:
    """Count of the ideals N_(r-1) + V with V a nonzero subspace of a layer complement."""
    _require(A, need_e_lt_p=False)
    return lambda_from_layers(A.chain.layer_dims, int(A.p))


def rough_lower(A: NilpotentAlgebra) -> int:
    _require(A, need_e_lt_p=False)
    return int(A.p) ** delta(max(A.chain.layer_dims))


def main_factor(e: int, p: int) -> Fraction:
    """(2e - 1) / p^delta(e)."""
    return Fraction(2 * e - 1, p ** delta(e))


def upper_main(A: NilpotentAlgebra) -> Fraction:
    _require(A)
    p = int(A.p)
    return main_factor(A.e, p) * s_eval(A.n, p)


def _check_q(dims, q):
    if len(dims) != len(q):
        raise ValueError(f"{len(q)} q values for a chain of length {len(dims)}")


def telescoped_bound(p: int, dims: Sequence[int], q: Sequence[int]) -> Fraction:
    """sum_{t<e} (p^-delta(q_t) - p^-delta(q_(t+1))) s(d_t) + p^-delta(q_e) s(d_e)."""
    _check_q(dims, q)
    inv = [Fraction(1, p ** delta(x)) for x in q]
    e = len(dims)
    total = sum((inv[t] - inv[t + 1]) * s_eval(dims[t], p) for t in range(e - 1))
    return total + inv[-1] * s_eval(dims[-1], p)


def dropped_bound(p: int, dims: Sequence[int], q: Sequence[int]) -> Fraction:
    """sum_t p^-delta(q_t) s(d_t): the telescoped sum without its negative terms."""
    _check_q(dims, q)
    return sum(Fraction(s_eval(d, p), p ** delta(x)) for d, x in zip(dims, q))


def refined_terms(dims: Sequence[int], q: Sequence[int], sharp: bool = False) -> list:
    """(coefficient, exponent) pairs of the ratio bound sum c * p^-k.

    Term t < e carries exponent delta(q_t) + delta(d_e) - delta(d_t) and
    coefficient 2; with ``sharp`` the 2 is dropped when d_t and d_e have the
    same parity, where s(d_e) >= p^(delta(d_e)-delta(d_t)) s(d_t) holds
    without the factor 1/2.
    """
    _check_q(dims, q)
    de = dims[-1]
    terms = []
    for d, x in zip(dims[:-1], q[:-1]):
        coef = 1 if sharp and (de - d) % 2 == 0 else 2
        terms.append((coef, delta(x) + delta(de) - delta(d)))
    terms.append((1, delta(q[-1])))
    return terms


def refined_factor(p: int, dims: Sequence[int], q: Sequence[int], sharp: bool = False) -> Fraction:
    return sum(Fraction(c, p**k) for c, k in refined_terms(dims, q, sharp))


def refined_bound(p: int, dims: Sequence[int], q: Sequence[int], sharp: bool = False) -> Fraction:
    return refined_factor(p, dims, q, sharp) * s_eval(dims[-1], p)


@dataclass(frozen=True)
class StratifiedBound:
    q: tuple
    telescoped: Fraction
    dropped: Fraction
    refined: Fraction


def q_values(A: NilpotentAlgebra, q_mode: str, principals=None) -> tuple:
    """q_t by mode: ``exact`` (principal ideal scan), ``generic`` (t),
    ``binomial`` (2^(t-1), valid for binomial algebras)."""
    e = A.chain.length
    if q_mode == "exact":
        return compute_q_t(A, principals)
    if q_mode == "generic":
        return tuple(range(1, e + 1))
    if q_mode == "binomial":
        if A.family != "binomial":
            raise HypothesisViolated("q_t >= 2^(t-1) is only known for binomial algebras")
        return tuple(2 ** (t - 1) for t in range(1, e + 1))
    raise ValueError(f"unknown q mode {q_mode!r}")


def upper_stratified(A: NilpotentAlgebra, q_mode: str = "exact", q: Sequence[int] | None = None) -> StratifiedBound:
    _require(A)
    p, dims = int(A.p), A.chain.dims
    q = tuple(q) if q is not None else q_values(A, q_mode)
    return StratifiedBound(q, telescoped_bound(p, dims, q), dropped_bound(p, dims, q),
                           refined_bound(p, dims, q))


def small_e_factor(e: int, p: int, n: int) -> Fraction | None:
    """2/p for e = 2 (p >= 3, n >= 3) and 2/p^2 for e = 3 (p >= 3, n >= 4)."""
    if e >= p or p < 3:
        return None
    if e == 2 and n >= 3:
        return Fraction(2, p)
    if e == 3 and n >= 4:
        return Fraction(2, p * p)
    return None


def upper_small_e(A: NilpotentAlgebra) -> Fraction | None:
    _require(A, need_e_lt_p=False)
    f = small_e_factor(A.e, int(A.p), A.n)
    return None if f is None else f * s_eval(A.n, A.p)


def best_ratio_factor(e: int, p: int, n: int) -> Fraction | None:
    """Smallest applicable ratio bound from the general and small-e results."""
    if not 0 < e < p:
        return None
    best = main_factor(e, p)
    small = small_e_factor(e, p, n)
    if small is not None:
        best = min(best, small)
    return best


def threshold_flag(e: int, p: int, n: int) -> bool:
    """True when the bounds alone guarantee i(A)/s(A) < 1/100."""
    f = best_ratio_factor(e, p, n)
    return f is not None and f < THRESHOLD


@dataclass(frozen=True)
class RatioReport:
    ratio: Fraction
    bound_factor: Fraction | None
    predicted_below: bool

    @property
    def below(self) -> bool:
        return self.ratio < THRESHOLD


def correspondence_ratio(A: NilpotentAlgebra, i_A: int) -> RatioReport:
    _require(A, need_e_lt_p=False)
    p = int(A.p)
    return RatioReport(Fraction(i_A, s_eval(A.n, p)), best_ratio_factor(A.e, p, A.n),
                       threshold_flag(A.e, p, A.n))


@dataclass
class Prop24Check:
    t: int
    q_t: int
    i_t: int
    i_prev: int
    lhs: int
    rhs: int

    @property
    def ok(self) -> bool:
        return self.lhs <= self.rhs


def verify_prop_2_4(A: NilpotentAlgebra) -> list:
    """p^delta(q_t) (i(N_t) - i(N_(t-1))) <= s(N_t) - s(N_(t-1)) per stratum, exact q_t."""
    _require(A, need_e_lt_p=False)
    p = int(A.p)
    principals = principal_ideals(A)
    q = compute_q_t(A, principals)
    chain = A.chain
    out = []
    i_prev = 1
    for t in range(1, chain.length + 1):
        i_t = count_ideals_within(A, chain.level(t), principals)
        rhs = s_eval(chain.level(t).dim, p) - s_eval(chain.level(t - 1).dim, p)
        out.append(Prop24Check(t, q[t - 1], i_t, i_prev, p ** delta(q[t - 1]) * (i_t - i_prev), rhs))
        i_prev = i_t
    return out


def main_bound_gap_ok(dims: Sequence[int]) -> bool:
    """delta(d_e) - delta(d_t) >= delta(e) - delta(t) for every t."""
    e, de = len(dims), dims[-1]
    return all(delta(de) - delta(d) >= delta(e) - delta(t) for t, d in enumerate(dims, 1))


@dataclass
class BoundReport:
    descriptor: str
    p: int
    n: int
    e: int
    dims: tuple
    layer_dims: tuple
    q_mode: str
    q: tuple
    lambda_lower: int
    rough_lower: int
    applicable: bool
    upper_main: Fraction | None = None
    upper_stratified: Fraction | None = None
    upper_dropped: Fraction | None = None
    upper_stratified_refined: Fraction | None = None
    upper_small_e: Fraction | None = None
    ratio_bound_sharp: Fraction | None = None
    ratio_bound_rounded: Fraction | None = None
    i_A: int | None = None
    notes: list = field(default_factory=list)

    @property
    def ratio(self) -> Fraction | None:
        return None if self.i_A is None else Fraction(self.i_A, s_eval(self.n, self.p))

    def uppers(self) -> dict:
        names = ("upper_main", "upper_stratified", "upper_dropped",
                 "upper_stratified_refined", "upper_small_e")
        return {k: getattr(self, k) for k in names if getattr(self, k) is not None}

    def sandwich_ok(self) -> bool | None:
        """lambda <= i(A) <= every applicable upper bound, or None without i(A)."""
        if self.i_A is None:
            return None
        return self.lambda_lower <= self.i_A and all(self.i_A <= u for u in self.uppers().values())


SIGN_NOTE = ("telescoped bound uses p^-delta(q_(t+1)) in the subtracted term; "
             "a positive exponent there would make the bound vacuous")


def default_q_mode(A: NilpotentAlgebra) -> str:
    if int(A.p) ** A.n <= MAX_POINTS:
        return "exact"
    if A.family == "binomial":
        return "binomial"
    return "generic"


def bound_report(A: NilpotentAlgebra, i_A: int | None = None, q_mode: str | None = None) -> BoundReport:
    """Every bound for A; census-free unless ``q_mode='exact'`` is chosen (the default
    when the principal-ideal scan is small enough)."""
    _require(A, need_e_lt_p=False)
    p, chain = int(A.p), A.chain
    q_mode = q_mode or default_q_mode(A)
    q = q_values(A, q_mode)
    rep = BoundReport(A.descriptor, p, A.n, A.e, chain.dims, chain.layer_dims, q_mode, q,
                      lambda_lower(A), rough_lower(A), applicable=A.e < p, i_A=i_A)
    if rep.applicable:
        fill_uppers(rep)
    else:
        rep.notes.append(f"e={A.e} >= p={p}: upper bounds inapplicable")
    return rep


def fill_uppers(rep: BoundReport) -> BoundReport:
    """(Re)compute the upper bounds of ``rep`` from its chain data alone."""
    p, dims, q = rep.p, rep.dims, rep.q
    rep.upper_main = main_factor(rep.e, p) * s_eval(rep.n, p)
    rep.upper_stratified = telescoped_bound(p, dims, q)
    rep.upper_dropped = dropped_bound(p, dims, q)
    rep.upper_stratified_refined = refined_bound(p, dims, q)
    f = small_e_factor(rep.e, p, rep.n)
    rep.upper_small_e = None if f is None else f * s_eval(rep.n, p)
    terms = refined_terms(dims, q, sharp=True)
    rep.ratio_bound_sharp = sum(Fraction(c, p**k) for c, k in terms)
    rounded = Fraction(2, p ** min(k for _, k in terms))
    rep.ratio_bound_rounded = rounded if rep.ratio_bound_sharp <= rounded else None
    if SIGN_NOTE not in rep.notes:
        rep.notes.append(SIGN_NOTE)
    return rep
