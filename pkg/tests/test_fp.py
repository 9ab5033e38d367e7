import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilcensus.errors import DimensionMismatch
from nilcensus.fp import (
    PrimeModulus,
    complement,
    enumerate_subspaces,
    extend,
    full_space,
    intersection,
    is_subspace_of,
    pattern_size,
    pivot_patterns,
    preimage_kernel,
    rref,
    span_membership,
    subspace_sum,
    subspaces_with_pattern,
    zero_subspace,
)
from nilcensus.qcomb import s_eval

from oracles import as_set, brute_span, brute_subspaces


def matrices(p, n, max_rows=5):
    return st.lists(st.lists(st.integers(-2 * p, 2 * p), min_size=n, max_size=n),
                    min_size=1, max_size=max_rows)


def test_rref_example():
    S = rref([(1, 2, 0), (0, 1, 1)], 3)
    assert S.rows == ((1, 0, 1), (0, 1, 1))
    assert S.pivots == (0, 1)


def test_rref_drops_dependent_rows():
    S = rref([(1, 1, 0), (2, 2, 0), (0, 0, 0)], 3)
    assert S.dim == 1 and S.rows == ((1, 1, 0),)


def test_rref_needs_n_for_empty():
    with pytest.raises(DimensionMismatch):
        rref([], 3)
    assert rref([], 3, 4) == zero_subspace(4, 3)


def test_rref_ragged_rows():
    with pytest.raises(DimensionMismatch):
        rref([(1, 0), (1, 0, 0)], 3)


def test_prime_modulus():
    assert PrimeModulus(7) == 7
    for bad in (0, 1, 4, 9, -3):
        with pytest.raises(ValueError):
            PrimeModulus(bad)


@pytest.mark.parametrize("p", [2, 3, 5])
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_rref_canonical(p, data):
    # equal spans give identical RREF; span matches brute force
    n = data.draw(st.integers(1, 4))
    m = data.draw(matrices(p, n))
    S = rref(m, p, n)
    assert as_set(S) == brute_span([[x % p for x in r] for r in m], p, n)
    # shuffle rows and add random combinations: same canonical form
    perm = data.draw(st.permutations(m))
    coeffs = data.draw(st.lists(st.integers(0, p - 1), min_size=len(m), max_size=len(m)))
    combo = [sum(c * r[i] for c, r in zip(coeffs, m)) for i in range(n)]
    assert rref(list(perm) + [combo], p, n) == S
    assert hash(rref(list(perm), p, n)) == hash(S)


@pytest.mark.parametrize("p,n", [(p, n) for p in (2, 3, 5) for n in range(0, 6)
                                 if p**(n * n // 4) * n < 5000])
def test_enumeration_count_law(p, n):
    subs = list(enumerate_subspaces(n, p))
    assert len(subs) == s_eval(n, p)
    assert len(set(subs)) == len(subs)
    for k in range(n + 1):
        assert sum(1 for S in subs if S.dim == k) == len(list(enumerate_subspaces(n, p, k)))


@pytest.mark.parametrize("p,n", [(2, 4), (3, 3), (2, 5), (3, 4)])
def test_enumeration_matches_brute_force(p, n):
    assert {as_set(S) for S in enumerate_subspaces(n, p)} == brute_subspaces(n, p)


def test_pattern_124_count():
    # echelon label (124) is pivot columns 0, 1, 3 in F_p^5: five free entries
    assert pattern_size(5, 3, (0, 1, 3)) == 3**5 == 243
    assert len(list(subspaces_with_pattern(5, 3, (0, 1, 3)))) == 243
    assert all(S.pivots == (0, 1, 3) for S in subspaces_with_pattern(5, 3, (0, 1, 3)))


def test_pivot_pattern_order():
    pats = pivot_patterns(3)
    assert pats[0] == () and pats[-1] == (0, 1, 2)
    assert [len(x) for x in pats] == sorted(len(x) for x in pats)
    with pytest.raises(ValueError):
        pivot_patterns(3, 4)


@pytest.mark.parametrize("p", [2, 3])
def test_complement(p):
    n = 4
    subs = list(enumerate_subspaces(n, p))
    pairs = [(a, b) for a in subs[::7] for b in subs[::5] if is_subspace_of(a, b)]
    assert len(pairs) > 20
    for inner, outer in pairs:
        W = complement(inner, outer)
        assert subspace_sum(W, inner) == outer
        assert intersection(W, inner).dim == 0
        assert W.dim == outer.dim - inner.dim
        assert complement(inner, outer) == W  # deterministic


def test_complement_of_full_space_uses_standard_basis():
    inner = rref([(1, 1, 0)], 3)
    W = complement(inner, full_space(3, 3))
    # e0 is the first standard vector outside span(1,1,0); e1 is then dependent
    assert W.rows == ((1, 0, 0), (0, 0, 1))


def test_complement_requires_containment():
    with pytest.raises(ValueError):
        complement(rref([(1, 0)], 3), rref([(0, 1)], 3))


@pytest.mark.parametrize("p", [2, 3])
def test_sum_laws(p):
    subs = list(enumerate_subspaces(3, p))
    for a, b in itertools.product(subs[::3], repeat=2):
        assert a + b == b + a
        assert a + a == a
        assert as_set(a + b) == brute_span(a.rows + b.rows, p, 3)
        assert as_set(intersection(a, b)) == as_set(a) & as_set(b)
    for a, b, c in itertools.product(subs[::9], repeat=3):
        assert (a + b) + c == a + (b + c)


def test_membership_and_order():
    S = rref([(1, 2, 0)], 5)
    assert (2, 4, 0) in S and span_membership(S, (3, 1, 0))
    assert (0, 0, 1) not in S
    assert S <= full_space(3, 5) and not full_space(3, 5) <= S
    assert extend(S, [(0, 0, 1)]).dim == 2
    assert extend(S, [(2, 4, 0)]) is S
    with pytest.raises(DimensionMismatch):
        span_membership(S, (1, 0))


def test_vectors_and_projective_points():
    S = rref([(1, 0, 1), (0, 1, 1)], 3)
    assert set(S.vectors()) == as_set(S)
    pts = list(S.projective_points())
    assert len(pts) == (9 - 1) // 2
    for v in pts:
        assert v in S and v[next(i for i, x in enumerate(v) if x)] == 1


@pytest.mark.parametrize("p", [2, 3, 5])
def test_preimage_kernel(p):
    n = 3
    # shift map e0 -> e1 -> e2 -> 0 as a row-vector matrix
    f = [(0, 1, 0), (0, 0, 1), (0, 0, 0)]
    assert preimage_kernel(f, zero_subspace(n, p)) == rref([(0, 0, 1)], p, n)
    assert preimage_kernel(f, rref([(0, 0, 1)], p, n)) == rref([(0, 1, 0), (0, 0, 1)], p)
    assert preimage_kernel(f, full_space(n, p)) == full_space(n, p)
    # brute force against a random-looking map
    g = [(1, 2 % p, 0), (0, 1, 1), (1, 0, 1)]
    T = rref([(1, 1, 0)], p, n)
    expect = {v for v in itertools.product(range(p), repeat=n)
              if tuple(sum(v[i] * g[i][j] for i in range(n)) % p for j in range(n)) in as_set(T)}
    assert as_set(preimage_kernel(g, T)) == expect


def test_preimage_kernel_shape_mismatch():
    with pytest.raises(DimensionMismatch):
        preimage_kernel([(1, 0)], zero_subspace(3, 3))
