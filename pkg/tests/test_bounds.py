import json
from fractions import Fraction

import pytest

from nilcensus.algebra import build_binomial, build_triangular, build_uniserial
from nilcensus.bounds import (
    THRESHOLD,
    best_ratio_factor,
    bound_report,
    correspondence_ratio,
    dropped_bound,
    fill_uppers,
    lambda_lower,
    main_bound_gap_ok,
    main_factor,
    refined_bound,
    refined_terms,
    rough_lower,
    small_e_factor,
    telescoped_bound,
    threshold_flag,
    upper_main,
    upper_small_e,
    upper_stratified,
    verify_prop_2_4,
)
from nilcensus.census import enumerate_ideals
from nilcensus.errors import HypothesisViolated
from nilcensus.qcomb import delta, s_eval
from nilcensus.report import bounds_from_dict, bounds_to_dict, dumps


def test_main_factor_small_e():
    for p in (3, 5, 7, 11):
        assert main_factor(2, p) == Fraction(3, p)
        assert main_factor(3, p) == Fraction(5, p * p)
        assert main_factor(1, p) == 1


def test_lambda_examples():
    for p in (3, 5, 7):
        assert lambda_lower(build_triangular(p, 2)) == 2 * p * p + 3 * p + 6
        assert lambda_lower(build_binomial(p, 3)) == 4 * p * p + 4 * p + 8
        assert lambda_lower(build_uniserial(p, 3)) == 4


def test_rough_lower():
    A = build_triangular(5, 2)
    assert rough_lower(A) == 5 ** delta(3)
    assert rough_lower(A) <= len(enumerate_ideals(A))


def test_triangular_upper_example():
    A = build_triangular(3, 2)
    assert upper_main(A) == Fraction(3, 3) * 2664
    assert upper_small_e(A) == Fraction(2, 3) * 2664 == 1776
    assert 45 <= upper_stratified(A).telescoped <= 1776
    # exact q = (1, 3) with d = (3, 5): bracket 2p^-4 + p^-2
    assert refined_terms((3, 5), (1, 3)) == [(2, 4), (1, 2)]
    assert upper_stratified(A).refined == (Fraction(2, 81) + Fraction(1, 9)) * 2664


def test_telescoped_sign():
    # subtracting p^-delta(q_(t+1)) keeps the telescoped bound below the dropped one
    for dims, q in (((3, 5), (1, 3)), ((1, 4, 7), (1, 2, 4)), ((1, 2, 3, 4), (1, 2, 3, 4))):
        for p in (5, 7):
            assert telescoped_bound(p, dims, q) <= dropped_bound(p, dims, q)


def test_dropped_is_sum():
    assert dropped_bound(3, (3, 5), (1, 3)) == s_eval(3, 3) + Fraction(s_eval(5, 3), 9)


def test_binomial4_chain():
    dims, q = (1, 5, 11, 15), (1, 2, 4, 8)
    assert [delta(x) for x in q] == [0, 1, 4, 16]
    # intermediate form s(1) + s(5)/p + s(11)/p^4 + s(15)/p^16
    for p in (5, 7):
        assert dropped_bound(p, dims, q) == sum(Fraction(s_eval(d, p), p ** delta(x))
                                                for d, x in zip(dims, q))
    assert refined_terms(dims, q, sharp=True) == [(1, 56), (1, 51), (1, 30), (1, 16)]
    # all layers have odd dimension, so the factor 2 never appears in the sharp terms
    assert refined_terms(dims, q) == [(2, 56), (2, 51), (2, 30), (1, 16)]
    for p in (5, 7, 11):
        total = sum(Fraction(c, p**k) for c, k in refined_terms(dims, q, sharp=True))
        assert total <= Fraction(2, p**16)


def test_binomial4_report():
    rep = bound_report(build_binomial(5, 4), q_mode="binomial")
    assert rep.q == (1, 2, 4, 8)
    assert rep.ratio_bound_rounded == Fraction(2, 5**16)
    assert rep.dims == (1, 5, 11, 15)


def test_binomial3_bound():
    # d = (1, 4, 7), q = (1, 2, 4): exponents delta(q_t) + delta(7) - delta(d_t)
    assert refined_terms((1, 4, 7), (1, 2, 4), sharp=True) == [(1, 12), (2, 9), (1, 4)]


@pytest.mark.parametrize("e,p,n,want", [
    (2, 199, 4, False), (2, 211, 4, True), (3, 13, 4, False), (3, 17, 4, True),
    (4, 5, 4, False), (4, 7, 4, True), (5, 7, 5, True), (6, 7, 6, True), (7, 11, 7, True)])
def test_threshold_flags(e, p, n, want):
    assert threshold_flag(e, p, n) is want


def test_threshold_inapplicable():
    assert threshold_flag(3, 3, 5) is False
    assert best_ratio_factor(3, 3, 5) is None


def test_small_e_factor():
    assert small_e_factor(2, 5, 3) == Fraction(2, 5)
    assert small_e_factor(3, 5, 4) == Fraction(2, 25)
    assert small_e_factor(2, 5, 2) is None
    assert small_e_factor(2, 2, 5) is None
    assert small_e_factor(4, 5, 6) is None


def test_uniserial2_threshold_edge_case():
    # n = 2 is outside the small-e result, and the main bound 3/p is above 1/100 at p = 211
    A = build_uniserial(211, 2)
    assert A.n == 2 and A.e == 2
    r = correspondence_ratio(A, len(enumerate_ideals(A)))
    assert r.ratio == Fraction(3, 214) and not r.below
    assert not r.predicted_below
    assert upper_small_e(A) is None


def test_ratio_report_consistent():
    A = build_uniserial(211, 3)
    r = correspondence_ratio(A, len(enumerate_ideals(A)))
    assert r.ratio == Fraction(4, s_eval(3, 211))
    assert r.predicted_below and r.below


def test_hypothesis_guard():
    A = build_triangular(2, 2)
    with pytest.raises(HypothesisViolated):
        upper_main(A)
    rep = bound_report(A)
    assert not rep.applicable and rep.upper_main is None
    with pytest.raises(HypothesisViolated):
        bound_report(build_triangular(5, 2), q_mode="binomial")


INSTANCES = [build_triangular(3, 2), build_triangular(5, 2), build_uniserial(5, 4),
             build_binomial(3, 2), build_binomial(5, 3), build_uniserial(7, 6)]


@pytest.mark.parametrize("A", INSTANCES, ids=lambda A: A.descriptor)
def test_sandwich(A):
    i = len(enumerate_ideals(A))
    rep = bound_report(A, i_A=i, q_mode="exact")
    assert rep.sandwich_ok()
    generic = upper_stratified(A, "generic")
    assert rep.upper_stratified <= generic.telescoped <= rep.upper_main
    assert rep.upper_stratified <= rep.upper_dropped
    assert rep.upper_stratified_refined <= refined_bound(rep.p, rep.dims, tuple(range(1, A.e + 1)))
    assert rep.upper_stratified_refined <= rep.upper_main


@pytest.mark.parametrize("A", INSTANCES[:4], ids=lambda A: A.descriptor)
def test_stratum_inequality(A):
    assert all(c.ok for c in verify_prop_2_4(A))


def test_monotone_in_q():
    dims = (1, 3, 6)
    lo, hi = (1, 2, 3), (1, 3, 6)
    for p in (5, 7):
        assert telescoped_bound(p, dims, hi) <= telescoped_bound(p, dims, lo)
        assert refined_bound(p, dims, hi) <= refined_bound(p, dims, lo)


def test_gap_condition():
    assert main_bound_gap_ok((3, 5))
    assert main_bound_gap_ok((1, 4, 7))
    assert main_bound_gap_ok((1, 2, 3, 4))


def test_q_length_checked():
    with pytest.raises(ValueError):
        telescoped_bound(5, (1, 2), (1,))


@pytest.mark.parametrize("A", INSTANCES[:3], ids=lambda A: A.descriptor)
def test_report_round_trip_and_recompute(A):
    rep = bound_report(A, i_A=len(enumerate_ideals(A)))
    back = bounds_from_dict(json.loads(dumps(bounds_to_dict(rep))))
    assert back == rep
    # the uppers depend only on the serialized chain data
    again = fill_uppers(bounds_from_dict(bounds_to_dict(rep)))
    assert again.uppers() == rep.uppers()
    assert THRESHOLD == Fraction(1, 100)
