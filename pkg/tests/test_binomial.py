from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from padicfeas.feasibility import (Answer, feas_binomial, feas_binomial_system,
                                   verify_binomial_system, verify_certificate)
from padicfeas.feasibility.modroots import binomial_root_mod_p, discrete_log, primitive_root, roots_mod_p
from padicfeas.intlinalg import det_int, matmul
from padicfeas.oracle import FEASIBLE, feas_oracle_qp
from padicfeas.padic import ord_p
from padicfeas.sparse_poly import SparsePoly


@pytest.mark.parametrize("c,d,p,expect", [
    (2, 2, 7, True), (17, 2, 2, True), (3, 2, 2, False), (-1, 2, 3, False),
    (2, 3, 5, True), (16, 4, 2, True), (16 * 17, 4, 2, True), (16 * 9, 4, 2, False),
    (Fraction(1, 9), 2, 3, True), (5, 2, 5, False), (-4, 4, 5, True), (3, -2, 11, True),
])
def test_frozen_binomials(c, d, p, expect):
    v = feas_binomial(c, d, p)
    assert v.feasible == expect
    dd = abs(d)
    cc = Fraction(c) if d > 0 else 1 / Fraction(c)
    f = SparsePoly(1, [(cc.denominator, (dd,)), (-cc.numerator, (0,))])
    assert verify_certificate(f, p, v.certificate)


@settings(max_examples=60, deadline=None)
@given(st.integers(-200, 200).filter(bool), st.integers(1, 6), st.sampled_from([2, 3, 5, 7]))
def test_binomial_agrees_with_oracle(c, d, p):
    f = SparsePoly(1, [(1, (d,)), (-c, (0,))])
    v = feas_binomial(c, d, p)
    res = feas_oracle_qp(f, p, depth=2 * ord_p(d, p) + 4, squarefree=False)
    assert v.feasible == (res.status == FEASIBLE)


def test_modroots_helpers():
    for p in [3, 5, 7, 11, 101]:
        g = primitive_root(p)
        assert len({pow(g, k, p) for k in range(p - 1)}) == p - 1
        assert pow(g, discrete_log(g, 5 % p or 1, p), p) == (5 % p or 1)
    assert sorted(roots_mod_p([-2, 0, 1], 7)) == [3, 4]
    w = binomial_root_mod_p(2, 3, 7)
    assert w is None or pow(w, 3, 7) == 2


square2 = st.lists(st.lists(st.integers(-4, 4), min_size=2, max_size=2), min_size=2, max_size=2)
UNIMODULAR = [[[1, 1], [0, 1]], [[0, 1], [1, 0]], [[2, 1], [1, 1]], [[1, -3], [0, 1]]]


@settings(max_examples=80, deadline=None)
@given(square2, st.lists(st.integers(-30, 30).filter(bool), min_size=2, max_size=2),
       st.sampled_from([2, 3, 5]), st.sampled_from(range(len(UNIMODULAR))))
def test_monomial_change_invariance(A, c, p, k):
    if det_int(A) == 0:
        return
    U = UNIMODULAR[k]
    v1 = feas_binomial_system(A, c, p)
    v2 = feas_binomial_system(matmul(U, A), c, p)
    assert v1.answer == v2.answer
    if v1.feasible:
        assert verify_binomial_system(A, c, p, v1.certificate)
        assert verify_binomial_system(matmul(U, A), c, p, v2.certificate)


def test_system_examples():
    # x1^2 x2 = 12, x2^3 = 27 over Q_3
    v = feas_binomial_system([[2, 0], [1, 3]], [12, 27], 3)
    assert v.answer is Answer.FEASIBLE
    # x1^2 = 3 has no solution: odd valuation
    v = feas_binomial_system([[2, 0], [0, 1]], [3, 5], 3)
    assert v.answer is Answer.INFEASIBLE
    with pytest.raises(ValueError):
        feas_binomial_system([[1, 2], [2, 4]], [1, 1], 5)
