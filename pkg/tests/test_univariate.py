
import pytest
from hypothesis import given, settings, strategies as st

from padicfeas.feasibility import (Answer, Certificate, feas_trinomial, feas_univariate,
                                   feas_univariate_generic, solve, verify_certificate)
from padicfeas.feasibility.univariate import divides_exactly, squarefree_part
from padicfeas.oracle import FEASIBLE, INFEASIBLE_AT_DEPTH, feas_oracle_qp
from padicfeas.sparse_poly import SparsePoly, parse_poly, to_json

HULL_EXAMPLE = "36 -8868*x1 +29305*x1^2 -35310*x1^3 +18240*x1^4 -3646*x1^5 +243*x1^6"


def P(text):
    return parse_poly(text)


def test_squarefree_part():
    f = P("x1 - 1") * P("x1 - 1") * P("x1^2 + 1")
    assert squarefree_part(f) == P("-1 + x1 - x1^2 + x1^3")
    assert divides_exactly(P("x1^2 + 1"), f)
    assert not divides_exactly(P("x1^2 + 2"), f)


def test_repeated_roots_terminate_and_certify():
    # a root of valuation 1 of multiplicity 2 used to stall the ball recursion
    f = P(HULL_EXAMPLE)
    v = solve(f, 3)
    assert v.answer is Answer.FEASIBLE
    assert "divisor" in v.certificate.data
    assert verify_certificate(f, 3, v.certificate)


def test_divisor_must_divide():
    f = P(HULL_EXAMPLE)
    cert = solve(f, 3).certificate
    obj = cert.to_json()
    obj["data"]["divisor"] = to_json(P("1 + x1"))
    assert not verify_certificate(f, 3, Certificate.from_json(obj))


@pytest.mark.parametrize("text,p,expect", [
    ("x1^2 - 2", 7, Answer.FEASIBLE),
    ("x1^2 - 2", 5, Answer.INFEASIBLE),
    ("1 + x1 + x1^3", 31, Answer.FEASIBLE),
    ("2 + x1^2", 2, Answer.INFEASIBLE),
    ("x1^2 + x1^5", 3, Answer.FEASIBLE),
    ("-1 + 3*x1^-1 + x1^2", 5, None),
])
def test_frozen_univariate(text, p, expect):
    f = P(text)
    v = solve(f, p)
    if expect is not None:
        assert v.answer is expect
    if v.certificate is not None and v.answer is Answer.FEASIBLE:
        assert verify_certificate(f, p, v.certificate)


def test_generic_requires_nondivisibility():
    # 1 + x + x^3 has discriminant 31 up to sign
    v = feas_univariate_generic(P("1 + x1 + x1^3"), 5)
    assert v.answer in (Answer.FEASIBLE, Answer.INFEASIBLE)
    v = feas_univariate_generic(P("1 - 2*x1 + x1^2") * P("x1^2 + 1"), 3)
    assert v.answer in (Answer.FEASIBLE, Answer.UNKNOWN)


def test_degenerate_trinomials():
    # (x - 1)^2 (x + 2)
    v = feas_trinomial(P("2 - 3*x1 + x1^3"), 5)
    assert v.answer is Answer.FEASIBLE
    # q-polynomial with a unique degenerate root at 1
    v = feas_trinomial(P("2 - 5*x1^3 + 3*x1^5"), 7)
    assert v.answer is Answer.FEASIBLE
    assert verify_certificate(P("2 - 5*x1^3 + 3*x1^5"), 7, v.certificate)


univ = st.lists(st.integers(-12, 12), min_size=2, max_size=6).filter(
    lambda c: c[0] != 0 and c[-1] != 0)


@settings(max_examples=80, deadline=None)
@given(univ, st.sampled_from([2, 3, 5, 7]))
def test_solver_agrees_with_oracle(cs, p):
    f = SparsePoly(1, [(c, (i,)) for i, c in enumerate(cs) if c])
    v = feas_univariate(f, p)
    res = feas_oracle_qp(f, p, depth=12)
    if v.answer is Answer.FEASIBLE:
        assert verify_certificate(f, p, v.certificate)
        assert res.status != INFEASIBLE_AT_DEPTH
    elif v.answer is Answer.INFEASIBLE:
        assert res.status != FEASIBLE


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-9, 9).filter(bool), min_size=1, max_size=3),
       st.lists(st.integers(-5, 5), min_size=1, max_size=3), st.sampled_from([2, 3, 5]))
def test_rational_roots_are_found(roots, extra, p):
    # products with a rational root factor are always Feasible
    f = SparsePoly.constant(1, 1)
    for r in roots:
        f = f * SparsePoly(1, [(1, (1,)), (-r, (0,))])
    g = SparsePoly(1, [(c, (i,)) for i, c in enumerate(extra + [1]) if c])
    f = f * g
    v = solve(f, p)
    assert v.answer is Answer.FEASIBLE
    assert verify_certificate(f, p, v.certificate)
