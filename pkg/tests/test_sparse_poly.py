from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from padicfeas.sparse_poly import (PolyParseError, SparsePoly, evaluate_mod, from_json,
                                   normalized_volume, parse_poly, parse_poly_text, partials, reciprocal,
                                   size_measure, to_json, to_text)

terms = st.lists(st.tuples(st.integers(-50, 50).filter(bool),
                           st.tuples(st.integers(-4, 6), st.integers(0, 6))),
                 min_size=1, max_size=6, unique_by=lambda t: t[1])


def test_parse_text_and_json_agree():
    f = parse_poly("1 + 2*x1^2 - 3*x2^2")
    assert f.nvars == 2 and len(f) == 3
    assert parse_poly('{"nvars": 2, "terms": [["1", [0, 0]], ["2", [2, 0]], ["-3", [0, 2]]]}') == f
    assert parse_poly("3*x1^-2*x2 - 5").has_negative_exponents()


@pytest.mark.parametrize("bad", ["", "1 +", "x0", "2*3*x1", "x1^", "x1 + x1", "1 $ x1",
                                 '{"nvars": -1, "terms": []}', '{"nvars": 1}',
                                 '{"nvars": 1, "terms": [["a", [1]]]}'])
def test_parse_errors(bad):
    with pytest.raises(PolyParseError):
        parse_poly(bad)


@given(terms)
def test_json_and_text_round_trip(ts):
    f = SparsePoly(2, ts)
    assert from_json(to_json(f)) == f
    assert parse_poly_text(to_text(f), nvars=2) == f


@given(terms, terms, st.tuples(st.integers(1, 9), st.integers(1, 9)))
def test_ring_operations_evaluate_consistently(a, b, pt):
    f, g = SparsePoly(2, a), SparsePoly(2, b)
    x = [Fraction(v) for v in pt]
    assert (f * g).evaluate(x) == f.evaluate(x) * g.evaluate(x)
    assert (f + g).evaluate(x) == f.evaluate(x) + g.evaluate(x)
    assert (f - f).is_zero()


@given(terms, st.tuples(st.integers(1, 50), st.integers(0, 50)))
def test_evaluate_mod_matches_exact(ts, pt):
    f = SparsePoly(2, ts)
    mod = 7 ** 3
    if pt[0] % 7 == 0 or (pt[1] % 7 == 0 and any(e[1] < 0 for e in f.exponents)):
        return
    exact = f.evaluate(pt)
    assert evaluate_mod(f, pt, mod) == exact.numerator * pow(exact.denominator, -1, mod) % mod


def test_partials_and_reciprocal():
    f = parse_poly("1 + 2*x1^2*x2 - 3*x2^3")
    dx, dy = partials(f)
    assert dx == parse_poly("4*x1*x2").__class__(2, [(4, (1, 1))])
    assert dy == SparsePoly(2, [(2, (2, 0)), (-9, (0, 2))])
    g = parse_poly("1 + 5*x1 + x1^3")
    assert reciprocal(g) == SparsePoly(1, [(1, (0,)), (5, (2,)), (1, (3,))])


def test_size_and_volume():
    f = parse_poly("1 + x1")
    # (2+1)(2+0) * (2+1)(2+1) = 54 -> ceil(log2 54) = 6
    assert size_measure(f) == 6
    assert normalized_volume(parse_poly("1 + x1^2 + x2^3")) == 6
    with pytest.raises(ValueError):
        normalized_volume(parse_poly("1 + x1 + x1^2"))
