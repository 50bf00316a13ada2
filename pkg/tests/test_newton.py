from fractions import Fraction

import sympy
from hypothesis import given, settings, strategies as st

from padicfeas.newton import build_lower_hull, classify, integral_root_valuations, root_valuations
from padicfeas.sparse_poly import SparsePoly, parse_poly


def test_frozen_polygon():
    # 1 + 3x + 9x^2 + x^3 at p = 3: points (0,0), (1,1), (2,2), (3,0)
    f = parse_poly("1 + 3*x1 + 9*x1^2 + x1^3")
    hull = build_lower_hull(f, 3)
    assert [(e.left, e.right) for e in hull.edges] == [((0, 0), (3, 0))]
    assert root_valuations(f, 3) == [(Fraction(0), 3)]
    assert classify(f, 3).flat


def test_ramified_slopes():
    f = parse_poly("2 + x1^2")
    assert root_valuations(f, 2) == [(Fraction(1, 2), 2)]
    assert integral_root_valuations(f, 2) == []
    assert classify(f, 2).ramified


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-30, 30).filter(bool), min_size=2, max_size=6),
       st.sampled_from([2, 3, 5]))
def test_valuations_match_sympy_roots(cs, p):
    # counts by valuation agree with the p-adic sizes of the roots of a split product
    roots = [Fraction(c) for c in cs]
    x = sympy.symbols("x")
    poly = sympy.Poly(sympy.prod([x - sympy.Rational(r.numerator, r.denominator) for r in roots]), x)
    coeffs = poly.all_coeffs()[::-1]
    f = SparsePoly(1, [(int(c), (i,)) for i, c in enumerate(coeffs) if c])
    expect = {}
    for r in roots:
        v = sympy.multiplicity(p, abs(r.numerator))
        expect[Fraction(v)] = expect.get(Fraction(v), 0) + 1
    assert dict(root_valuations(f, p)) == expect
