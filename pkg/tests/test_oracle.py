from fractions import Fraction
from itertools import product

from hypothesis import given, settings, strategies as st

from padicfeas.feasibility import verify_certificate
from padicfeas.oracle import (FEASIBLE, INFEASIBLE_AT_DEPTH, dpll, feas_oracle_qp,
                              form_is_isotropic, rational_reconstruction, roots_mod,
                              sat_brute_force)
from padicfeas.sparse_poly import parse_poly


def test_roots_mod_frozen():
    # computed by exhaustive enumeration of (Z/7)^2
    assert roots_mod(parse_poly("1 + 2*x1^2 - 3*x2^2"), 7, 1) == [
        (1, 1), (1, 6), (3, 2), (3, 5), (4, 2), (4, 5), (6, 1), (6, 6)]
    assert roots_mod(parse_poly("x1^2 - 2"), 7, 2) == [(10,), (39,)]


def test_oracle_certificates_verify():
    for text, p in [("x1^2 - 2", 7), ("1 + 2*x1^2 - 3*x2^2", 7), ("3 - x1^2 + x2^3", 5)]:
        f = parse_poly(text)
        window = None if f.nvars == 1 else (-2, 2)
        res = feas_oracle_qp(f, p, window, depth=6)
        assert res.status == FEASIBLE
        assert verify_certificate(f, p, res.certificate)
    assert feas_oracle_qp(parse_poly("x1^2 - 3"), 7).status == INFEASIBLE_AT_DEPTH


@given(st.integers(-300, 300), st.integers(1, 300))
def test_rational_reconstruction(a, b):
    x = Fraction(a, b)
    m = 10 ** 12 + 39  # prime, far above 2 * 300^2
    if b % m == 0:
        return
    r = rational_reconstruction(x.numerator * pow(x.denominator, -1, m) % m, m)
    assert r == x


def test_isotropy_frozen():
    assert not form_is_isotropic([1, 1, 1], 2)
    assert form_is_isotropic([1, 1, -2], 3)
    assert form_is_isotropic([1, 1, 1, 1, 1], 2)


@settings(max_examples=60)
@given(st.lists(st.lists(st.integers(1, 4).flatmap(
    lambda v: st.sampled_from([v, -v])), min_size=1, max_size=3), min_size=1, max_size=8))
def test_sat_oracles_agree(clauses):
    n = 4
    brute = sat_brute_force(clauses, n)
    model = dpll(clauses, n)
    assert (brute is None) == (model is None)
    if brute is not None:
        assert all(any((brute[abs(l) - 1] == 1) == (l > 0) for l in c) for c in clauses)
    # brute force returns the lexicographically least model
    for bits in product((0, 1), repeat=n):
        if all(any((bits[abs(l) - 1] == 1) == (l > 0) for l in c) for c in clauses):
            assert brute == bits
            break
