from math import prod

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from padicfeas.hardness import (BinomialProduct, CnfError, CnfInstance, collapse_to_single,
                                combine_system, plaisted, read_dimacs, reduce_3sat,
                                roots_of_unity_transfer_check)
from padicfeas.oracle import sat_brute_force

P3 = [2, 3, 5]


def test_literal_images():
    # y1 over P = (2, 3): zeros at d in {1, 3}, i.e. x^3 - 1
    assert plaisted(1, [2, 3]).factors == ((3, 1),)
    x = sympy.symbols("x")
    for lit in (1, -1, 2, -2):
        f = plaisted(lit, [2, 3]).expand()
        expr = sum(c * x ** e[0] for c, e in f.terms)
        zeros = {d for d in (1, 2, 3, 6)
                 if sympy.rem(expr, sympy.cyclotomic_poly(d, x), x) == 0}
        q = [2, 3][abs(lit) - 1]
        assert zeros == {d for d in (1, 2, 3, 6) if (d % q != 0) == (lit > 0)}


def test_frozen_factor_lists():
    assert plaisted(1, P3).factors == ((15, 1),)
    assert plaisted(-1, P3).factors == ((15, -1), (30, 1))
    assert plaisted((1, 2), P3).factors == ((5, -1), (10, 1), (15, 1))


@given(st.lists(st.integers(1, 60), min_size=0, max_size=6, unique=True))
def test_cyclotomic_round_trip(S):
    assert BinomialProduct.from_cyclotomic_indices(S).cyclotomic_indices() == frozenset(S)


def test_expand_matches_sympy():
    x = sympy.symbols("x")
    b = BinomialProduct.from_cyclotomic_indices([1, 2, 6, 15])
    f = b.expand()
    mine = sum(c * x ** e[0] for c, e in f.terms)
    want = sympy.expand(prod(sympy.cyclotomic_poly(d, x) for d in [1, 2, 6, 15]))
    assert sympy.expand(mine - want) == 0


def test_dimacs_parsing():
    cnf = read_dimacs("c demo\np cnf 3 2\n1 -2 0\n2 3 -1 0\n")
    assert cnf.clauses == ((1, -2), (2, 3, -1))
    for bad in ("1 2 0\n", "p cnf 2 1\n1 5 0\n", "p cnf 2 2\n1 0\n", "p cnf 2 1\n1 x 0\n"):
        with pytest.raises(CnfError):
            read_dimacs(bad)
    with pytest.raises(CnfError):
        CnfInstance(4, ((1, 2, 3, 4),))


clause = st.lists(st.integers(1, 3).flatmap(lambda v: st.sampled_from([v, -v])),
                  min_size=1, max_size=3)


@settings(max_examples=30, deadline=None)
@given(st.lists(clause, min_size=1, max_size=5))
def test_reduction_preserves_satisfiability(clauses):
    cnf = CnfInstance(3, tuple(tuple(c) for c in clauses))
    system, D = reduce_3sat(cnf, P3)
    common = combine_system(system, D).cyclotomic_indices()
    sat = sat_brute_force(cnf.clauses, 3) is not None
    assert bool(common) == sat
    # d encodes y_i false iff p_i | d
    for d in common:
        bits = [0 if d % q == 0 else 1 for q in P3]
        assert cnf.is_satisfied_by(bits)
    p = 31  # 30 | p - 1
    assert roots_of_unity_transfer_check(system, D, p) == sat


def test_collapse():
    f = BinomialProduct.from_cyclotomic_indices([3]).expand()
    g = collapse_to_single(f, 6, 7)
    # x^2 + x + 1 shares its roots with x^6 - 1, so g vanishes there mod 7
    for z in range(1, 7):
        if pow(z, 3, 7) == 1 and z != 1:
            assert sum(c * z ** e[0] for c, e in g.terms) % 7 == 0
