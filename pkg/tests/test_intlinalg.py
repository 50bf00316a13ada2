import sympy
from hypothesis import given, strategies as st

from padicfeas.intlinalg import (det_int, hermite_normal_form, matmul, monomial_substitution,
                                 monomial_substitution_exact, smith_normal_form,
                                 solve_integer_row, unimodular_inverse)

square = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n),
                       min_size=n, max_size=n))


def test_smith_frozen():
    A = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    F = smith_normal_form(A)
    assert F.diagonal == [2, 6, 12]
    assert matmul(matmul(F.U, A), F.V) == F.S


@given(square)
def test_det_matches_sympy(A):
    assert det_int(A) == sympy.Matrix(A).det()


@given(square)
def test_smith_factorization(A):
    F = smith_normal_form(A)
    assert matmul(matmul(F.U, A), F.V) == F.S
    assert abs(det_int(F.U)) == 1 and abs(det_int(F.V)) == 1
    d = F.diagonal
    nz = [x for x in d if x]
    assert all(x >= 0 for x in d)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert abs(det_int(A)) == (0 if len(nz) < len(d) else abs(sympy.prod(d)))


@given(square)
def test_hermite_factorization(A):
    H = hermite_normal_form(A)
    assert matmul(H.U, A) == H.H
    assert abs(det_int(H.U)) == 1
    U_inv = unimodular_inverse(H.U)
    assert matmul(U_inv, H.H) == A


@given(square, st.data())
def test_solve_integer_row(A, data):
    if det_int(A) == 0:
        return
    t = data.draw(st.lists(st.integers(-5, 5), min_size=len(A), max_size=len(A)))
    w = [sum(t[k] * A[k][j] for k in range(len(A))) for j in range(len(A))]
    assert solve_integer_row(w, A) == t


def test_monomial_substitution():
    M = [[1, 2], [-1, 0]]
    pt = [3, 5]
    mod = 7 ** 2
    out = monomial_substitution(pt, M, mod)
    exact = monomial_substitution_exact(pt, M)
    assert exact == [sympy.Rational(3, 5), 9]
    assert out[0] == 3 * pow(5, -1, mod) % mod and out[1] == 9
