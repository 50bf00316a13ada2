"""Integer matrices: determinants, Hermite and Smith normal forms."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .padic import PadicContext, ext_gcd, inverse_mod

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(A))]


def transpose(A: Matrix) -> Matrix:
    return [list(r) for r in zip(*A)] if A else []


def det_int(A: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(map(int, row)) for row in A]
    if any(len(r) != n for r in M):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        rowk = M[k]
        for i in range(k + 1, n):
            rowi = M[i]
            mik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (pivot * rowi[j] - mik * rowk[j]) // prev
            rowi[k] = 0
        prev = pivot
    return sign * M[n - 1][n - 1]


def inverse_rational(A: Matrix) -> list[list[Fraction]]:
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return [row[n:] for row in M]


def unimodular_inverse(U: Matrix) -> Matrix:
    inv = inverse_rational(U)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


@dataclass(frozen=True)
class HermiteFactorization:
    U: Matrix
    H: Matrix


@dataclass(frozen=True)
class SmithFactorization:
    U: Matrix
    S: Matrix
    V: Matrix

    @property
    def diagonal(self) -> list[int]:
        return [self.S[i][i] for i in range(min(len(self.S), len(self.S[0]) if self.S else 0))]


def _row_combine(M: Matrix, i: int, j: int, a: int, b: int, c: int, d: int):
    # rows (i, j) <- (a*row_i + b*row_j, c*row_i + d*row_j)
    ri, rj = M[i], M[j]
    M[i] = [a * x + b * y for x, y in zip(ri, rj)]
    M[j] = [c * x + d * y for x, y in zip(ri, rj)]


def _col_combine(M: Matrix, i: int, j: int, a: int, b: int, c: int, d: int):
    # columns (i, j) <- (a*col_i + b*col_j, c*col_i + d*col_j)
    for row in M:
        x, y = row[i], row[j]
        row[i] = a * x + b * y
        row[j] = c * x + d * y


def hermite_normal_form(A: Sequence[Sequence[int]]) -> HermiteFactorization:
    """Row-style HNF: U*A = H, H upper triangular with reduced entries above pivots."""
    H = [list(map(int, r)) for r in A]
    n = len(H)
    m = len(H[0]) if n else 0
    U = identity(n)
    r = 0
    for c in range(m):
        if r >= n:
            break
        for i in range(r + 1, n):
            if H[i][c] == 0:
                continue
            if H[r][c] == 0:
                H[r], H[i] = H[i], H[r]
                U[r], U[i] = U[i], U[r]
                continue
            g, s, t = ext_gcd(H[r][c], H[i][c])
            a, b = H[r][c] // g, H[i][c] // g
            _row_combine(H, r, i, s, t, -b, a)
            _row_combine(U, r, i, s, t, -b, a)
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        piv = H[r][c]
        for i in range(r):
            q = H[i][c] // piv
            if q:
                H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return HermiteFactorization(U, H)


def smith_normal_form(A: Sequence[Sequence[int]]) -> SmithFactorization:
    """U*A*V = S with S diagonal, s_ii | s_(i+1)(i+1), U and V unimodular."""
    S = [list(map(int, r)) for r in A]
    n = len(S)
    m = len(S[0]) if n else 0
    U = identity(n)
    V = identity(m)
    for t in range(min(n, m)):
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, m):
                    if S[i][j] and (best is None or abs(S[i][j]) < abs(S[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            i, j = best
            if i != t:
                S[t], S[i] = S[i], S[t]
                U[t], U[i] = U[i], U[t]
            if j != t:
                for M in (S, V):
                    for row in M:
                        row[t], row[j] = row[j], row[t]
            # plain elimination when the pivot divides; otherwise a gcd step,
            # which strictly shrinks |pivot| and so guarantees termination
            for i in range(t + 1, n):
                if S[i][t]:
                    if S[i][t] % S[t][t] == 0:
                        q = S[i][t] // S[t][t]
                        _row_combine(S, t, i, 1, 0, -q, 1)
                        _row_combine(U, t, i, 1, 0, -q, 1)
                        continue
                    g, s, u = ext_gcd(S[t][t], S[i][t])
                    a, b = S[t][t] // g, S[i][t] // g
                    _row_combine(S, t, i, s, u, -b, a)
                    _row_combine(U, t, i, s, u, -b, a)
            for j in range(t + 1, m):
                if S[t][j]:
                    if S[t][j] % S[t][t] == 0:
                        q = S[t][j] // S[t][t]
                        _col_combine(S, t, j, 1, 0, -q, 1)
                        _col_combine(V, t, j, 1, 0, -q, 1)
                        continue
                    g, s, u = ext_gcd(S[t][t], S[t][j])
                    a, b = S[t][t] // g, S[t][j] // g
                    _col_combine(S, t, j, s, u, -b, a)
                    _col_combine(V, t, j, s, u, -b, a)
            if any(S[i][t] for i in range(t + 1, n)):
                continue
            piv = S[t][t]
            bad = next(((i, j) for i in range(t + 1, n) for j in range(t + 1, m)
                        if S[i][j] % piv), None)
            if bad is None:
                break
            # pull the offending row up so the gcd step can shrink the pivot
            i = bad[0]
            S[t] = [x + y for x, y in zip(S[t], S[i])]
            U[t] = [x + y for x, y in zip(U[t], U[i])]
        if t < n and t < m and S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
    return SmithFactorization(U, S, V)


def monomial_substitution(point: Sequence[int], M: Sequence[Sequence[int]],
                          ctx: PadicContext | int) -> list[int]:
    """x^M mod p^ell: coordinate j is prod_i x_i^(M[i][j])."""
    mod = ctx.modulus if isinstance(ctx, PadicContext) else int(ctx)
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if len(point) != rows:
        raise ValueError("point length must equal the number of matrix rows")
    invs: dict[int, int] = {}
    out = []
    for j in range(cols):
        acc = 1 % mod
        for i in range(rows):
            e = M[i][j]
            if e >= 0:
                acc = acc * pow(point[i], e, mod) % mod
            else:
                if i not in invs:
                    try:
                        invs[i] = inverse_mod(point[i], mod)
                    except ZeroDivisionError:
                        raise ValueError(f"coordinate {point[i]} not invertible mod {mod}") from None
                acc = acc * pow(invs[i], -e, mod) % mod
        out.append(acc)
    return out


def monomial_substitution_exact(point: Sequence, M: Sequence[Sequence[int]]) -> list[Fraction]:
    """Exact rational version of monomial_substitution."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    out = []
    for j in range(cols):
        acc = Fraction(1)
        for i in range(rows):
            if M[i][j]:
                acc *= Fraction(point[i]) ** M[i][j]
        out.append(acc)
    return out


def solve_integer_row(w: Sequence[int], A: Matrix) -> list[int] | None:
    """Integer row vector t with t*A = w, or None if none exists (A nonsingular)."""
    inv = inverse_rational(A)
    n = len(A)
    t = [sum(Fraction(w[k]) * inv[k][j] for k in range(n)) for j in range(n)]
    if any(x.denominator != 1 for x in t):
        return None
    return [int(x) for x in t]
