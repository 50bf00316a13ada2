"""Sylvester resultants, univariate A-discriminants, and trinomial discriminant facts.

Sign conventions: ``resultant`` returns the classical resultant, which
satisfies R(f, g) = lc(f)^deg(g) * prod g(root) over the roots of f. The
ascending-coefficient Sylvester layout in ``sylvester_matrix`` has
determinant (-1)^(d d') times that. ``a_discriminant`` is normalized so
that it equals ``trinomial_discriminant`` and gives c2^2 - 4 c1 c3 for
quadratics.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .gcdfree import power_product_is_one
from .intlinalg import det_int
from .padic import ext_gcd
from .sparse_poly import SparsePoly, univariate_dense

DEFAULT_ROW_CAP = 10_000


class TooLargeError(ValueError):
    pass


def _coeff_list(f: SparsePoly | Sequence[int], d: int) -> list[int]:
    if isinstance(f, SparsePoly):
        dense = univariate_dense(f)
    else:
        dense = list(f)
    if len(dense) > d + 1 and any(dense[d + 1:]):
        raise ValueError(f"degree exceeds the declared bound {d}")
    return (dense + [0] * (d + 1))[:d + 1]


def sylvester_matrix(f, g, d: int, dp: int, row_cap: int = DEFAULT_ROW_CAP) -> list[list[int]]:
    """(d+d') square matrix: d' shifted rows of f, then d shifted rows of g, ascending."""
    if d < 0 or dp < 0:
        raise ValueError("dimensions must be natural")
    size = d + dp
    if size > row_cap:
        raise TooLargeError(f"Sylvester matrix of {size} rows exceeds the cap of {row_cap}")
    fc = _coeff_list(f, d)
    gc = _coeff_list(g, dp)
    rows = []
    for i in range(dp):
        rows.append([0] * i + fc + [0] * (size - d - 1 - i))
    for i in range(d):
        rows.append([0] * i + gc + [0] * (size - dp - 1 - i))
    return rows


def resultant(f, g, d: int, dp: int, row_cap: int = DEFAULT_ROW_CAP) -> int:
    """Classical resultant of f (degree <= d) and g (degree <= d')."""
    if d + dp == 0:
        return 1
    det = det_int(sylvester_matrix(f, g, d, dp, row_cap))
    return -det if (d * dp) % 2 else det


def _normalized_support(f: SparsePoly) -> tuple[list[int], list[int]]:
    if f.nvars != 1:
        raise ValueError("A-discriminants here are univariate")
    if len(f) < 2:
        raise ValueError("A-discriminant needs at least two terms")
    exps = [e[0] for e in f.exponents]
    base = exps[0]
    g = 0
    for a in exps:
        g = gcd(g, a - base)
    return [(a - base) // g for a in exps], f.coeffs


def a_discriminant(f: SparsePoly, row_cap: int = DEFAULT_ROW_CAP) -> int:
    """A-discriminant of a univariate polynomial with at least two terms."""
    abar, cs = _normalized_support(f)
    dm = abar[-1]
    fbar = [0] * (dm + 1)
    for a, c in zip(abar, cs):
        fbar[a] = c
    shift = abar[1] - 1
    deriv = [0] * (dm - abar[1] + 1)
    for a, c in zip(abar[1:], cs[1:]):
        deriv[a - 1 - shift] = a * c
    det = det_int(sylvester_matrix(fbar, deriv, dm, dm - abar[1], row_cap)) \
        if dm + dm - abar[1] else 1
    denom = cs[-1] ** (abar[-1] - abar[-2])
    q, r = divmod(det, denom)
    if r:
        raise ArithmeticError("non-exact division in A-discriminant")
    return -q if (dm - 1) % 2 else q


def trinomial_discriminant(c1: int, c2: int, c3: int, a2: int, a3: int) -> int:
    """Closed form for c1 + c2 x^a2 + c3 x^a3 with 0 < a2 < a3 coprime."""
    _check_trinomial(c1, c2, c3, a2, a3)
    return ((a3 - a2) ** (a3 - a2) * a2 ** a2 * c2 ** a3
            - (-a3) ** a3 * c1 ** (a3 - a2) * c3 ** a2)


def _check_trinomial(c1, c2, c3, a2, a3):
    if not 0 < a2 < a3:
        raise ValueError("need 0 < a2 < a3")
    if gcd(a2, a3) != 1:
        raise ValueError("exponents must be coprime; normalize first")
    if 0 in (c1, c2, c3):
        raise ValueError("coefficients must be nonzero")


def _sign(x: int) -> int:
    return 1 if x > 0 else -1


def trinomial_discriminant_is_zero(c1: int, c2: int, c3: int, a2: int, a3: int) -> bool:
    """Decide whether the closed form vanishes, without expanding the powers."""
    _check_trinomial(c1, c2, c3, a2, a3)
    s1 = _sign(c2) ** (a3 % 2)
    s2 = (-1) ** (a3 % 2) * _sign(c1) ** ((a3 - a2) % 2) * _sign(c3) ** (a2 % 2)
    if s1 != s2:
        return False
    alphas = [a3 - a2, a2, abs(c2), a3, abs(c1), abs(c3)]
    us = [a3 - a2, a2, a3, -a3, -(a3 - a2), -a2]
    return power_product_is_one(alphas, us)


def degenerate_power_pair(c1, c2, c3, a2, a3) -> tuple[Fraction, Fraction]:
    """(zeta^a2, zeta^a3) for the degenerate root of c1 + c2 x^a2 + c3 x^a3."""
    base = Fraction(c1, a3 - a2)
    return base * Fraction(-a3, c2), base * Fraction(a2, c3)


def degenerate_root_trinomial(c1: int, c2: int, c3: int, a2: int, a3: int):
    """The unique degenerate root; for non-coprime exponents the power pair."""
    if not 0 < a2 < a3 or 0 in (c1, c2, c3):
        raise ValueError("need a trinomial c1 + c2 x^a2 + c3 x^a3 with 0 < a2 < a3")
    g = gcd(a2, a3)
    if not trinomial_discriminant_is_zero(c1, c2, c3, a2 // g, a3 // g):
        raise ValueError("no degenerate root: discriminant is nonzero")
    u, w = degenerate_power_pair(c1, c2, c3, a2, a3)
    if g != 1:
        return u, w
    _, A, B = ext_gcd(a2, a3)
    return u ** A * w ** B
