"""x^d = c over Q_p, and square binomial systems x^A = c."""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from ..intlinalg import (det_int, monomial_substitution, smith_normal_form,
                         solve_integer_row)
from ..padic import ord_p, rational_mod, unit_part
from .certificates import Certificate, FeasibilityVerdict, feasible, hensel_lift, infeasible
from ..sparse_poly import SparsePoly
from .modroots import binomial_root_mod_p


def _unit_is_power(u: Fraction, d: int, p: int) -> bool:
    """Whether a p-adic unit u is a d-th power in Z_p^* (d > 0).

    Odd p: the order test in the cyclic group (Z/p^(2l+1))^*, l = ord_p d.
    p = 2: units that are 2^l-th powers are exactly those = 1 mod 2^(l+2).
    """
    l = ord_p(d, p)
    if p == 2:
        if l == 0:
            return True
        return rational_mod(u, 2 ** (l + 2)) == 1
    N = 2 * l + 1
    mod = p ** N
    group_order = p ** (N - 1) * (p - 1)
    a = rational_mod(u, mod)
    return pow(a, group_order // gcd(d, group_order), mod) == 1


def power_witness(u: Fraction, d: int, p: int, N: int | None = None) -> int | None:
    """A unit w with w^d = u mod p^N, N >= 2 ord_p(d) + 1; None if none exists."""
    l = ord_p(d, p)
    N = 2 * l + 1 if N is None else N
    if l == 0:
        w = binomial_root_mod_p(rational_mod(u, p), d, p)
        if w is None:
            return None
        if N == 1:
            return w
        poly = SparsePoly(1, [(1, (d,)), (-rational_mod(u, p ** N), (0,))])
        return hensel_lift(poly, [w], 0, 0, p, N)[0]
    # p divides d, so p <= d: depth-first digit search mod p^(2l+1)
    target_exp = 2 * l + 1
    ut = rational_mod(u, p ** target_exp)

    def extend(w: int, j: int):
        if j == target_exp:
            return w
        m = p ** (j + 1)
        for t in range(p):
            cand = w + t * p ** j
            if pow(cand, d, m) == ut % m:
                found = extend(cand, j + 1)
                if found is not None:
                    return found
        return None

    w = None
    for w0 in range(1, p):
        if pow(w0, d, p) == ut % p:
            w = extend(w0, 1)
            if w is not None:
                break
    if w is None:
        return None
    if N > target_exp:
        poly = SparsePoly(1, [(1, (d,)), (-rational_mod(u, p ** N), (0,))])
        w = hensel_lift(poly, [w], 0, l, p, N)[0]
    return w % p ** N


def feas_binomial(c, d: int, p: int) -> FeasibilityVerdict:
    """Decide x^d = c over Q_p for nonzero rational c and nonzero integer d."""
    c = Fraction(c)
    if c == 0:
        raise ValueError("c must be nonzero")
    if d == 0:
        raise ValueError("d must be nonzero")
    if d < 0:
        c, d = 1 / c, -d
    v = ord_p(c, p)
    data = {"value": c, "power": d}
    if v % d:
        cert = Certificate("valuation_obstruction", p, transcript=[
            f"ord_p(c) = {v} is not divisible by d = {d}"], data=data)
        return infeasible(f"{d} does not divide ord_p(c) = {v}", cert)
    u = unit_part(c, p)
    l = ord_p(d, p)
    decided = _unit_is_power(u, d, p)
    if not decided:
        cert = Certificate("valuation_obstruction", p, transcript=[
            f"unit part {u} is not a {d}-th power modulo p^{2 * l + 1}"],
            data=dict(data, obstruction="unit"))
        return infeasible("unit part is not a d-th power", cert)
    w = power_witness(u, d, p)
    if w is None:
        raise AssertionError("power criterion and witness search disagree")
    ell = 2 * l + 1
    cert = Certificate("binomial_witness", p, ell, [w], 0, l, [
        f"x^{d} = {c}: ord_p(c) = {v} divisible by {d}",
        f"unit part {u} has the {d}-th root witness {w} mod p^{ell}",
    ], data=data)
    return feasible(cert, "binomial root exists")


def _witness_is_valid(u: Fraction, d: int, p: int, cert: Certificate) -> bool:
    ell, k = cert.ell, cert.deriv_valuation
    if not isinstance(ell, int) or not isinstance(k, int) or cert.root is None:
        return False
    if len(cert.root) != 1 or k != ord_p(d, p) or 2 * k + 1 > ell:
        return False
    w = cert.root[0]
    mod = p ** ell
    if not isinstance(w, int) or not 0 <= w < mod or w % p == 0:
        return False
    return pow(w, d, mod) == rational_mod(u, mod)


def verify_binomial_witness(f: SparsePoly, p: int, cert: Certificate) -> bool:
    """f = x^b * F(x^d) with F(value) = 0 exactly, and x^d = value solvable."""
    try:
        value = Fraction(str(cert.data["value"]))
        d = int(cert.data["power"])
    except (KeyError, ValueError, TypeError, ZeroDivisionError):
        return False
    if d <= 0 or value == 0 or f.nvars != 1 or f.is_zero():
        return False
    exps = [e[0] for e in f.exponents]
    b = min(exps)
    if any((a - b) % d for a in exps):
        return False
    total = sum(Fraction(c) * value ** ((e[0] - b) // d) for c, e in f.terms)
    if total != 0:
        return False
    v = ord_p(value, p)
    if v % d:
        return False
    return _witness_is_valid(unit_part(value, p), d, p, cert)


def verify_valuation_obstruction(f: SparsePoly, p: int, cert: Certificate) -> bool:
    """Re-derive that a binomial f has no nonzero root in Q_p."""
    if f.nvars != 1 or len(f) != 2:
        return False
    (c1, (a1,)), (c2, (a2,)) = f.terms
    value, d = Fraction(-c1, c2), a2 - a1
    if value != Fraction(str(cert.data.get("value", "0"))) or d != int(cert.data.get("power", 0)):
        return False
    if a1 > 0:
        return False  # x = 0 is a root
    if ord_p(value, p) % d:
        return True
    return not _unit_is_power(unit_part(value, p), d, p)


def binomial_of(f: SparsePoly) -> tuple[Fraction, int]:
    """For c1 x^a1 + c2 x^a2 (a1 < a2): the equation x^(a2-a1) = -c1/c2."""
    (c1, (a1,)), (c2, (a2,)) = f.terms
    return Fraction(-c1, c2), a2 - a1


# binomial systems

def feas_binomial_system(A: Sequence[Sequence[int]], c: Sequence, p: int):
    """Decide x^A = c in (Q_p^*)^n, where (x^A)_j = prod_i x_i^A[i][j]."""
    n = len(A)
    A = [list(map(int, r)) for r in A]
    if det_int(A) == 0:
        raise ValueError("singular exponent matrix")
    c = [Fraction(x) for x in c]
    if any(x == 0 for x in c):
        raise ValueError("right-hand sides must be nonzero")
    F = smith_normal_form(A)
    s = F.diagonal
    ords = [ord_p(x, p) for x in c]
    transcript = [f"Smith invariants {s}"]
    # condition (a): valuations solvable, i.e. ord(c) * V = 0 mod S
    for i in range(n):
        lhs = sum(ords[j] * F.V[j][i] for j in range(n))
        if lhs % s[i]:
            cert = Certificate("valuation_obstruction", p, transcript=transcript + [
                f"valuation condition fails at invariant {i}: {lhs} mod {s[i]} != 0"])
            return infeasible("valuation condition fails", cert)
    shift = solve_integer_row(ords, A)
    units = [unit_part(x, p) for x in c]
    # y^S = u^V, coordinate by coordinate
    delta = ord_p(abs(det_int(A)), p)
    ell = 2 * delta + 1
    ys = []
    for i in range(n):
        target = Fraction(1)
        for j in range(n):
            target *= units[j] ** F.V[j][i]
        sub = feas_binomial(target, s[i], p)
        transcript.append(f"y_{i + 1}^{s[i]} = {target}: {sub.answer.value}")
        if not sub.feasible:
            cert = Certificate("valuation_obstruction", p, transcript=transcript)
            return infeasible(f"unit equation {i + 1} has no root", cert)
        ys.append(power_witness(target, s[i], p, ell))
    x_units = monomial_substitution(ys, F.U, p ** ell)
    cert = Certificate("binomial_witness", p, ell, x_units, None, delta, transcript,
                       transform={"shift": shift, "scale": 0},
                       data={"system": True})
    return feasible(cert, "binomial system has a root")


def verify_binomial_system(A, c, p: int, cert: Certificate) -> bool:
    """Check x = p^shift * root solves x^A = c modulo p^(2 ord det A + 1) with units."""
    n = len(A)
    try:
        shift = list(cert.transform["shift"])
    except (TypeError, KeyError):
        return False
    if cert.root is None or len(cert.root) != n or len(shift) != n:
        return False
    c = [Fraction(x) for x in c]
    delta = ord_p(abs(det_int(A)), p)
    if cert.ell < 2 * delta + 1:
        return False
    for j in range(n):
        if sum(shift[i] * A[i][j] for i in range(n)) != ord_p(c[j], p):
            return False
    mod = p ** cert.ell
    if any(not isinstance(r, int) or r % p == 0 or not 0 <= r < mod for r in cert.root):
        return False
    vals = monomial_substitution(cert.root, A, mod)
    return all(v == rational_mod(unit_part(cj, p), mod) for v, cj in zip(vals, c))
