"""Diagonal quadratics c0 + c1 x1^2 + ... + cn xn^2 via Hilbert symbols."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..padic import hilbert, is_square_qp, square_class
from ..sparse_poly import SparsePoly
from .certificates import Certificate, feasible, infeasible


def _invariants(cs: Sequence[int], p: int) -> tuple[int, int]:
    d = 1
    for c in cs:
        d *= c
    eps = 1
    for i in range(len(cs)):
        for j in range(i + 1, len(cs)):
            eps *= hilbert(cs[i], cs[j], p)
    return d, eps


def quadratic_criterion(c0: int, cs: Sequence[int], p: int) -> tuple[bool, list[str]]:
    """Whether c0 + sum ci xi^2 has a root in Q_p^n, with a human-readable trail."""
    n = len(cs)
    if c0 == 0 or any(c == 0 for c in cs):
        raise ValueError("all coefficients must be nonzero")
    d, eps = _invariants(cs, p)
    trail = [f"n = {n}, discriminant d = {d}, epsilon = {eps}"]
    if n == 0:
        return False, trail + ["nonzero constant"]
    if n == 1:
        ratio = Fraction(-c0, cs[0])
        ok = is_square_qp(ratio, p)
        trail.append(f"-c0/c1 = {ratio} is {'a' if ok else 'not a'} square in Q_p")
        return ok, trail
    if n == 2:
        h = hilbert(-c0, -d, p)
        trail.append(f"(-c0, -d)_p = {h}")
        return h == eps, trail
    if n == 3:
        same = square_class(c0, p) == square_class(d, p)
        if not same:
            trail.append("c0 and d lie in different square classes")
            return True, trail
        h = hilbert(-1, -d, p)
        trail.append(f"c0 ~ d; (-1, -d)_p = {h}")
        return h == eps, trail
    trail.append("at least four variables: always isotropic")
    return True, trail


def diagonal_quadratic_coeffs(f: SparsePoly) -> tuple[int, list[int]] | None:
    """(c0, [c1..cn]) if f is c0 + sum ci xi^2 with every ci nonzero, else None."""
    n = f.nvars
    d = f.as_dict()
    zero = (0,) * n
    if zero not in d or len(d) != n + 1:
        return None
    cs = []
    for i in range(n):
        e = tuple(2 if j == i else 0 for j in range(n))
        if e not in d:
            return None
        cs.append(d[e])
    return d[zero], cs


def feas_quadratic_diagonal(coeffs: Sequence[int], p: int):
    """coeffs = (c0, c1, ..., cn), all nonzero."""
    c0, cs = int(coeffs[0]), [int(c) for c in coeffs[1:]]
    ok, trail = quadratic_criterion(c0, cs, p)
    cert = Certificate("quadratic_symbolic", p, transcript=trail,
                       data={"claim": "Feasible" if ok else "Infeasible",
                             "coefficients": [c0] + cs})
    if ok:
        return feasible(cert, "quadratic form represents -c0")
    return infeasible("quadratic form does not represent -c0", cert)


def verify_quadratic_symbolic(f: SparsePoly, p: int, cert: Certificate) -> bool:
    parsed = diagonal_quadratic_coeffs(f)
    if parsed is None:
        return False
    c0, cs = parsed
    claim = cert.data.get("claim")
    if claim not in ("Feasible", "Infeasible"):
        return False
    ok, _ = quadratic_criterion(c0, cs, p)
    return ok == (claim == "Feasible")
