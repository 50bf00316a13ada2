"""Brute-force ground truth: residue enumeration, bounded lift trees, SAT enumeration.

Nothing here calls the decision procedures; the oracle only shares the
basic p-adic arithmetic helpers with them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd, isqrt
from typing import Iterable, Sequence

from .padic import INFINITY, ord_p
from .sparse_poly import SparsePoly, evaluate_mod, partials

DEFAULT_BUDGET = 10 ** 8
DEFAULT_NODE_BUDGET = 10 ** 6

FEASIBLE = "Feasible"
INFEASIBLE_AT_DEPTH = "Infeasible-at-depth"
INCONCLUSIVE = "Inconclusive"


class OracleBudgetError(RuntimeError):
    pass


def roots_mod(f: SparsePoly, p: int, ell: int, budget: int = DEFAULT_BUDGET) -> list[tuple[int, ...]]:
    """Every root of f in (Z/p^ell)^n, by exhaustive evaluation.

    Points where a negative exponent meets a non-unit coordinate are skipped.
    """
    m = p ** ell
    n = f.nvars
    if m ** n > budget:
        raise OracleBudgetError(f"p^(ell*n) = {m ** n} exceeds the enumeration budget {budget}")
    out = []
    for pt in product(range(m), repeat=n):
        try:
            if evaluate_mod(f, pt, m) == 0:
                out.append(pt)
        except ValueError:
            continue
    return out


def newton_window(f: SparsePoly, p: int) -> list[int]:
    """Integral slopes of the lower hull of (exponent, ord c), computed directly."""
    pts = sorted((e[0], ord_p(c, p)) for c, e in f.terms)
    vals = set()
    for i, (a, u) in enumerate(pts):
        for b, w in pts[i + 1:]:
            # a segment is a lower edge iff no point lies strictly below its line
            if all((w - u) * (x - a) <= (y - u) * (b - a) for x, y in pts):
                num, den = u - w, b - a
                if num % den == 0:
                    vals.add(num // den)
    return sorted(vals)


def _squarefree_part(f: SparsePoly) -> SparsePoly:
    import sympy

    x = sympy.Symbol("x")
    lo = f.min_exponents()[0]
    expr = sum(sympy.Integer(c) * x ** (e[0] - lo) for c, e in f.terms)
    g = sympy.Poly(sympy.sqf_part(expr), x)
    g = g.primitive()[1]
    terms = [(int(c), (int(k[0]),)) for k, c in zip(g.monoms(), g.coeffs())]
    if lo > 0:
        terms = [(c, (e[0] + 1,)) for c, e in terms]  # keep x = 0 as a simple root
    return SparsePoly(1, terms)


def rational_reconstruction(a: int, m: int) -> Fraction | None:
    """r/s = a mod m with |r|, s <= sqrt(m/2), if such a fraction exists."""
    bound = isqrt(m // 2)
    r0, r1, s0, s1 = m, a % m, 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or gcd(s1, m) != 1:
        return None
    return Fraction(r1, s1)


@dataclass
class OracleResult:
    status: str
    certificate: object = None
    polynomial: SparsePoly | None = None  # the polynomial the certificate refers to
    nodes: int = 0
    trail: list[str] = field(default_factory=list)


def _stratum_poly(f: SparsePoly, p: int, choice: Sequence):
    """p^-kappa f(p^v z) on the coordinates with a valuation; None marks x_i = 0."""
    terms = []
    for c, e in f.terms:
        if any(v is None and a > 0 for v, a in zip(choice, e)):
            continue
        if any(v is None and a < 0 for v, a in zip(choice, e)):
            return None, None
        w = ord_p(c, p) + sum(v * a for v, a in zip(choice, e) if v is not None)
        terms.append((c, e, w))
    if not terms:
        return SparsePoly(f.nvars, []), 0
    kappa = min(w for _, _, w in terms)
    out = []
    for c, e, w in terms:
        shift = w - ord_p(c, p)
        scaled = Fraction(c) * Fraction(p) ** (shift - kappa)
        out.append((int(scaled), tuple(0 if v is None else a for v, a in zip(choice, e))))
    return SparsePoly(f.nvars, out), kappa


def _val(x: int, p: int, j: int):
    return INFINITY if x % p ** j == 0 else ord_p(x, p)


def _lift_tree(g: SparsePoly, p: int, free: list[int], depth: int, budget: list[int]):
    """Depth-first lift tree over unit residues on ``free``; other coordinates are 0.

    Returns ("found", z, j, i, k), ("dead",) or ("live", leaves).
    """
    n = g.nvars
    dg = partials(g)
    leaves = []

    def point(vals):
        pt = [0] * n
        for i, x in zip(free, vals):
            pt[i] = x
        return pt

    stack = [(list(z), 1) for z in reversed(list(product(range(1, p), repeat=len(free))))]
    while stack:
        z, j = stack.pop()
        budget[0] -= 1
        if budget[0] < 0:
            raise OracleBudgetError("lift-tree node budget exceeded")
        m = p ** j
        pt = point(z)
        if evaluate_mod(g, pt, m):
            continue
        ders = [(_val(evaluate_mod(dg[i], pt, m), p, j), i) for i in free]
        finite = [(k, i) for k, i in ders if k is not INFINITY]
        if finite:
            k, i = min(finite)
            if 2 * k + 1 <= j:
                return ("found", pt, j, i, k)
        if j >= depth:
            leaves.append(pt)
            continue
        for d in reversed(list(product(range(p), repeat=len(free)))):
            stack.append(([zi + di * m for zi, di in zip(z, d)], j + 1))
    return ("live", leaves) if leaves else ("dead",)


def _hensel_certificate(f: SparsePoly, p: int, choice, kappa, found):
    from .feasibility.certificates import certificate_from_hensel

    _, pt, j, i, k = found
    shift = [0 if v is None else v for v in choice]
    zeroed = [t for t, v in enumerate(choice) if v is None]
    if zeroed:
        big = 0
        for c, e in f.terms:
            w = ord_p(c, p) + sum(s * a for s, a in zip(shift, e)) - kappa
            tot = sum(e[t] for t in zeroed)
            if w < 0 and tot:
                big = max(big, -(-(-w) // tot))
        for t in zeroed:
            shift[t] = big
    return certificate_from_hensel(f, p, pt, i, k, j, shift=shift, scale=kappa,
                                   transcript=[f"oracle lift tree: valuations {list(choice)}, "
                                               f"depth {j}, derivative valuation {k}"])


def _exact_candidates(f: SparsePoly, p: int, choice, leaves, depth: int):
    m = p ** depth
    for pt in leaves:
        cand = []
        for v, z in zip(choice, pt):
            if v is None:
                cand.append(Fraction(0))
                continue
            r = rational_reconstruction(z, m)
            if r is None:
                break
            cand.append(r * Fraction(p) ** v)
        else:
            try:
                if f.evaluate(cand) == 0:
                    return cand
            except ZeroDivisionError:
                continue
    return None


def feas_oracle_qp(f: SparsePoly, p: int, window=None, depth: int = 6,
                   allow_zero: bool = True, squarefree: bool = True,
                   node_budget: int = DEFAULT_NODE_BUDGET) -> OracleResult:
    """Bounded Q_p feasibility by lift trees over every valuation pattern in the window.

    window: (vmin, vmax) for every coordinate, or one (vmin, vmax) per coordinate;
    univariate input defaults to the integral Newton slopes. Univariate
    input is first replaced by its squarefree part so that multiple roots
    become simple.
    """
    n = f.nvars
    trail = []
    if f.is_zero():
        return OracleResult(FEASIBLE, None, f, 0, ["zero polynomial"])
    g = f
    if n == 1 and squarefree and len(f) >= 2:
        g = _squarefree_part(f)
        if g.as_dict() != f.as_dict():
            trail.append(f"replaced by squarefree part {g}")
    if window is None:
        if n != 1:
            raise ValueError("a valuation window is required for multivariate input")
        ranges = [newton_window(g, p)] if len(g) >= 2 else [[]]
    elif len(window) == 2 and all(isinstance(w, int) for w in window):
        ranges = [list(range(window[0], window[1] + 1))] * n
    else:
        ranges = [list(range(a, b + 1)) for a, b in window]
    options = [list(r) + ([None] if allow_zero else []) for r in ranges]
    budget = [node_budget]
    live_any = False
    for choice in product(*options):
        h, kappa = _stratum_poly(g, p, choice)
        if h is None:
            continue
        free = [i for i, v in enumerate(choice) if v is not None]
        if h.is_zero():
            pt = [Fraction(0) if v is None else Fraction(p) ** v for v in choice]
            from .feasibility.certificates import Certificate

            cert = Certificate("exact_root", p, 0, pt, None, None,
                               [f"every term vanishes on the stratum {list(choice)}"])
            return OracleResult(FEASIBLE, cert, g, node_budget - budget[0], trail)
        if len(h) == 1 or not free:
            continue
        res = _lift_tree(h, p, free, depth, budget)
        if res[0] == "found":
            cert = _hensel_certificate(g, p, choice, kappa, res)
            return OracleResult(FEASIBLE, cert, g, node_budget - budget[0],
                                trail + [f"Hensel node for valuations {list(choice)}"])
        if res[0] == "live":
            exact = _exact_candidates(g, p, choice, res[1], depth)
            if exact is not None:
                from .feasibility.certificates import Certificate

                cert = Certificate("exact_root", p, 0, exact, None, None,
                                   ["exact rational root read off a stabilized residue"])
                return OracleResult(FEASIBLE, cert, g, node_budget - budget[0], trail)
            live_any = True
    used = node_budget - budget[0]
    if live_any:
        return OracleResult(INCONCLUSIVE, None, g, used, trail + ["live branches at full depth"])
    return OracleResult(INFEASIBLE_AT_DEPTH, None, g, used, trail + ["every branch died"])


def quadratic_window(coeffs: Sequence[int], p: int) -> list[tuple[int, int]]:
    """Per-coordinate valuation ranges that contain a root of c0 + sum ci xi^2 if one exists."""
    c0 = coeffs[0]
    o2 = ord_p(2, p)
    out = []
    for c in coeffs[1:]:
        diff = ord_p(c0, p) - ord_p(c, p)
        out.append(((diff - 2 * o2 - 2) // 2, -(-(diff + 2 * o2) // 2)))
    return out


def form_is_isotropic(coeffs: Sequence[int], p: int, depth: int = 6) -> bool:
    """Whether sum ci xi^2 = 0 has a nonzero solution in Q_p, by a projective lift tree.

    Coefficients are first reduced modulo squares so that every ord ci is 0 or 1;
    afterwards some partial derivative at a primitive zero has valuation at most
    ord_p(2) + 1, so depth 2 ord_p(2) + 3 already decides. ``depth`` must reach it.
    """
    cs = []
    for c in coeffs:
        if c == 0:
            return True
        v = ord_p(c, p)
        cs.append(c // p ** (v - v % 2))
    need = 2 * ord_p(2, p) + 3
    if depth < need:
        raise ValueError(f"depth {depth} is below the decisive depth {need}")
    n = len(cs)
    for lead in range(n):
        # primitive vectors whose first unit coordinate sits at position lead
        stack = [(list(z), 1) for z in product(range(p), repeat=n)
                 if z[lead] and not any(z[:lead])]
        while stack:
            z, j = stack.pop()
            m = p ** j
            if sum(c * x * x for c, x in zip(cs, z)) % m:
                continue
            finite = [k for k in (_val(2 * c * x, p, j) for c, x in zip(cs, z))
                      if k is not INFINITY]
            if finite and 2 * min(finite) + 1 <= j:
                return True
            if j < depth:
                for d in product(range(p), repeat=n):
                    stack.append(([x + di * m for x, di in zip(z, d)], j + 1))
    return False


def quadratic_oracle(coeffs: Sequence[int], p: int, depth: int = 6) -> bool:
    """c0 + sum ci xi^2 has a root over Q_p iff the form c0 x0^2 + sum ci xi^2 is isotropic."""
    return form_is_isotropic(list(coeffs), p, depth)


def hilbert_brute_force(a: int, b: int, p: int, depth: int = 6) -> int:
    """(a, b)_p from isotropy of a x^2 + b y^2 - z^2."""
    return 1 if form_is_isotropic([a, b, -1], p, depth) else -1


# Boolean satisfiability

def _check_clauses(clauses: Iterable[Sequence[int]], nvars: int) -> list[list[int]]:
    out = []
    for cl in clauses:
        lits = [int(l) for l in cl]
        if any(l == 0 or abs(l) > nvars for l in lits):
            raise ValueError(f"literal out of range in clause {lits}")
        out.append(lits)
    return out


def sat_brute_force(clauses: Iterable[Sequence[int]], nvars: int) -> tuple[int, ...] | None:
    """First satisfying assignment in lexicographic order (y1 most significant), or None.

    Literals are signed variable indices, DIMACS style.
    """
    if nvars > 20:
        raise ValueError("brute force is limited to 20 variables")
    cls = _check_clauses(clauses, nvars)
    for bits in product((0, 1), repeat=nvars):
        if all(any((bits[abs(l) - 1] == 1) == (l > 0) for l in cl) for cl in cls):
            return bits
    return None


def dpll(clauses: Iterable[Sequence[int]], nvars: int) -> dict[int, bool] | None:
    """Independent satisfiability check by unit propagation and branching."""
    cls = [frozenset(c) for c in _check_clauses(clauses, nvars)]

    def simplify(cs, lit):
        out = []
        for c in cs:
            if lit in c:
                continue
            out.append(c - {-lit})
        return out

    def solve(cs, assign):
        while True:
            if any(not c for c in cs):
                return None
            units = [next(iter(c)) for c in cs if len(c) == 1]
            if not units:
                break
            lit = units[0]
            assign = dict(assign, **{str(abs(lit)): lit > 0})
            cs = simplify(cs, lit)
        if not cs:
            return assign
        lit = next(iter(cs[0]))
        for choice in (lit, -lit):
            res = solve(simplify(cs, choice), dict(assign, **{str(abs(choice)): choice > 0}))
            if res is not None:
                return res
        return None

    res = solve(cls, {})
    if res is None:
        return None
    return {i: res.get(str(i), False) for i in range(1, nvars + 1)}
