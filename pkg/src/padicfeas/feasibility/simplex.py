"""Honest n-variate (n+1)-nomials: certificate search and the point-count shortcut.

A torus root x = p^t z (z a unit vector) makes
p^-kappa h(p^t z) = sum_j u_j p^delta_j z^b_j with unit u_j, delta_j >= 0 and
at least two delta_j = 0 (the initial term polynomial). Only the deltas
capped at C = 2e + 1 matter, where e is the largest valuation of a Smith
invariant: at any unit root some partial derivative has valuation <= e, so
a lift tree of depth C on the capped polynomial is complete.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from ..intlinalg import det_int, smith_normal_form
from ..padic import INFINITY, ord_p, rational_mod, unit_part
from ..sparse_poly import SparsePoly, exponent_matrix
from .certificates import (Certificate, FeasibilityVerdict, HenselError,
                           certificate_from_hensel, feasible, infeasible, unknown)

NODE_BUDGET = 2_000_000
GROUP_BUDGET = 1_000_000


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class _Found:
    z: list[int]        # unit residues on the free coordinates
    depth: int
    index: int          # position in the free-coordinate list
    k: int
    shift: list[int]    # on the free coordinates
    kappa: int
    delta: tuple


class _Stratum:
    """Torus search for the terms of f that survive x_I = 0, over the free variables."""

    def __init__(self, terms, free: list[int], p: int):
        self.p = p
        self.free = free
        base = next((j for j, (_, e) in enumerate(terms) if not any(e[i] for i in free)), 0)
        order = [base] + [j for j in range(len(terms)) if j != base]
        self.coeffs = [Fraction(terms[j][0]) for j in order]
        self.base_exp = terms[base][1]
        self.exps = [[terms[j][1][i] - self.base_exp[i] for i in free] for j in order]
        # B: free x (m-1), column j is b_(j+1)
        m = len(order)
        self.B = [[self.exps[j][r] for j in range(1, m)] for r in range(len(free))]
        self.snf = smith_normal_form(self.B)
        self.s = self.snf.diagonal
        if len(self.s) < m - 1 or any(x == 0 for x in self.s):
            raise ValueError("support is not affinely independent")
        self.e = max([ord_p(x, p) for x in self.s] or [0])
        self.C = 2 * self.e + 1
        self.D = self.s[-1] if self.s else 1
        self.ords = [ord_p(c, p) for c in self.coeffs]
        self.units = [unit_part(c, p) for c in self.coeffs]

    # lattice realizability

    def _membership_residue(self, r: Sequence[int]) -> list[int]:
        V = self.snf.V
        return [sum(r[j] * V[j][i] for j in range(len(r))) % self.s[i]
                for i in range(len(self.s))]

    def _closure(self, gens: list[int]):
        """Elements of the subgroup generated by rows of V (mod s), with coefficients."""
        V, s = self.snf.V, self.s
        zero = tuple(0 for _ in s)
        seen = {zero: {}}
        frontier = [zero]
        steps = [(j, tuple(V[j][i] % s[i] for i in range(len(s)))) for j in gens]
        while frontier:
            nxt = []
            for g in frontier:
                for j, v in steps:
                    h = tuple((a + b) % m for a, b, m in zip(g, v, s))
                    if h not in seen:
                        coeff = dict(seen[g])
                        coeff[j] = coeff.get(j, 0) + 1
                        seen[h] = coeff
                        nxt.append(h)
                        if len(seen) > GROUP_BUDGET:
                            raise BudgetExceeded("subgroup closure budget exceeded")
            frontier = nxt
        return seen

    def realize(self, delta: tuple, closure_cache: dict):
        """Shift t and kappa realizing the capped delta vector, or None."""
        C, D, ords = self.C, self.D, self.ords
        m = len(delta)
        capped = [j for j in range(1, m) if delta[j] == C]
        kappas = ([ords[0] - delta[0]] if delta[0] < C
                  else [ords[0] - C - i for i in range(D)])
        key = tuple(capped)
        if key not in closure_cache:
            closure_cache[key] = self._closure([j - 1 for j in capped])
        reach = closure_cache[key]
        for kappa in kappas:
            r = [0] * (m - 1)
            for j in range(1, m):
                if delta[j] < C:
                    r[j - 1] = delta[j] + kappa - ords[j]
            need = tuple((-x) % si for x, si in zip(self._membership_residue(r), self.s))
            if need not in reach:
                continue
            for j, cnt in reach[need].items():
                r[j] += cnt
            for j in capped:
                bound = C + kappa - ords[j]
                if r[j - 1] < bound:
                    r[j - 1] += -(-(bound - r[j - 1]) // D) * D
            t = self._solve_shift(r)
            return t, kappa
        return None

    def _solve_shift(self, r: Sequence[int]) -> list[int]:
        U, s = self.snf.U, self.s
        rv = [sum(r[j] * self.snf.V[j][i] for j in range(len(r))) for i in range(len(s))]
        y = [rv[i] // s[i] for i in range(len(s))] + [0] * (len(self.free) - len(s))
        t = [sum(y[a] * U[a][b] for a in range(len(y))) for b in range(len(self.free))]
        check = [sum(t[a] * self.B[a][j] for a in range(len(t))) for j in range(len(r))]
        if list(check) != list(r):
            raise AssertionError("shift does not reproduce the valuation vector")
        return t

    # lift tree on the capped polynomial

    def lift_tree(self, delta: tuple, budget: list[int]):
        p, C = self.p, self.C
        mod = p ** C
        coeffs = [rational_mod(u, mod) * p ** d % mod for u, d in zip(self.units, delta)]
        exps = self.exps
        n = len(self.free)

        def values(z, mj):
            terms = []
            for c, a in zip(coeffs, exps):
                v = c
                for zi, ai in zip(z, a):
                    v = v * pow(zi, ai, mj) % mj
                terms.append(v)
            h = sum(terms) % mj
            grads = [sum(a[i] * tv for a, tv in zip(exps, terms)) % mj for i in range(n)]
            return h, grads

        def node_val(x, j):
            return INFINITY if x % p ** j == 0 else ord_p(x, p)

        stack = [(list(z), 1) for z in reversed(list(product(range(1, p), repeat=n)))]
        while stack:
            z, j = stack.pop()
            budget[0] -= 1
            if budget[0] < 0:
                raise BudgetExceeded("lift-tree node budget exceeded")
            mj = p ** j
            h, grads = values(z, mj)
            if h % mj:
                continue
            vals = [node_val(g, j) for g in grads]
            finite = [v for v in vals if v is not INFINITY]
            if finite:
                k = min(finite)
                if 2 * k + 1 <= j:
                    return z, j, vals.index(k), k
            if j >= C:
                continue
            for d in reversed(list(product(range(p), repeat=n))):
                stack.append(([zi + di * mj for zi, di in zip(z, d)], j + 1))
        return None

    def deltas(self):
        """Capped valuation vectors with at least two zeros, canonical order."""
        m, C = len(self.coeffs), self.C
        out = [d for d in product(range(C + 1), repeat=m) if d.count(0) >= 2]
        out.sort(key=lambda d: (-sum(1 for x in d if x < C), d))
        return out

    def search(self, threads: int = 1):
        """First certified unit root in canonical order; None if the space is empty."""
        cache: dict = {}
        candidates = []
        for delta in self.deltas():
            real = self.realize(delta, cache)
            if real is not None:
                candidates.append((delta, real))

        def run(item):
            delta, (t, kappa) = item
            hit = self.lift_tree(delta, [NODE_BUDGET])
            if hit is None:
                return None
            z, j, i, k = hit
            return _Found(z, j, i, k, t, kappa, delta)

        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                for res in pool.map(run, candidates):
                    if res is not None:
                        return res, len(candidates)
            return None, len(candidates)
        for item in candidates:
            res = run(item)
            if res is not None:
                return res, len(candidates)
        return None, len(candidates)


def _exact_root_cert(p: int, point, transcript) -> Certificate:
    return Certificate("exact_root", p, 0, list(point), None, None, list(transcript))


def _strata(f: SparsePoly):
    """Coordinate subsets I that may be set to zero, with their surviving terms."""
    n = f.nvars
    for size in range(1, n + 1):
        for I in combinations(range(n), size):
            if any(e[i] < 0 for _, e in f.terms for i in I):
                continue
            survivors = [(c, e) for c, e in f.terms if not any(e[i] for i in I)]
            yield I, survivors


def _certificate(f: SparsePoly, p: int, I, stratum: _Stratum, hit: _Found,
                 transcript: list[str]) -> Certificate:
    n = f.nvars
    free = stratum.free
    shift = [0] * n
    for pos, i in enumerate(free):
        shift[i] = hit.shift[pos]
    scale = hit.kappa + sum(shift[i] * stratum.base_exp[i] for i in range(n))
    # vanishing terms must stay integral after rescaling: push x_I far out
    if I:
        big = 0
        for c, e in f.terms:
            w = ord_p(c, p) + sum(shift[i] * e[i] for i in free) - scale
            tot = sum(e[i] for i in I)
            if tot and w < 0:
                big = max(big, -(-(-w) // tot))
        for i in I:
            shift[i] = big
    root = [0] * n
    for pos, i in enumerate(free):
        root[i] = hit.z[pos]
    L = max(stratum.ords) + stratum.e + 1
    ell = max(2 * L + 1, hit.depth)
    return certificate_from_hensel(f, p, root, free[hit.index], hit.k, ell, shift=shift,
                                   scale=scale, transcript=transcript)


def is_honest_simplex(f: SparsePoly) -> bool:
    if f.nvars < 1 or len(f) != f.nvars + 1:
        return False
    return det_int(exponent_matrix(f, 0)) != 0


def has_independent_support(f: SparsePoly) -> bool:
    """Exponent vectors affinely independent (at least two terms)."""
    if len(f) < 2 or len(f) > f.nvars + 1:
        return False
    F = smith_normal_form(exponent_matrix(f, 0))
    return len(F.diagonal) == len(f) - 1 and all(F.diagonal)


def feas_simplex(f: SparsePoly, p: int, threads: int = 1) -> FeasibilityVerdict:
    """Decide an honest n-variate (n+1)-nomial over Q_p by exhaustive certificate search."""
    if not is_honest_simplex(f):
        raise ValueError("feas_simplex needs n+1 terms with a nonsingular exponent matrix; "
                         "normalize or drop variables first")
    return feas_independent_support(f, p, threads)


def feas_independent_support(f: SparsePoly, p: int, threads: int = 1) -> FeasibilityVerdict:
    """Same search for any polynomial whose exponent vectors are affinely independent."""
    if not has_independent_support(f):
        raise ValueError("exponent vectors are not affinely independent")
    n = f.nvars
    # hyperplane pre-check: x_I = 0 kills every term
    for I, survivors in _strata(f):
        if not survivors:
            point = [0 if i in I else 1 for i in range(n)]
            names = ", ".join(f"x{i + 1}" for i in I)
            return feasible(_exact_root_cert(p, point, [f"setting {names} to 0 kills every term"]),
                            "root on a coordinate subspace")
    incomplete = []
    strata = [((), list(f.terms))] + [(I, s) for I, s in _strata(f) if len(s) >= 2]
    for I, survivors in strata:
        free = [i for i in range(n) if i not in I]
        stratum = _Stratum(survivors, free, p)
        label = "torus" if not I else "x_" + ",".join(str(i + 1) for i in I) + " = 0"
        try:
            hit, count = stratum.search(threads)
        except BudgetExceeded as exc:
            incomplete.append(f"{label}: {exc}")
            continue
        if hit is None:
            continue
        trail = [
            f"stratum {label}: Smith invariants {stratum.s}, lift depth cap p^{stratum.C}",
            f"{count} realizable valuation patterns; initial term polynomial uses the terms "
            f"with delta 0 in {list(hit.delta)}",
            f"unit root mod p^{hit.depth} with derivative valuation {hit.k}",
        ]
        try:
            cert = _certificate(f, p, I, stratum, hit, trail)
        except HenselError as exc:  # pragma: no cover - would be a bug
            raise AssertionError(f"certificate construction failed: {exc}") from None
        return feasible(cert, "certified root found", precision=cert.ell)
    if incomplete:
        return unknown("search budget exceeded: " + "; ".join(incomplete))
    return infeasible("no initial term polynomial admits a liftable root")


def weil_guarantee(f: SparsePoly, p: int) -> FeasibilityVerdict | None:
    """Feasible by the point-count bound when p is large and coprime to the data, else None."""
    n = f.nvars
    if n < 2 or not is_honest_simplex(f):
        return None
    vol = abs(det_int(exponent_matrix(f, 0)))
    if vol % p == 0 or any(c % p == 0 for c in f.coeffs):
        return None
    if p ** (n - 1) < vol * vol:
        return None
    return feasible(None, f"p^{n - 1} >= ({vol})^2 and p divides neither the volume "
                          "nor any coefficient")
