"""From 3CNF formulas to sparse univariate polynomials over Q_p.

A clause becomes a product of binomials x^m - 1 whose roots among the
D-th roots of unity (D = product of the chosen primes) are exactly the
satisfying assignments: the root of unity of order d encodes the
assignment with y_i false iff p_i divides d. Clause images are built from
these divisor sets rather than by polynomial lcm and division.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import prod
from typing import Sequence

from sympy import divisors, mobius

from .feasibility.modroots import primitive_root
from .sparse_poly import SparsePoly

DEFAULT_DEGREE_BUDGET = 1 << 16


class CnfError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class CnfInstance:
    """Clauses are tuples of signed variable indices (1-based, negative = negated)."""
    nvars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(int(l) for l in c) for c in self.clauses))
        for c in self.clauses:
            if not 1 <= len(c) <= 3:
                raise CnfError(f"clause {list(c)} must have one to three literals")
            for lit in c:
                if lit == 0 or abs(lit) > self.nvars:
                    raise CnfError(f"literal {lit} out of range 1..{self.nvars}")

    def is_satisfied_by(self, bits: Sequence[int]) -> bool:
        return all(any((bits[abs(l) - 1] == 1) == (l > 0) for l in c) for c in self.clauses)


def read_dimacs(text: str) -> CnfInstance:
    """Parse DIMACS CNF: comments, a 'p cnf n m' header, 0-terminated clauses."""
    nvars = nclauses = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            m = re.fullmatch(r"p\s+cnf\s+(\d+)\s+(\d+)", line)
            if m is None or nvars is not None:
                raise CnfError("malformed or repeated header", lineno)
            nvars, nclauses = int(m.group(1)), int(m.group(2))
            continue
        if nvars is None:
            raise CnfError("clause before the 'p cnf' header", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise CnfError(f"bad literal {tok!r}", lineno) from None
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                if abs(lit) > nvars:
                    raise CnfError(f"literal {lit} out of range 1..{nvars}", lineno)
                current.append(lit)
    if nvars is None:
        raise CnfError("missing 'p cnf' header")
    if current:
        clauses.append(tuple(current))
    if nclauses is not None and len(clauses) != nclauses:
        raise CnfError(f"header announces {nclauses} clauses, found {len(clauses)}")
    return CnfInstance(nvars, tuple(clauses))


@dataclass(frozen=True)
class BinomialProduct:
    """prod (x^m - 1)^e over the stored (m, e) pairs; a polynomial by construction."""
    factors: tuple[tuple[int, int], ...]

    @classmethod
    def from_exponents(cls, exps: dict[int, int]) -> "BinomialProduct":
        return cls(tuple(sorted((m, e) for m, e in exps.items() if e)))

    @classmethod
    def from_cyclotomic_indices(cls, S) -> "BinomialProduct":
        """prod_{d in S} Phi_d via Phi_d = prod_{e | d} (x^e - 1)^mu(d/e)."""
        exps: dict[int, int] = {}
        for d in S:
            for e in divisors(d):
                mu = int(mobius(d // e))
                if mu:
                    exps[e] = exps.get(e, 0) + mu
        return cls.from_exponents(exps)

    def cyclotomic_indices(self) -> frozenset[int]:
        """d with Phi_d dividing the product; multiplicities must be 0 or 1 here."""
        mult: dict[int, int] = {}
        for m, e in self.factors:
            for d in divisors(m):
                mult[d] = mult.get(d, 0) + e
        if any(v < 0 for v in mult.values()):
            raise ValueError("factor list does not denote a polynomial")
        return frozenset(d for d, v in mult.items() if v > 0)

    @property
    def degree(self) -> int:
        return sum(m * e for m, e in self.factors)

    def expand(self, degree_budget: int = DEFAULT_DEGREE_BUDGET) -> SparsePoly:
        """Dense expansion, multiplying numerators then dividing exactly by denominators."""
        top = sum(m * e for m, e in self.factors if e > 0)
        if top > degree_budget:
            raise ValueError(f"expansion degree {top} exceeds the budget {degree_budget}")
        poly = [1]
        for m, e in self.factors:
            for _ in range(max(e, 0)):
                nxt = [0] * (len(poly) + m)
                for i, c in enumerate(poly):
                    nxt[i + m] += c
                    nxt[i] -= c
                poly = nxt
        for m, e in self.factors:
            for _ in range(max(-e, 0)):
                poly = _divide_binomial(poly, m)
        return SparsePoly(1, [(c, (i,)) for i, c in enumerate(poly) if c])

    def to_json(self) -> dict:
        return {"factors": [{"m": str(m), "e": e} for m, e in self.factors],
                "degree": self.degree}


def _divide_binomial(poly: list[int], m: int) -> list[int]:
    """Exact quotient of poly by x^m - 1."""
    deg = len(poly) - 1
    if deg < m:
        raise ValueError("not divisible by x^m - 1")
    rem = poly[:]
    q = [0] * (deg - m + 1)
    for i in range(deg, m - 1, -1):
        c = rem[i]
        if c:
            q[i - m] = c
            rem[i] = 0
            rem[i - m] += c
    if any(rem[:m]):
        raise ValueError("not divisible by x^m - 1")
    return q


def _literal_set(lit: int, P: Sequence[int], D: int) -> frozenset[int]:
    i = abs(lit) - 1
    if i >= len(P):
        raise ValueError(f"variable y{i + 1} has no prime in P")
    pi = P[i]
    return frozenset(d for d in divisors(D) if (d % pi != 0) == (lit > 0))


def clause_divisor_set(clause: Sequence[int], P: Sequence[int]) -> frozenset[int]:
    D = prod(P)
    out: frozenset[int] = frozenset()
    for lit in clause:
        out |= _literal_set(lit, P, D)
    return out


def _check_primes(P: Sequence[int]):
    from .primes import is_prime

    if any(not is_prime(q) for q in P) or any(a >= b for a, b in zip(P, P[1:])):
        raise ValueError("P must be a strictly increasing sequence of primes")


def plaisted(expr, P: Sequence[int]) -> BinomialProduct:
    """Image of a literal (signed int) or a clause (sequence of literals)."""
    _check_primes(P)
    clause = [expr] if isinstance(expr, int) else list(expr)
    return BinomialProduct.from_cyclotomic_indices(clause_divisor_set(clause, P))


def reduce_3sat(cnf: CnfInstance, P: Sequence[int]) -> tuple[list[BinomialProduct], int]:
    if len(P) < cnf.nvars:
        raise ValueError("need at least one prime per variable")
    _check_primes(P)
    return [plaisted(c, P) for c in cnf.clauses], prod(P)


def combine_system(system: Sequence[BinomialProduct], D: int) -> BinomialProduct:
    """One polynomial whose D-th-root-of-unity zeros are the common zeros of the system."""
    common = frozenset(divisors(D))
    for b in system:
        common &= b.cyclotomic_indices()
    return BinomialProduct.from_cyclotomic_indices(common)


def collapse_to_single(f: SparsePoly, D: int, p: int) -> SparsePoly:
    """f^2 - p (x^D - 1)^2: its Q_p roots are the common Q_p roots of f and x^D - 1."""
    if f.nvars != 1:
        raise ValueError("univariate input expected")
    b = SparsePoly(1, [(1, (D,)), (-1, (0,))])
    return f * f - SparsePoly.constant(p, 1) * b * b


def _eval_mod(poly, x: int, p: int) -> int:
    if isinstance(poly, BinomialProduct):
        poly = poly.expand()
    acc = 0
    for c, (e,) in poly.terms:
        acc = (acc + c * pow(x, e, p)) % p
    return acc


def roots_of_unity_transfer_check(system, D: int, p: int) -> bool:
    """Whether every member vanishes at one common D-th root of unity in F_p."""
    if (p - 1) % D:
        raise ValueError(f"p = {p} is not 1 mod D = {D}")
    polys = [b.expand() if isinstance(b, BinomialProduct) else b for b in system]
    g = pow(primitive_root(p), (p - 1) // D, p)
    zeta = 1
    for _ in range(D):
        if all(_eval_mod(f, zeta, p) == 0 for f in polys):
            return True
        zeta = zeta * g % p
    return False
