"""Sparse multivariate Laurent polynomials with integer coefficients."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .padic import PadicContext, inverse_mod

Exps = tuple[int, ...]


class PolyParseError(ValueError):
    """Malformed polynomial text or JSON; carries a character position."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


@dataclass(frozen=True)
class SparsePoly:
    nvars: int
    terms: tuple[tuple[int, Exps], ...]

    def __init__(self, nvars: int, terms: Iterable = (), *, merge: bool = False):
        collected: dict[Exps, int] = {}
        for c, e in terms:
            c = int(c)
            e = tuple(int(a) for a in e)
            if len(e) != nvars:
                raise ValueError(f"exponent vector {e} does not have length {nvars}")
            if e in collected:
                if not merge:
                    raise ValueError(f"duplicate monomial {e}")
                collected[e] += c
            else:
                collected[e] = c
        ordered = tuple((collected[e], e) for e in sorted(collected) if collected[e] != 0)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", ordered)

    # construction helpers
    @classmethod
    def from_dict(cls, nvars: int, d: dict) -> "SparsePoly":
        return cls(nvars, ((c, e) for e, c in d.items()))

    @classmethod
    def univariate(cls, coeffs: dict[int, int] | Sequence[int]) -> "SparsePoly":
        if isinstance(coeffs, dict):
            return cls(1, ((c, (a,)) for a, c in coeffs.items()))
        return cls(1, ((c, (a,)) for a, c in enumerate(coeffs)))

    @classmethod
    def constant(cls, c: int, nvars: int = 0) -> "SparsePoly":
        return cls(nvars, [(c, (0,) * nvars)])

    # basic structure
    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def coeffs(self) -> list[int]:
        return [c for c, _ in self.terms]

    @property
    def exponents(self) -> list[Exps]:
        return [e for _, e in self.terms]

    def as_dict(self) -> dict[Exps, int]:
        return {e: c for c, e in self.terms}

    def degree_range(self, var: int = 0) -> tuple[int, int]:
        vals = [e[var] for e in self.exponents]
        return min(vals), max(vals)

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        return SparsePoly(self.nvars, list(self.terms) + list(other.terms), merge=True)

    def __neg__(self):
        return SparsePoly(self.nvars, ((-c, e) for c, e in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> "SparsePoly":
        if isinstance(other, int):
            return SparsePoly(self.nvars, ((c * other, e) for c, e in self.terms))
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        acc: dict[Exps, int] = {}
        for c1, e1 in self.terms:
            for c2, e2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return SparsePoly.from_dict(self.nvars, acc)

    __rmul__ = __mul__

    def times_monomial(self, shift: Sequence[int]) -> "SparsePoly":
        return SparsePoly(self.nvars, ((c, tuple(a + s for a, s in zip(e, shift)))
                                       for c, e in self.terms))

    def min_exponents(self) -> Exps:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(e[i] for e in self.exponents) for i in range(self.nvars))

    def has_negative_exponents(self) -> bool:
        return any(a < 0 for e in self.exponents for a in e)

    # exact evaluation
    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for c, e in self.terms:
            term = Fraction(c)
            for x, a in zip(point, e):
                if a:
                    term *= Fraction(x) ** a
            total += term
        return total

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"SparsePoly({self.nvars}, {list(self.terms)!r})"


def size_measure(f: SparsePoly, p: int | None = None) -> int:
    """Bit-size measure: ceil of sum over terms of log2((2+|c|) * prod(2+|a_j|))."""
    if f.is_zero():
        raise ValueError("size of the zero polynomial is undefined")
    prod = 1
    for c, e in f.terms:
        prod *= (2 + abs(c))
        for a in e:
            prod *= (2 + abs(a))
    # ceil(log2(prod)) computed exactly
    s = (prod - 1).bit_length()
    if p is not None:
        s += (p - 1).bit_length()
    return s


def exponent_matrix(f: SparsePoly, base: int | None = None) -> list[list[int]]:
    """n x n matrix whose columns are the exponent vectors minus the base term's.

    The base defaults to the constant term when present, else the first term.
    """
    exps = f.exponents
    if base is None:
        zero = (0,) * f.nvars
        base = exps.index(zero) if zero in exps else 0
    b = exps[base]
    cols = [tuple(a - c for a, c in zip(e, b)) for i, e in enumerate(exps) if i != base]
    n = f.nvars
    return [[cols[j][i] for j in range(len(cols))] for i in range(n)]


def normalized_volume(f: SparsePoly) -> int:
    """n! times the volume of the Newton simplex, i.e. |det A|."""
    from .intlinalg import det_int

    if len(f) != f.nvars + 1:
        raise ValueError("normalized_volume needs exactly nvars + 1 terms")
    A = exponent_matrix(f)
    d = abs(det_int(A)) if f.nvars else 1
    if d == 0:
        raise ValueError("support is not a simplex (singular exponent matrix)")
    return d


def _modpow_signed(x: int, a: int, m: int) -> int:
    if a >= 0:
        return pow(x, a, m)
    return pow(inverse_mod(x, m), -a, m)


def evaluate_mod(f: SparsePoly, point: Sequence[int], ctx: PadicContext | int) -> int:
    """f(point) mod p^ell; negative exponents use modular inverses."""
    m = ctx.modulus if isinstance(ctx, PadicContext) else int(ctx)
    total = 0
    for c, e in f.terms:
        t = c % m
        for x, a in zip(point, e):
            if a:
                try:
                    t = t * _modpow_signed(x, a, m) % m
                except ZeroDivisionError:
                    raise ValueError(f"coordinate {x} is not invertible mod {m}") from None
        total += t
    return total % m


def partials(f: SparsePoly) -> list[SparsePoly]:
    out = []
    for i in range(f.nvars):
        terms = []
        for c, e in f.terms:
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                terms.append((c * e[i], tuple(e2)))
        out.append(SparsePoly(f.nvars, terms))
    return out


def reciprocal(f: SparsePoly) -> SparsePoly:
    """x^deg f * f(1/x) for a univariate polynomial with nonnegative exponents."""
    if f.nvars != 1:
        raise ValueError("reciprocal is defined for univariate polynomials")
    if f.is_zero():
        return f
    lo, hi = f.degree_range()
    if lo < 0:
        raise ValueError("reciprocal needs nonnegative exponents")
    return SparsePoly(1, ((c, (hi - e[0],)) for c, e in f.terms))


def substitute_scaled(f: SparsePoly, p: int, shift: Sequence[int]) -> tuple[SparsePoly, int]:
    """Return (h, kappa) with h(z) = p^-kappa * f(p^shift * z) integral and primitive at p."""
    from .padic import ord_p

    vals = []
    for c, e in f.terms:
        vals.append(ord_p(c, p) + sum(a * s for a, s in zip(e, shift)))
    kappa = min(vals)
    terms = []
    for (c, e), w in zip(f.terms, vals):
        # c * p^(<e,shift>) / p^kappa with c's own p-part kept
        num = Fraction(c) * Fraction(p) ** (sum(a * s for a, s in zip(e, shift)) - kappa)
        assert num.denominator == 1
        terms.append((num.numerator, e))
    return SparsePoly(f.nvars, terms), kappa


def univariate_dense(f: SparsePoly) -> list[int]:
    """Ascending coefficient list of a univariate polynomial (nonnegative exponents)."""
    if f.nvars != 1:
        raise ValueError("expected a univariate polynomial")
    if f.is_zero():
        return []
    lo, hi = f.degree_range()
    if lo < 0:
        raise ValueError("negative exponent in dense conversion")
    out = [0] * (hi + 1)
    for c, e in f.terms:
        out[e[0]] = c
    return out


def from_dense(coeffs: Sequence[int]) -> SparsePoly:
    return SparsePoly(1, ((c, (i,)) for i, c in enumerate(coeffs) if c))


# serialization

def to_json(f: SparsePoly) -> dict:
    return {"nvars": f.nvars, "terms": [[str(c), list(e)] for c, e in f.terms]}


def from_json(obj) -> SparsePoly:
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise PolyParseError(f"invalid JSON: {exc.msg}", exc.pos) from None
    if not isinstance(obj, dict) or "nvars" not in obj or "terms" not in obj:
        raise PolyParseError("polynomial JSON needs 'nvars' and 'terms'")
    n = obj["nvars"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise PolyParseError("'nvars' must be a natural number")
    terms = []
    if not isinstance(obj["terms"], list):
        raise PolyParseError("'terms' must be a list")
    for idx, t in enumerate(obj["terms"]):
        if not isinstance(t, list) or len(t) != 2:
            raise PolyParseError(f"term {idx} must be [coeff, exponents]")
        c, e = t
        if isinstance(c, bool) or not isinstance(c, (str, int)):
            raise PolyParseError(f"term {idx}: coefficient must be a decimal string")
        try:
            c = int(c)
        except ValueError:
            raise PolyParseError(f"term {idx}: bad coefficient {t[0]!r}") from None
        if not isinstance(e, list) or len(e) != n or not all(
                isinstance(a, int) and not isinstance(a, bool) for a in e):
            raise PolyParseError(f"term {idx}: exponent vector must be {n} integers")
        if c == 0:
            raise PolyParseError(f"term {idx}: zero coefficient")
        terms.append((c, tuple(e)))
    try:
        return SparsePoly(n, terms)
    except ValueError as exc:
        raise PolyParseError(str(exc)) from None


_TOKEN = re.compile(r"\s*(?:(\d+)|(x(\d+))|([-+*^])|(\S))")


def parse_poly_text(s: str, nvars: int | None = None) -> SparsePoly:
    """Parse text like '1 + 2*x1^2 - 3*x2^2'. Duplicate monomials are an error."""
    tokens = []
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if m is None:
            break
        if m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else pos
        if m.group(1):
            tokens.append(("num", int(m.group(1)), start))
        elif m.group(2):
            idx = int(m.group(3))
            if idx < 1:
                raise PolyParseError("variables are numbered from x1", start)
            tokens.append(("var", idx, start))
        elif m.group(4):
            tokens.append((m.group(4), None, start))
        elif m.group(5):
            raise PolyParseError(f"unexpected character {m.group(5)!r}", start)
        pos = m.end()
    if not tokens:
        raise PolyParseError("empty polynomial", 0)

    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else (None, None, len(s))

    raw_terms: list[tuple[int, dict[int, int], int]] = []
    first = True
    while i < len(tokens):
        sign = 1
        kind, val, where = peek()
        if kind in ("+", "-"):
            sign = -1 if kind == "-" else 1
            i += 1
        elif not first:
            raise PolyParseError("expected '+' or '-' between terms", where)
        first = False
        coeff = None
        powers: dict[int, int] = {}
        term_pos = peek()[2]
        expect_factor = True
        while expect_factor:
            kind, val, where = peek()
            if kind == "num":
                if coeff is not None:
                    raise PolyParseError("two numeric factors in one term", where)
                coeff = val
                i += 1
            elif kind == "var":
                i += 1
                exp = 1
                if peek()[0] == "^":
                    i += 1
                    esign = 1
                    if peek()[0] in ("-", "+"):
                        esign = -1 if peek()[0] == "-" else 1
                        i += 1
                    kind2, val2, where2 = peek()
                    if kind2 != "num":
                        raise PolyParseError("expected exponent after '^'", where2)
                    exp = esign * val2
                    i += 1
                powers[val] = powers.get(val, 0) + exp
            else:
                raise PolyParseError("expected a number or a variable", where)
            if peek()[0] == "*":
                i += 1
            else:
                expect_factor = False
        raw_terms.append((sign * (1 if coeff is None else coeff), powers, term_pos))

    n = max([max(p, default=0) for _, p, _ in raw_terms], default=0)
    if nvars is not None:
        if nvars < n:
            raise PolyParseError(f"variable x{n} exceeds nvars={nvars}")
        n = nvars
    seen: dict[Exps, int] = {}
    terms = []
    for c, powers, where in raw_terms:
        e = tuple(powers.get(j + 1, 0) for j in range(n))
        if e in seen:
            raise PolyParseError(f"duplicate monomial {e}", where)
        seen[e] = where
        if c != 0:
            terms.append((c, e))
    return SparsePoly(n, terms)


def parse_poly(s: str) -> SparsePoly:
    """Accept either the JSON form or the inline text form."""
    if s.lstrip().startswith("{"):
        return from_json(s)
    return parse_poly_text(s)


def to_text(f: SparsePoly) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for idx, (c, e) in enumerate(f.terms):
        factors = []
        for j, a in enumerate(e):
            if a == 1:
                factors.append(f"x{j + 1}")
            elif a:
                factors.append(f"x{j + 1}^{a}")
        mag = abs(c)
        body = "*".join(([str(mag)] if mag != 1 or not factors else []) + factors)
        sign = "-" if c < 0 else "+"
        if idx == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)
