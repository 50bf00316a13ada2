"""Exact p-adic arithmetic on integers and rationals.

Valuations and the Legendre and Hilbert symbols. Every
function here is pure and works on Python integers or ``Fraction``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Union

Rational = Union[int, Fraction]


@total_ordering
class _Infinity:
    """Valuation of zero. Greater than every integer; absorbs addition."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Infinity"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("padicfeas.Infinity")

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __add__(self, other):
        return self

    __radd__ = __add__


INFINITY = _Infinity()


def is_infinite(v) -> bool:
    return v is INFINITY


def _small_is_prime(n: int) -> bool:
    # local check so this module has no dependency on the prime tools
    from .primes import is_prime
    return is_prime(n)


@dataclass(frozen=True)
class PadicContext:
    """A prime and a precision exponent: arithmetic happens in Z/p^ell."""

    p: int
    ell: int

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 2 or not _small_is_prime(self.p):
            raise ValueError(f"not a prime: {self.p!r}")
        if not isinstance(self.ell, int) or self.ell < 1:
            raise ValueError(f"precision exponent must be >= 1, got {self.ell!r}")

    @property
    def modulus(self) -> int:
        return self.p ** self.ell


def ord_int(n: int, p: int):
    if n == 0:
        return INFINITY
    n = abs(n)
    k = 0
    # strip large powers first so huge valuations stay cheap
    while n % p == 0:
        pk = p
        e = 1
        while n % (pk * pk) == 0:
            pk *= pk
            e *= 2
        n //= pk
        k += e
    return k


def ord_p(x: Rational, p: int):
    """p-adic valuation of an integer or rational; Infinity for zero."""
    if isinstance(x, Fraction):
        if x == 0:
            return INFINITY
        return ord_int(x.numerator, p) - ord_int(x.denominator, p)
    return ord_int(int(x), p)


def unit_part(x: Rational, p: int) -> Fraction:
    """x / p^ord(x) as a Fraction (x nonzero)."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("zero has no unit part")
    v = ord_p(x, p)
    return x / Fraction(p) ** v


def mod_pow(base: int, exp: int, modulus: int) -> int:
    """base^exp mod modulus by square-and-multiply."""
    if modulus < 1:
        raise ValueError("modulus must be positive")
    if exp < 0:
        raise ValueError("exponent must be natural")
    if modulus == 1:
        return 0
    result = 1
    b = base % modulus
    while exp:
        if exp & 1:
            result = result * b % modulus
        b = b * b % modulus
        exp >>= 1
    return result


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, A, B) with A*a + B*b = g = gcd(a, b) > 0."""
    if a == 0 and b == 0:
        raise ValueError("ext_gcd(0, 0) is undefined")
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def inverse_mod(a: int, m: int) -> int:
    g, x, _ = ext_gcd(a % m, m) if m > 1 else (1, 0, 0)
    if m == 1:
        return 0
    if g != 1:
        raise ZeroDivisionError(f"{a} is not invertible mod {m}")
    return x % m


def rational_mod(x: Rational, m: int) -> int:
    """Image of a rational with denominator prime to m in Z/m."""
    x = Fraction(x)
    return x.numerator * inverse_mod(x.denominator, m) % m


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for odd prime p, extended by 0 when p | a."""
    if p == 2:
        raise ValueError("Legendre symbol needs an odd prime")
    r = mod_pow(a, (p - 1) // 2, p)
    if r == 0:
        return 0
    return 1 if r == 1 else -1


def hilbert(a: Rational, b: Rational, p: int) -> int:
    """Hilbert symbol (a, b)_p for nonzero rationals."""
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    a, b = Fraction(a), Fraction(b)
    j, k = ord_p(a, p), ord_p(b, p)
    ua, ub = unit_part(a, p), unit_part(b, p)
    if p != 2:
        u = rational_mod(ua, p)
        v = rational_mod(ub, p)
        sign = -1 if (j * k * ((p - 1) // 2)) % 2 else 1
        if k % 2:
            sign *= legendre(u, p)
        if j % 2:
            sign *= legendre(v, p)
        return sign
    u = rational_mod(ua, 8)
    v = rational_mod(ub, 8)

    def eps(t):
        return ((t - 1) // 2) % 2

    def omega(t):
        return ((t * t - 1) // 8) % 2

    z = eps(u) * eps(v) + j * omega(v) + k * omega(u)
    return -1 if z % 2 else 1


def is_square_qp(x: Rational, p: int) -> bool:
    """Whether a nonzero rational is a square in Q_p."""
    x = Fraction(x)
    if x == 0:
        return True
    if ord_p(x, p) % 2:
        return False
    u = unit_part(x, p)
    if p == 2:
        return rational_mod(u, 8) == 1
    return legendre(rational_mod(u, p), p) == 1


def square_class(x: Rational, p: int) -> tuple:
    """Canonical key for the class of x in Q_p^* / (Q_p^*)^2."""
    x = Fraction(x)
    v = ord_p(x, p) % 2
    u = unit_part(x, p)
    if p == 2:
        return (v, rational_mod(u, 8))
    return (v, legendre(rational_mod(u, p), p))
