"""Roots of polynomials and binomials modulo a prime."""
from __future__ import annotations

import random
from math import gcd, isqrt

from ..padic import inverse_mod

ENUMERATION_LIMIT = 1 << 16


# dense polynomial arithmetic over F_p, ascending coefficient lists

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, b, p):
    a = a[:]
    inv = inverse_mod(b[-1], p)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        q = a[-1] * inv % p
        shift = len(a) - 1 - db
        for j, c in enumerate(b):
            a[shift + j] = (a[shift + j] - q * c) % p
        _trim(a)
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pgcd(a, b, p):
    a, b = _trim(a[:]), _trim(b[:])
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv = inverse_mod(a[-1], p)
        a = [x * inv % p for x in a]
    return a


def _ppowmod(base, e, m, p):
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def _eval(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def roots_mod_p(coeffs: list[int], p: int, rng: random.Random | None = None) -> list[int]:
    """Distinct roots in F_p of an integer polynomial (ascending coefficients)."""
    a = _trim([c % p for c in coeffs])
    if not a:
        raise ValueError("polynomial vanishes identically mod p")
    if len(a) == 1:
        return []
    if p <= ENUMERATION_LIMIT:
        return [x for x in range(p) if _eval(a, x, p) == 0]
    rng = rng or random.Random(p)
    roots = []
    if a[0] == 0:
        roots.append(0)
        while a and a[0] == 0:
            a.pop(0)
    if len(a) == 1:
        return sorted(roots)
    # gcd with x^(p-1) - 1 keeps the distinct nonzero linear factors
    w = _ppowmod([0, 1], p - 1, a, p) or [0]
    w[0] = (w[0] - 1) % p
    w = _trim(w)
    split = _pgcd(a, w, p) if w else _pgcd(a, a, p)
    stack = [split] if len(split) > 1 else []
    while stack:
        h = stack.pop()
        if len(h) == 2:
            roots.append((-h[0]) * inverse_mod(h[1], p) % p)
            continue
        while True:
            s = rng.randrange(p)
            w = _ppowmod([s, 1], (p - 1) // 2, h, p)
            w = w + [0] * max(0, 1 - len(w))
            w[0] = (w[0] - 1) % p
            d = _pgcd(h, _trim(w), p)
            if 1 < len(d) < len(h):
                break
        quot = _pdiv_exact(h, d, p)
        stack.extend([d, quot])
    return sorted(roots)


def _pdiv_exact(a, b, p):
    a = a[:]
    inv = inverse_mod(b[-1], p)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    while len(a) - 1 >= db and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        q[shift] = c
        for j, bc in enumerate(b):
            a[shift + j] = (a[shift + j] - c * bc) % p
        _trim(a)
    return _trim(q)


def _factor_small(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def primitive_root(p: int) -> int:
    if p == 2:
        return 1
    qs = _factor_small(p - 1)
    g = 2
    while any(pow(g, (p - 1) // q, p) == 1 for q in qs):
        g += 1
    return g


def discrete_log(g: int, h: int, p: int) -> int:
    """Baby-step giant-step: x with g^x = h mod p (g a primitive root)."""
    n = p - 1
    m = isqrt(n) + 1
    table = {}
    cur = 1
    for j in range(m):
        table.setdefault(cur, j)
        cur = cur * g % p
    factor = pow(inverse_mod(g, p), m, p)
    gamma = h % p
    for i in range(m):
        if gamma in table:
            return (i * m + table[gamma]) % n
        gamma = gamma * factor % p
    raise ValueError("discrete logarithm not found")


def binomial_root_mod_p(u: int, d: int, p: int) -> int | None:
    """Some x in F_p^* with x^d = u, or None. Requires p not dividing u."""
    u %= p
    if u == 0:
        raise ValueError("unit expected")
    if p == 2:
        return 1
    n = p - 1
    g = gcd(d, n)
    if pow(u, n // g, p) != 1:
        return None
    if p <= ENUMERATION_LIMIT * 16:
        gen = primitive_root(p)
        lg = discrete_log(gen, u, p)
        # solve d * x = lg mod n
        x = (lg // g) * inverse_mod(d // g, n // g) % (n // g)
        return pow(gen, x, p)
    # large p: root of y^g = u, then undo the part of d prime to the group order
    if n // g == 1:
        return 1
    y = roots_mod_p([-u] + [0] * (g - 1) + [1], p)[0]
    s = inverse_mod((d // g) % (n // g), n // g)
    return pow(y, s, p)
