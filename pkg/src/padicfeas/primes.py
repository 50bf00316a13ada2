"""Primality testing and primes in arithmetic progressions.

``forge_prime`` draws a random prime of the form 1 + c * (product of a
block of consecutive small primes). ``wagstaff_prime`` does the
deterministic search for the least such prime over the first n primes.
"""
from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass, field
from math import isqrt

# Miller-Rabin with these bases is exact below this bound.
DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


class Primality(enum.Enum):
    COMPOSITE = "composite"
    PRIME = "prime"
    PROBABLE_PRIME = "probable_prime"


def _mr_round(n: int, d: int, s: int, a: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas(n: int) -> bool:
    # Selfridge parameter choice
    D = 5
    while True:
        j = _jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
        if D == 21 and isqrt(n) ** 2 == n:
            return False
    P, Q = 1, (1 - D) // 4
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # binary Lucas chain for U_d, V_d
    U, V, Qk = 0, 2, 1
    inv2 = (n + 1) // 2
    for bit in bin(d)[2:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = (P * U + V) * inv2 % n, (D * U + P * V) * inv2 % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def primality(n: int, rounds: int = 64, seed: int = 0) -> Primality:
    """Classify n >= 2 as composite, proven prime, or probable prime."""
    if n < 2:
        raise ValueError("primality is defined for n >= 2")
    for q in _SMALL_PRIMES:
        if n == q:
            return Primality.PRIME
        if n % q == 0:
            return Primality.COMPOSITE
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < DETERMINISTIC_BOUND:
        ok = all(_mr_round(n, d, s, a) for a in _MR_BASES)
        return Primality.PRIME if ok else Primality.COMPOSITE
    if not _mr_round(n, d, s, 2) or not _strong_lucas(n):
        return Primality.COMPOSITE
    rng = random.Random(seed ^ n)
    for _ in range(rounds):
        if not _mr_round(n, d, s, rng.randrange(2, n - 1)):
            return Primality.COMPOSITE
    return Primality.PROBABLE_PRIME


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return primality(n) is not Primality.COMPOSITE


def first_primes(k: int) -> list[int]:
    """The first k primes, by a sieve of Eratosthenes grown as needed."""
    if k < 1:
        raise ValueError("k must be >= 1")
    limit = max(16, int(k * (math.log(k + 1) + math.log(math.log(k + 2)) + 2)))
    while True:
        sieve = bytearray([1]) * (limit + 1)
        sieve[0:2] = b"\x00\x00"
        for i in range(2, isqrt(limit) + 1):
            if sieve[i]:
                sieve[i * i::i] = bytearray(len(range(i * i, limit + 1, i)))
        out = [i for i in range(limit + 1) if sieve[i]]
        if len(out) >= k:
            return out[:k]
        limit *= 2


@dataclass(frozen=True)
class ForgeParams:
    n: int
    epsilon: float
    ell_eff: int = 1
    x0_eff: int = 17
    rng_seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("block length n must be >= 1")
        if not 0 < self.epsilon < 0.5:
            raise ValueError("epsilon must lie in (0, 1/2)")
        if self.ell_eff < 1:
            raise ValueError("ell_eff must be >= 1")


@dataclass
class ForgeResult:
    block_index: int
    primes: list[int]
    c: int | None
    p: int | None
    is_prime: bool
    attempts: int
    status: str = "failure"
    certainty: str | None = None
    parameters: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "block_index": self.block_index,
            "primes": [str(q) for q in self.primes],
            "c": None if self.c is None else str(self.c),
            "p": None if self.p is None else str(self.p),
            "is_prime": self.is_prime,
            "certainty": self.certainty,
            "attempts": self.attempts,
            "parameters": {k: str(v) for k, v in self.parameters.items()},
        }


def ceil_pow_five_halves(m: int) -> int:
    """Exact ceiling of m^(5/2) for a natural m."""
    m5 = m ** 5
    r = isqrt(m5)
    return r if r * r == m5 else r + 1


def forge_parameters(params: ForgeParams) -> dict:
    eps = params.epsilon
    L = math.ceil(2 / eps) * params.ell_eff
    primes = first_primes(params.n * L)
    blocks = [primes[j * params.n:(j + 1) * params.n] for j in range(L)]
    products = [math.prod(b) for b in blocks]
    x = max(params.x0_eff, 17, 1 + ceil_pow_five_halves(products[-1]))
    # log x via bit length: an integer upper bound on log2 x, hence on ln x
    log_x = x.bit_length()
    J = math.ceil(2 * math.log(2 / eps) * log_x)
    return {"L": L, "blocks": blocks, "products": products, "x": x, "J": J}


def forge_prime(params: ForgeParams) -> ForgeResult:
    """Randomized search for a prime 1 + c*M_i with M_i a product of n primes."""
    data = forge_parameters(params)
    rng = random.Random(params.rng_seed)
    L, x, J = data["L"], data["x"], data["J"]
    i = rng.randrange(L)
    block, M = data["blocks"][i], data["products"][i]
    K = (x - 1) // M
    summary = {"L": L, "x": x, "K": K, "J": J, "M": M}
    for attempt in range(1, J + 1):
        c = rng.randrange(1, K + 1)
        cand = 1 + c * M
        status = primality(cand)
        if status is not Primality.COMPOSITE:
            return ForgeResult(i + 1, block, c, cand, True, attempt, "success",
                               status.value, summary)
    return ForgeResult(i + 1, block, None, None, False, J, "failure", None, summary)


def wagstaff_prime(n: int) -> tuple[int, int]:
    """Least k >= 1 with 1 + k*(2*3*...*p_n) prime."""
    D = math.prod(first_primes(n))
    if D.bit_length() > 4096:
        raise ValueError("primorial too large for the search")
    k = 1
    while not is_prime(1 + k * D):
        k += 1
    return k, 1 + k * D
