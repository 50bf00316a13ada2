import pytest
import sympy
from hypothesis import given, settings, strategies as st

from padicfeas.primes import (ForgeParams, Primality, ceil_pow_five_halves, first_primes,
                              forge_prime, is_prime, primality, wagstaff_prime)


def test_first_primes():
    assert first_primes(10) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    with pytest.raises(ValueError):
        first_primes(0)


@given(st.integers(0, 10 ** 7))
def test_is_prime_matches_sympy(n):
    assert is_prime(n) == sympy.isprime(n)


def test_carmichael_and_large():
    for n in (561, 1105, 41041, 3215031751, 3825123056546413051):
        assert not is_prime(n)
    assert is_prime(2 ** 127 - 1)
    assert primality(2 ** 127 - 1) is not Primality.COMPOSITE
    assert primality(2 ** 127 + 1) is Primality.COMPOSITE


@given(st.integers(0, 10 ** 6))
def test_ceil_pow_five_halves(m):
    r = ceil_pow_five_halves(m)
    assert r * r >= m ** 5 and (r == 0 or (r - 1) ** 2 < m ** 5)


def test_wagstaff_small():
    # 1 + 6 = 7 is prime; 1 + 30 = 31 is prime
    assert wagstaff_prime(2) == (1, 7)
    assert wagstaff_prime(3) == (1, 31)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 3), st.integers(0, 10 ** 6))
def test_forge_success_is_sound(n, seed):
    res = forge_prime(ForgeParams(n, 1 / 3, rng_seed=seed))
    if res.status == "success":
        M = 1
        for q in res.primes:
            M *= q
        assert len(res.primes) == n and res.p == 1 + res.c * M
        assert sympy.isprime(res.p)
