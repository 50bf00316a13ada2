"""Gcd-free bases, for testing huge multiplicative identities without expanding them."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence


@dataclass(frozen=True)
class GcdFreeBasis:
    gammas: list[int]
    exps: list[list[int]]  # exps[i][j]: power of gammas[j] in alphas[i]


def _refine(values: set[int]) -> set[int]:
    items = {v for v in values if v > 1}
    changed = True
    while changed:
        changed = False
        ordered = sorted(items)
        for i, x in enumerate(ordered):
            for y in ordered[i + 1:]:
                g = gcd(x, y)
                if g > 1:
                    items.discard(x)
                    items.discard(y)
                    items.update(v for v in (x // g, y // g, g) if v > 1)
                    changed = True
                    break
            if changed:
                break
    return items


def gcd_free_basis(alphas: Sequence[int]) -> GcdFreeBasis:
    if any(a < 1 for a in alphas):
        raise ValueError("gcd-free bases need positive integers")
    gammas = sorted(_refine(set(alphas)))
    exps = []
    for a in alphas:
        row = []
        for g in gammas:
            e = 0
            while a % g == 0:
                a //= g
                e += 1
            row.append(e)
        if a != 1:
            raise AssertionError("basis does not reconstruct its input")
        exps.append(row)
    return GcdFreeBasis(gammas, exps)


def power_product_is_one(alphas: Sequence[int], us: Sequence[int]) -> bool:
    """Whether prod alpha_i^u_i == 1, decided from exponent sums over a gcd-free basis."""
    if len(alphas) != len(us):
        raise ValueError("alphas and exponents differ in length")
    basis = gcd_free_basis(alphas)
    for j in range(len(basis.gammas)):
        if sum(row[j] * u for row, u in zip(basis.exps, us)) != 0:
            return False
    return True
