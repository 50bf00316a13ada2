"""p-adic Newton polygons of univariate polynomials.

An edge whose inner normal is (v, 1) accounts for exactly as many roots of
valuation v (counted with multiplicity) as its horizontal length, where
v is minus the edge slope.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .padic import ord_p
from .sparse_poly import SparsePoly


@dataclass(frozen=True)
class Edge:
    left: tuple[int, int]
    right: tuple[int, int]
    slope: Fraction
    lower_poly: SparsePoly

    @property
    def length(self) -> int:
        return self.right[0] - self.left[0]

    @property
    def root_valuation(self) -> Fraction:
        return -self.slope

    @property
    def inner_normal(self) -> tuple[Fraction, int]:
        return (-self.slope, 1)

    def to_json(self) -> dict:
        s = self.slope
        return {
            "from": list(self.left),
            "to": list(self.right),
            "slope": f"{s.numerator}/{s.denominator}",
            "length": self.length,
        }


@dataclass(frozen=True)
class LowerHull:
    points: tuple[tuple[int, int], ...]
    edges: tuple[Edge, ...]


@dataclass(frozen=True)
class PolygonClass:
    generic: bool
    flat: bool
    ramified: bool


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def build_lower_hull(f: SparsePoly, p: int) -> LowerHull:
    if f.nvars != 1:
        raise ValueError("Newton polygons here are univariate")
    if f.is_zero():
        raise ValueError("zero polynomial has no Newton polygon")
    coeff = {e[0]: c for c, e in f.terms}
    pts = sorted((a, ord_p(c, p)) for a, c in coeff.items())
    hull: list[tuple[int, int]] = []
    for pt in pts:
        # pop while the turn is not strictly convex; collinear points drop out
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    edges = []
    for left, right in zip(hull, hull[1:]):
        slope = Fraction(right[1] - left[1], right[0] - left[0])
        on_edge = [(coeff[a], (a,)) for a, v in pts
                   if left[0] <= a <= right[0] and _cross(left, right, (a, v)) == 0]
        edges.append(Edge(left, right, slope, SparsePoly(1, on_edge)))
    return LowerHull(tuple(pts), tuple(edges))


def root_valuations(f: SparsePoly, p: int) -> list[tuple[Fraction, int]]:
    """(valuation, count) pairs for the nonzero roots of f, one per lower edge."""
    return [(e.root_valuation, e.length) for e in build_lower_hull(f, p).edges]


def integral_root_valuations(f: SparsePoly, p: int) -> list[int]:
    return [int(v) for v, _ in root_valuations(f, p) if v.denominator == 1]


def classify(f: SparsePoly, p: int) -> PolygonClass:
    """Generic: every lower polynomial is a binomial. Flat: one edge.

    Ramified: p divides the exponent gap between two consecutive support
    points on some lower edge (for binomial edges, the edge length).
    """
    hull = build_lower_hull(f, p)
    generic = all(len(e.lower_poly) == 2 for e in hull.edges)
    flat = len(hull.edges) == 1
    ramified = False
    for e in hull.edges:
        exps = [t[0] for t in e.lower_poly.exponents]
        if any((b - a) % p == 0 for a, b in zip(exps, exps[1:])):
            ramified = True
    return PolygonClass(generic, flat, ramified)
