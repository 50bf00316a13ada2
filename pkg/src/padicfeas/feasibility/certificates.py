"""Certificates, verdicts, Hensel lifting and certificate verification."""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..padic import INFINITY, ord_p, inverse_mod
from ..sparse_poly import SparsePoly, evaluate_mod, partials

KINDS = ("hensel_root", "binomial_witness", "valuation_obstruction",
         "quadratic_symbolic", "exact_root")


class Answer(str, enum.Enum):
    FEASIBLE = "Feasible"
    INFEASIBLE = "Infeasible"
    UNKNOWN = "Unknown"


@dataclass
class Certificate:
    kind: str
    prime: int
    ell: int = 0
    root: list | None = None
    deriv_index: int | None = None
    deriv_valuation: int | None = None
    transcript: list[str] = field(default_factory=list)
    # p-adic rescaling: the checked polynomial is p^-scale * f(p^shift * z)
    transform: dict | None = None
    # kind-specific payload (binomial values, symbolic claims)
    data: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "prime": str(self.prime),
            "ell": self.ell,
            "root": None if self.root is None else [str(r) for r in self.root],
            "deriv_index": self.deriv_index,
            "deriv_valuation": self.deriv_valuation,
            "transcript": list(self.transcript),
        }
        if self.transform is not None:
            out["transform"] = {"shift": list(self.transform["shift"]),
                                "scale": self.transform["scale"]}
        if self.data:
            out["data"] = _jsonable(self.data)
        return out

    @classmethod
    def from_json(cls, obj) -> "Certificate":
        if isinstance(obj, str):
            obj = json.loads(obj)
        if not isinstance(obj, dict):
            raise ValueError("certificate JSON must be an object")
        root = obj.get("root")
        transform = obj.get("transform")
        if transform is not None:
            transform = {"shift": [int(s) for s in transform["shift"]],
                         "scale": int(transform["scale"])}
        return cls(
            kind=str(obj["kind"]),
            prime=int(obj["prime"]),
            ell=int(obj.get("ell") or 0),
            root=None if root is None else [_parse_number(r) for r in root],
            deriv_index=obj.get("deriv_index"),
            deriv_valuation=obj.get("deriv_valuation"),
            transcript=list(obj.get("transcript") or []),
            transform=transform,
            data=dict(obj.get("data") or {}),
        )


def _jsonable(x):
    if isinstance(x, dict) and "nvars" in x and "terms" in x:
        return x  # serialized polynomial
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x)
    return x


def _parse_number(s):
    if isinstance(s, bool):
        raise ValueError("booleans are not numbers")
    if isinstance(s, int):
        return s
    v = Fraction(str(s))
    return int(v) if v.denominator == 1 else v


@dataclass
class FeasibilityVerdict:
    answer: Answer
    certificate: Certificate | None = None
    reason: str = ""
    precision: int | None = None

    @property
    def feasible(self) -> bool:
        return self.answer is Answer.FEASIBLE

    def to_json(self) -> dict:
        return {
            "answer": self.answer.value,
            "reason": self.reason,
            "precision": self.precision,
            "certificate": None if self.certificate is None else self.certificate.to_json(),
        }


def feasible(cert=None, reason="", precision=None):
    return FeasibilityVerdict(Answer.FEASIBLE, cert, reason, precision)


def infeasible(reason="", cert=None, precision=None):
    return FeasibilityVerdict(Answer.INFEASIBLE, cert, reason, precision)


def unknown(reason="", precision=None):
    return FeasibilityVerdict(Answer.UNKNOWN, None, reason, precision)


class HenselError(ValueError):
    pass


def rescale(f: SparsePoly, p: int, shift: Sequence[int], scale: int) -> SparsePoly:
    """p^-scale * f(p^shift * z); raises if some coefficient is not p-integral."""
    terms = []
    for c, e in f.terms:
        w = sum(a * s for a, s in zip(e, shift)) - scale
        if w >= 0:
            terms.append((c * p ** w, e))
        else:
            q, r = divmod(c, p ** (-w))
            if r:
                raise HenselError("rescaled polynomial is not p-integral")
            terms.append((q, e))
    return SparsePoly(f.nvars, terms)


def min_scale(f: SparsePoly, p: int, shift: Sequence[int]) -> int:
    return min(ord_p(c, p) + sum(a * s for a, s in zip(e, shift)) for c, e in f.terms)


def _val_mod(x: int, p: int, cap: int):
    """Valuation of a residue mod p^cap, INFINITY if it vanishes there."""
    if x % p ** cap == 0:
        return INFINITY
    return ord_p(x, p)


def hensel_lift(f: SparsePoly, root0: Sequence[int], i: int, k: int, p: int, N: int) -> list[int]:
    """Lift a root with f(root0) = 0 mod p^(2k+1) and ord d_i f(root0) = k to a root mod p^N.

    Newton iteration in coordinate i; the other coordinates stay fixed.
    """
    if N < 2 * k + 1:
        raise HenselError("target precision below 2k+1")
    work = N + k + 1
    mod = p ** work
    z = [int(r) % mod for r in root0]
    dfi = partials(f)[i]
    try:
        val = evaluate_mod(f, z, mod)
        der = evaluate_mod(dfi, z, mod)
    except ValueError as exc:
        raise HenselError(str(exc)) from None
    if val % p ** (2 * k + 1):
        raise HenselError("root0 is not a root mod p^(2k+1)")
    if _val_mod(der, p, work) != k:
        raise HenselError("derivative valuation differs from k")
    for _ in range(4 * work + 8):
        if val % p ** N == 0:
            break
        unit = der // p ** k
        step = (val // p ** k) * inverse_mod(unit, mod) % mod
        z[i] = (z[i] - step) % mod
        val = evaluate_mod(f, z, mod)
        der = evaluate_mod(dfi, z, mod)
    else:
        raise HenselError("Newton iteration did not converge")
    out = [r % p ** N for r in z]
    return out


def _point_is_admissible(h: SparsePoly, root: Sequence[int], p: int) -> bool:
    for j in range(h.nvars):
        if any(e[j] < 0 for e in h.exponents) and root[j] % p == 0:
            return False
    return True


def verify_hensel(f: SparsePoly, p: int, cert: Certificate) -> bool:
    ell, k, i = cert.ell, cert.deriv_valuation, cert.deriv_index
    if not isinstance(ell, int) or not isinstance(k, int) or not isinstance(i, int):
        return False
    if isinstance(ell, bool) or isinstance(k, bool) or isinstance(i, bool):
        return False
    if ell < 1 or k < 0 or 2 * k + 1 > ell or not 0 <= i < f.nvars:
        return False
    root = cert.root
    if root is None or len(root) != f.nvars:
        return False
    mod = p ** ell
    if any(not isinstance(r, int) or not 0 <= r < mod for r in root):
        return False
    shift = [0] * f.nvars
    scale = 0
    if cert.transform is not None:
        shift = list(cert.transform.get("shift", []))
        scale = cert.transform.get("scale", 0)
        if len(shift) != f.nvars or not all(isinstance(s, int) for s in shift + [scale]):
            return False
    try:
        h = rescale(f, p, shift, scale)
    except HenselError:
        return False
    if h.is_zero() or not _point_is_admissible(h, root, p):
        return False
    try:
        value = evaluate_mod(h, root, mod)
        der = evaluate_mod(partials(h)[i], root, mod)
    except ValueError:
        return False
    if value != 0:
        return False
    return _val_mod(der, p, ell) == k


def certificate_from_hensel(h_source: SparsePoly, p: int, z: Sequence[int], i: int, k: int,
                            ell: int, shift=None, scale=0, transcript=()) -> Certificate:
    """Lift z to precision ell on the rescaled polynomial and package the result."""
    shift = list(shift) if shift is not None else [0] * h_source.nvars
    h = rescale(h_source, p, shift, scale)
    ell = max(ell, 2 * k + 1)
    root = hensel_lift(h, z, i, k, p, ell)
    transform = None if (not any(shift) and scale == 0) else {"shift": shift, "scale": scale}
    return Certificate("hensel_root", p, ell, root, i, k, list(transcript), transform)
