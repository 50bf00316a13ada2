"""Decision procedures for root existence over Q_p, with checkable certificates."""
from __future__ import annotations

from ..sparse_poly import SparsePoly, from_json
from .binomial import (feas_binomial, feas_binomial_system, verify_binomial_system,
                       verify_binomial_witness, verify_valuation_obstruction, binomial_of)
from .certificates import (KINDS, Answer, Certificate, FeasibilityVerdict, HenselError,
                           hensel_lift, unknown, verify_hensel)
from .quadratic import (diagonal_quadratic_coeffs, feas_quadratic_diagonal,
                        verify_quadratic_symbolic)
from .simplex import (feas_independent_support, feas_simplex, has_independent_support,
                      is_honest_simplex, weil_guarantee)
from .univariate import (_normalize_univariate, divides_exactly, feas_trinomial,
                         feas_trivial, feas_univariate, feas_univariate_generic,
                         verify_exact_root)


def _verify_hensel_root(f: SparsePoly, p: int, cert: Certificate) -> bool:
    div = cert.data.get("divisor")
    if div is None:
        return verify_hensel(f, p, cert)
    # the certified root belongs to a factor of f
    g = from_json(div)
    if f.nvars != 1 or g.nvars != 1 or len(g) < 2 or g.min_exponents()[0] < 0:
        return False
    F, _ = _normalize_univariate(f)
    return divides_exactly(g, F) and verify_hensel(g, p, cert)

METHODS = ("auto", "trivial", "binomial", "trinomial", "generic", "univariate",
           "simplex", "quadratic", "weil")

_VERIFIERS = {
    "hensel_root": _verify_hensel_root,
    "binomial_witness": verify_binomial_witness,
    "valuation_obstruction": verify_valuation_obstruction,
    "quadratic_symbolic": verify_quadratic_symbolic,
    "exact_root": verify_exact_root,
}


def verify_certificate(f: SparsePoly, p: int, cert: Certificate) -> bool:
    """Re-check a certificate against f by direct arithmetic. Never raises."""
    try:
        if not isinstance(cert, Certificate) or cert.prime != p:
            return False
        check = _VERIFIERS.get(cert.kind)
        if check is None:
            return False
        return bool(check(f, p, cert))
    except Exception:
        return False


def _binomial(f: SparsePoly, p: int) -> FeasibilityVerdict:
    if f.nvars != 1 or len(f) != 2:
        raise ValueError("binomial method needs a univariate binomial")
    (_, (a1,)), _ = f.terms
    if a1 > 0:
        return feas_univariate(f, p)  # x = 0 root
    value, d = binomial_of(f)
    return feas_binomial(value, d, p)


def _quadratic(f: SparsePoly, p: int) -> FeasibilityVerdict:
    parsed = diagonal_quadratic_coeffs(f)
    if parsed is None:
        raise ValueError("quadratic method needs c0 + c1 x1^2 + ... + cn xn^2")
    c0, cs = parsed
    return feas_quadratic_diagonal([c0] + cs, p)


def _weil(f: SparsePoly, p: int) -> FeasibilityVerdict:
    v = weil_guarantee(f, p)
    return v if v is not None else unknown("point-count bound does not apply")


def solve(f: SparsePoly, p: int, method: str = "auto", depth: int | None = None,
          threads: int = 1) -> FeasibilityVerdict:
    """Dispatch f to a decision procedure by shape, or to the named method."""
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    if method == "trivial":
        return feas_trivial(f, p)
    if method == "binomial":
        return _binomial(f, p)
    if method == "trinomial":
        return feas_trinomial(f, p, depth)
    if method == "generic":
        return feas_univariate_generic(f, p, threads=threads)
    if method == "univariate":
        return feas_univariate(f, p, depth, threads)
    if method == "simplex":
        return feas_simplex(f, p, threads)
    if method == "quadratic":
        return _quadratic(f, p)
    if method == "weil":
        return _weil(f, p)
    # auto
    if len(f) <= 1:
        return feas_trivial(f, p)
    if f.nvars == 1:
        return feas_univariate(f, p, depth, threads)
    if has_independent_support(f):
        v = feas_independent_support(f, p, threads)
        if v.answer is not Answer.UNKNOWN:
            return v
        if diagonal_quadratic_coeffs(f) is not None:
            return _quadratic(f, p)
        return v
    return unknown("no decision procedure covers this support shape")


__all__ = [
    "KINDS", "METHODS", "Answer", "Certificate", "FeasibilityVerdict", "HenselError",
    "feas_binomial", "feas_binomial_system", "feas_independent_support",
    "feas_quadratic_diagonal", "feas_simplex", "feas_trinomial", "feas_trivial",
    "feas_univariate", "feas_univariate_generic", "hensel_lift", "is_honest_simplex",
    "solve", "verify_binomial_system", "verify_certificate", "weil_guarantee",
]
