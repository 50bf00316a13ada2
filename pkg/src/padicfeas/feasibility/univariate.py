"""Univariate solvers, from the trivial cases up to trinomials and generic polynomials.

All of them share one root-search engine. Roots of valuation v are the
unit roots of the rescaled polynomial p^-kappa f(p^v z). Those are found
by recursing on residue balls r + p^s Z_p, where a simple root mod p of
the ball polynomial closes the search with a Hensel certificate.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from ..newton import build_lower_hull, classify, integral_root_valuations
from ..padic import inverse_mod, ord_p
from ..resultants import (a_discriminant, degenerate_root_trinomial,
                          trinomial_discriminant_is_zero)
from ..sparse_poly import SparsePoly, from_dense, size_measure, to_json, univariate_dense
from .binomial import binomial_of, feas_binomial
from .certificates import (Answer, Certificate, FeasibilityVerdict, certificate_from_hensel,
                           feasible, infeasible, min_scale, rescale, unknown)
from .modroots import roots_mod_p


# dense helpers (ascending integer coefficient lists)

def _content_val(g: list[int], p: int) -> int:
    return min(ord_p(c, p) for c in g if c)


def _compose_linear(g: list[int], a: int, b: int) -> list[int]:
    """g(a + b t) as a coefficient list."""
    out: list[int] = []
    for c in reversed(g):
        # out <- out * (a + b t) + c
        nxt = [0] * (len(out) + 1)
        for i, x in enumerate(out):
            nxt[i] += a * x
            nxt[i + 1] += b * x
        nxt[0] += c
        out = nxt
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _eval(g: list[int], t: int, m: int | None = None) -> int:
    acc = 0
    for c in reversed(g):
        acc = acc * t + c
        if m is not None:
            acc %= m
    return acc


def _deriv(g: list[int]) -> list[int]:
    return [i * c for i, c in enumerate(g)][1:] or [0]


def _newton_simple(g: list[int], t0: int, p: int, prec: int) -> int:
    """Lift a simple root t0 of g mod p to a root mod p^prec."""
    t = t0
    dg = _deriv(g)
    cur = 1
    while cur < prec:
        cur = min(2 * cur, prec)
        m = p ** cur
        t = (t - _eval(g, t, m) * inverse_mod(_eval(dg, t, m), m)) % m
    return t % p ** prec


# exact arithmetic over Q for the squarefree part

def _primitive(a: list[Fraction]) -> list[int]:
    den = 1
    for c in a:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in a]
    cont = 0
    for c in ints:
        cont = gcd(cont, c)
    sign = -1 if ints[-1] < 0 else 1
    return [sign * c // cont for c in ints]


def _divmod_q(a: list, b: list) -> tuple[list[Fraction], list[Fraction]]:
    rem = [Fraction(c) for c in a]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = Fraction(b[-1])
    for i in range(len(a) - len(b), -1, -1):
        c = rem[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                rem[i + j] -= c * bj
    rem = rem[:len(b) - 1]
    while rem and rem[-1] == 0:
        rem.pop()
    return q, rem


def _gcd_q(a: list[int], b: list[int]) -> list[int]:
    a, b = _primitive([Fraction(c) for c in a]), _primitive([Fraction(c) for c in b])
    while b:
        _, r = _divmod_q(a, b)
        a, b = b, (_primitive(r) if r else [])
    return a


def squarefree_part(F: SparsePoly) -> SparsePoly:
    """F / gcd(F, F') made primitive, for univariate F with nonnegative exponents."""
    dense = univariate_dense(F)
    if len(dense) <= 2:
        return F
    g = _gcd_q(dense, _deriv(dense))
    if len(g) == 1:
        return F
    q, r = _divmod_q(dense, g)
    assert not r
    return from_dense(_primitive(q))


def divides_exactly(g: SparsePoly, F: SparsePoly) -> bool:
    a, b = univariate_dense(F), univariate_dense(g)
    if not b or len(b) > len(a):
        return False
    return not _divmod_q(a, b)[1]


@dataclass
class UnitRoot:
    z: int          # approximate unit root of the searched polynomial
    k: int          # derivative valuation at the root
    precision: int  # modulus exponent of z


@dataclass
class SearchOutcome:
    status: str  # "found" | "none" | "capped"
    root: UnitRoot | None = None
    depth: int = 0
    nodes: int = 0


def search_unit_roots(h: list[int], p: int, depth_cap: int,
                      node_cap: int = 200_000) -> SearchOutcome:
    """Find a unit root of an integer polynomial h (ascending coefficients) in Z_p.

    Terminates below the cap when h is squarefree; a repeated root keeps
    its ball alive until the cap.
    """
    w0 = _content_val(h, p)
    g0 = [c // p ** w0 for c in h]
    stack = [(0, 0, g0, w0)]
    capped = False
    max_depth = 0
    nodes = 0
    while stack:
        r, s, g, w = stack.pop()
        nodes += 1
        if nodes > node_cap:
            return SearchOutcome("capped", None, max_depth, nodes)
        max_depth = max(max_depth, s + 1)
        candidates = roots_mod_p(g, p)
        if s == 0:
            candidates = [t for t in candidates if t % p]
        dg = _deriv(g)
        children = []
        for t0 in candidates:
            if _eval(dg, t0, p) % p:
                k = w - s
                prec = max(1, w - 2 * s + 1)
                t = _newton_simple(g, t0, p, prec)
                z = r + p ** s * t
                return SearchOutcome("found", UnitRoot(z, k, s + prec), max_depth, nodes)
            children.append(t0)
        for t0 in reversed(children):
            if s + 1 >= depth_cap:
                capped = True
                continue
            G = _compose_linear(g, t0, p)
            wc = _content_val(G, p)
            G = [c // p ** wc for c in G]
            stack.append((r + p ** s * t0, s + 1, G, w + wc))
    return SearchOutcome("capped" if capped else "none", None, max_depth, nodes)


def _normalize_univariate(f: SparsePoly) -> tuple[SparsePoly, int]:
    b = f.min_exponents()[0]
    return f.times_monomial([-b]), b


def _exact_root_cert(p: int, point, transcript) -> Certificate:
    return Certificate("exact_root", p, 0, list(point), None, None, list(transcript),
                       data={})


def verify_exact_root(f: SparsePoly, p: int, cert: Certificate) -> bool:
    pt = cert.root
    if pt is None or len(pt) != f.nvars:
        return False
    for c, e in f.terms:
        for x, a in zip(pt, e):
            if x == 0 and a < 0:
                return False
    try:
        return f.evaluate(pt) == 0
    except (ZeroDivisionError, TypeError):
        return False


@dataclass
class UnivariateSearch:
    answer: Answer
    certificate: Certificate | None = None
    precision: int = 0
    transcript: list[str] = field(default_factory=list)


def univariate_root_search(f: SparsePoly, p: int, depth_cap: int,
                           cert_ell: int | None = None, threads: int = 1) -> UnivariateSearch:
    """Search every integral Newton valuation class of f for a certified root.

    f must have at least two terms. The answer is Feasible (with a
    certificate), Infeasible (every branch died), or Unknown (depth cap).
    """
    F, _ = _normalize_univariate(f)
    vals = integral_root_valuations(F, p)
    trail = [f"integral root valuations {vals}"]
    if not vals:
        return UnivariateSearch(Answer.INFEASIBLE, None, 0,
                                trail + ["no lower edge has integral slope"])

    def run(v):
        kappa = min_scale(F, p, [v])
        hF = rescale(F, p, [v], kappa)
        dense = [0] * (hF.degree_range()[1] + 1)
        for c, e in hF.terms:
            dense[e[0]] = c
        return search_unit_roots(dense, p, depth_cap)

    if threads > 1 and len(vals) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(run, vals))
    else:
        outcomes = []
        for v in vals:
            outcomes.append(run(v))
            if outcomes[-1].status == "found":
                break
    precision = max(o.depth for o in outcomes)
    capped = False
    for v, out in zip(vals, outcomes):
        if out.status == "found":
            root = out.root
            scale = min_scale(f, p, [v])
            ell = max(cert_ell or 0, 2 * root.k + 1)
            cert = certificate_from_hensel(
                f, p, [root.z], 0, root.k, ell, shift=[v], scale=scale,
                transcript=trail + [f"root of valuation {v}: unit part {root.z} "
                                    f"mod p^{root.precision}, derivative valuation {root.k}"])
            return UnivariateSearch(Answer.FEASIBLE, cert, precision,
                                    trail + [f"certified root in valuation class {v}"])
        capped = capped or out.status == "capped"
    if capped:
        return UnivariateSearch(Answer.UNKNOWN, None, precision,
                                trail + [f"depth cap {depth_cap} reached"])
    return UnivariateSearch(Answer.INFEASIBLE, None, precision,
                            trail + ["all residue branches died"])


def squarefree_root_search(f: SparsePoly, p: int, depth_cap: int,
                           cert_ell: int | None = None, threads: int = 1) -> UnivariateSearch:
    """Root search on the squarefree part of f, whose roots are those of f.

    When the part is a proper factor the certificate names it as a divisor;
    the verifier checks the exact division before the Hensel condition.
    """
    F, _ = _normalize_univariate(f)
    S = squarefree_part(F)
    if S == F:
        return univariate_root_search(f, p, depth_cap, cert_ell, threads)
    res = univariate_root_search(S, p, depth_cap, cert_ell, threads)
    note = f"searched the squarefree part of degree {S.degree_range()[1]}"
    res.transcript.insert(0, note)
    if res.certificate is not None:
        res.certificate.data["divisor"] = to_json(S)
        res.certificate.transcript.insert(0, note)
    return res


def _verdict(res: UnivariateSearch, reason: str) -> FeasibilityVerdict:
    return FeasibilityVerdict(res.answer, res.certificate, reason, res.precision)


def feas_trivial(f: SparsePoly, p: int) -> FeasibilityVerdict:
    if len(f) > 1:
        raise ValueError("feas_trivial handles at most one term")
    if f.is_zero():
        return feasible(_exact_root_cert(p, [0] * f.nvars, ["zero polynomial"]),
                        "zero polynomial")
    c, e = f.terms[0]
    pos = [i for i, a in enumerate(e) if a > 0]
    if pos and all(a >= 0 for a in e):
        point = [0 if i == pos[0] else 1 for i in range(f.nvars)]
        return feasible(_exact_root_cert(p, point, [f"x{pos[0] + 1} = 0 kills the monomial"]),
                        "monomial vanishes on a coordinate hyperplane")
    return infeasible("a monomial without a zero-able coordinate never vanishes")


def _zero_root(f: SparsePoly, p: int) -> FeasibilityVerdict | None:
    lo = f.min_exponents()[0]
    if lo > 0:
        return feasible(_exact_root_cert(p, [0], ["x divides f"]), "x = 0 is a root")
    return None


def feas_univariate_generic(f: SparsePoly, p: int, row_cap: int = 10_000,
                            threads: int = 1) -> FeasibilityVerdict:
    """Decide f over Q_p when p does not divide the A-discriminant of f."""
    if f.nvars != 1:
        raise ValueError("univariate input expected")
    if len(f) <= 1:
        return feas_trivial(f, p)
    z = _zero_root(f, p)
    if z is not None:
        return z
    F, _ = _normalize_univariate(f)
    disc = a_discriminant(F, row_cap)
    ell = 4 * size_measure(f) + 1
    if disc % p == 0:
        # a certified simple root is still a proof; absence is not
        res = squarefree_root_search(f, p, ell, cert_ell=ell, threads=threads)
        if res.answer is Answer.FEASIBLE:
            return _verdict(res, "certified root although p divides the A-discriminant")
        return unknown("p divides the A-discriminant; defer to another method", res.precision)
    res = univariate_root_search(f, p, ell, cert_ell=ell, threads=threads)
    res.transcript.insert(0, f"p does not divide the A-discriminant; precision p^{ell}")
    if res.certificate is not None:
        res.certificate.transcript[:0] = res.transcript[:1]
    return _verdict(res, "generic search at precision 4 size(f) + 1")


def default_depth_cap(f: SparsePoly, p: int) -> int:
    s = size_measure(f)
    return max(2 ** 14, p * s * s)


def feas_univariate(f: SparsePoly, p: int, depth_cap: int | None = None,
                    threads: int = 1) -> FeasibilityVerdict:
    """General univariate search with a depth cap; Unknown at the cap."""
    if f.nvars != 1:
        raise ValueError("univariate input expected")
    if len(f) <= 1:
        return feas_trivial(f, p)
    z = _zero_root(f, p)
    if z is not None:
        return z
    if len(f) == 2:
        return _binomial_verdict(f, p)
    if len(f) == 3:
        return feas_trinomial(f, p, depth_cap)
    cap = depth_cap or default_depth_cap(f, p)
    F, _ = _normalize_univariate(f)
    try:
        if a_discriminant(F, 2000) % p:
            return feas_univariate_generic(f, p, threads=threads)
    except ValueError:
        pass
    res = squarefree_root_search(f, p, cap, threads=threads)
    return _verdict(res, "root search on the squarefree part")


def _binomial_verdict(f: SparsePoly, p: int) -> FeasibilityVerdict:
    value, d = binomial_of(f)
    v = feas_binomial(value, d, p)
    return v


# trinomials

def feas_trinomial(f: SparsePoly, p: int, depth_cap: int | None = None) -> FeasibilityVerdict:
    """Decide a univariate trinomial over Q_p."""
    if f.nvars != 1 or len(f) != 3:
        raise ValueError("feas_trinomial needs a univariate trinomial")
    z = _zero_root(f, p)
    if z is not None:
        return z
    F, _ = _normalize_univariate(f)
    (c1, _), (c2, (a2,)), (c3, (a3,)) = F.terms
    g = gcd(a2, a3)
    b2, b3 = a2 // g, a3 // g
    trail = [f"normalized to {c1} + {c2} x^{a2} + {c3} x^{a3}; exponent gcd {g}"]
    cap = depth_cap or default_depth_cap(f, p)

    if trinomial_discriminant_is_zero(c1, c2, c3, b2, b3):
        zeta = degenerate_root_trinomial(c1, c2, c3, b2, b3)
        trail.append(f"A-discriminant vanishes; degenerate root of the reduced trinomial: {zeta}")
        side = feas_binomial(zeta, g, p) if g > 1 else None
        if g == 1 or side.feasible:
            if g == 1:
                ell = 1
                wit = Certificate("binomial_witness", p, ell, [1], 0, 0, [],
                                  data={"value": zeta, "power": 1})
            else:
                wit = side.certificate
            cert = Certificate("binomial_witness", p, wit.ell, wit.root, 0,
                               wit.deriv_valuation,
                               trail + [f"x^{g} = {zeta} is solvable over Q_p"],
                               data={"value": zeta, "power": g})
            return feasible(cert, "degenerate root is p-adic", precision=wit.ell)
        trail.append(f"x^{g} = {zeta} has no solution; searching the other roots")
        res = squarefree_root_search(f, p, cap)
        res.transcript[:0] = trail
        return _verdict(res, "non-degenerate roots searched")

    trail.append("A-discriminant is nonzero (decided on a gcd-free basis)")
    pc = classify(F, p)
    hull = build_lower_hull(F, p)
    trail.append(f"Newton polygon: {'flat' if pc.flat else f'{len(hull.edges)} edges'}, "
                 f"generic={pc.generic}, ramified={pc.ramified}")
    e_vals = [ord_p(e.length, p) for e in hull.edges]
    trail.append(f"edge length valuations {e_vals}")
    if pc.generic and not pc.ramified and g == 1:
        # each lower binomial counts the roots in its valuation class
        hits = []
        for e in hull.edges:
            v = e.root_valuation
            if v.denominator != 1:
                continue
            value, d = binomial_of(e.lower_poly)
            sub = feas_binomial(value, d, p)
            trail.append(f"lower binomial x^{d} = {value}: {sub.answer.value}")
            if sub.feasible:
                hits.append(int(v))
        if not hits:
            return FeasibilityVerdict(Answer.INFEASIBLE, None,
                                      "no lower binomial has a p-adic root", 1)
        ell = 2 * size_measure(f) + 3
        res = univariate_root_search(f, p, ell)
        if res.answer is not Answer.FEASIBLE:
            raise AssertionError("lower-binomial count and root search disagree")
        res.certificate.transcript[:0] = trail
        return FeasibilityVerdict(Answer.FEASIBLE, res.certificate,
                                  "unramified lower binomial has a root", res.precision)
    # ramified or non-generic: geometric deepening
    depth = 2 * size_measure(f) + 3
    while True:
        res = univariate_root_search(f, p, min(depth, cap))
        if res.answer is not Answer.UNKNOWN or depth >= cap:
            break
        depth *= 2
    res.transcript[:0] = trail
    if res.certificate is not None:
        res.certificate.transcript[:0] = trail
    return _verdict(res, f"deepening search (cap {cap})")
