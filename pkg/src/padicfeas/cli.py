"""Command-line front end. Every subcommand prints JSON on stdout.

Exit codes: 0 Feasible/success, 1 Infeasible (or an invalid certificate),
2 Unknown/failure, 3 input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import hardness, oracle
from .feasibility import METHODS, Answer, Certificate, solve, verify_certificate
from .newton import build_lower_hull, classify, root_valuations
from .primes import ForgeParams, first_primes, forge_prime, is_prime, wagstaff_prime
from .resultants import TooLargeError, a_discriminant
from .sparse_poly import PolyParseError, SparsePoly, parse_poly, to_json as poly_to_json

EXIT_OK, EXIT_NO, EXIT_UNKNOWN, EXIT_INPUT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _nat(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a natural number: {s!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"not a natural number: {s!r}")
    return v


def _prime(s: str) -> int:
    v = _nat(s)
    if v < 2 or not is_prime(v):
        raise argparse.ArgumentTypeError(f"{s} is not a prime")
    return v


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _poly(args) -> SparsePoly:
    if args.poly is None and args.poly_file is None:
        raise InputError("give --poly or --poly-file")
    text = args.poly if args.poly is not None else _read(args.poly_file)
    try:
        return parse_poly(text)
    except PolyParseError as exc:
        where = "" if exc.position is None or "position" in str(exc) else \
            f" at position {exc.position}"
        raise InputError(f"malformed polynomial{where}: {exc}") from None
    except ValueError as exc:
        raise InputError(f"malformed polynomial: {exc}") from None


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _answer_code(answer: Answer) -> int:
    return {Answer.FEASIBLE: EXIT_OK, Answer.INFEASIBLE: EXIT_NO}.get(answer, EXIT_UNKNOWN)


def cmd_solve(args) -> int:
    f = _poly(args)
    try:
        verdict = solve(f, args.prime, args.method, args.depth, args.threads)
    except TooLargeError as exc:
        _emit({"answer": Answer.UNKNOWN.value, "reason": str(exc), "certificate": None})
        return EXIT_UNKNOWN
    _emit(verdict.to_json())
    return _answer_code(verdict.answer)


def cmd_certify(args) -> int:
    f = _poly(args)
    verdict = solve(f, args.prime, args.method, args.depth, args.threads)
    cert = verdict.certificate
    if cert is None:
        _emit({"answer": verdict.answer.value, "reason": verdict.reason, "certificate": None})
        return EXIT_UNKNOWN if verdict.answer is not Answer.INFEASIBLE else EXIT_NO
    _emit(cert.to_json())
    return _answer_code(verdict.answer)


def cmd_verify(args) -> int:
    f = _poly(args)
    raw = _read(args.cert)
    try:
        obj = json.loads(raw)
        if isinstance(obj, dict) and "certificate" in obj and "kind" not in obj:
            obj = obj["certificate"]
        cert = Certificate.from_json(obj)
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"malformed certificate: {exc}") from None
    ok = verify_certificate(f, args.prime, cert)
    _emit({"valid": ok, "kind": cert.kind})
    return EXIT_OK if ok else EXIT_NO


def cmd_newton(args) -> int:
    f = _poly(args)
    if f.nvars != 1 or len(f) < 1:
        raise InputError("newton-polygon needs a nonzero univariate polynomial")
    hull = build_lower_hull(f, args.prime)
    cls = classify(f, args.prime)
    _emit({
        "points": [[str(a), str(b)] for a, b in hull.points],
        "edges": [e.to_json() for e in hull.edges],
        "inner_normals": [[str(e.inner_normal[0]), str(e.inner_normal[1])] for e in hull.edges],
        "root_valuations": [[str(v), n] for v, n in root_valuations(f, args.prime)],
        "class": {"generic": cls.generic, "flat": cls.flat, "ramified": cls.ramified},
    })
    return EXIT_OK


def cmd_discriminant(args) -> int:
    f = _poly(args)
    if f.nvars != 1 or len(f) < 2:
        raise InputError("discriminant needs a univariate polynomial with at least two terms")
    try:
        disc = a_discriminant(f, args.budget or 10_000)
    except TooLargeError as exc:
        _emit({"error": str(exc)})
        return EXIT_UNKNOWN
    out = {"discriminant": str(disc)}
    if args.prime is not None:
        out["prime"] = str(args.prime)
        out["divisible"] = disc % args.prime == 0
    _emit(out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    f = _poly(args)
    window = None
    if args.window is not None:
        try:
            lo, hi = (int(x) for x in args.window.split(","))
        except ValueError:
            raise InputError("--window takes vmin,vmax") from None
        window = (lo, hi)
    budget = args.budget or oracle.DEFAULT_NODE_BUDGET
    try:
        res = oracle.feas_oracle_qp(f, args.prime, window, args.depth or 6, node_budget=budget)
    except oracle.OracleBudgetError as exc:
        _emit({"status": oracle.INCONCLUSIVE, "reason": str(exc)})
        return EXIT_UNKNOWN
    _emit({
        "status": res.status,
        "nodes": res.nodes,
        "trail": res.trail,
        "polynomial": None if res.polynomial is None else poly_to_json(res.polynomial),
        "certificate": None if res.certificate is None else res.certificate.to_json(),
    })
    return {oracle.FEASIBLE: EXIT_OK, oracle.INFEASIBLE_AT_DEPTH: EXIT_NO}.get(res.status,
                                                                             EXIT_UNKNOWN)


def cmd_reduce_sat(args) -> int:
    try:
        cnf = hardness.read_dimacs(_read(args.cnf))
    except hardness.CnfError as exc:
        raise InputError(f"malformed CNF: {exc}") from None
    n = max(cnf.nvars, 1)
    if args.prime_mode == "forge":
        res = forge_prime(ForgeParams(n, args.epsilon, rng_seed=args.seed))
        if res.status != "success":
            _emit({"status": "failure", "forge": res.to_json()})
            return EXIT_UNKNOWN
        P, p = res.primes, res.p
    else:
        P = first_primes(n)
        p = args.prime
        if p is None:
            _, p = wagstaff_prime(n)
    system, D = hardness.reduce_3sat(cnf, P)
    if (p - 1) % D:
        raise InputError(f"p = {p} is not 1 mod D = {D}")
    out = {
        "primes": [str(q) for q in P],
        "D": str(D),
        "p": str(p),
        "system": [b.to_json() for b in system],
    }
    if args.collapse:
        g = hardness.combine_system(system, D).expand()
        out["collapsed"] = poly_to_json(hardness.collapse_to_single(g, D, p))
    _emit(out)
    return EXIT_OK


def cmd_forge(args) -> int:
    if args.wagstaff:
        k, p = wagstaff_prime(args.n)
        _emit({"mode": "wagstaff", "k": str(k), "p": str(p)})
        return EXIT_OK
    res = forge_prime(ForgeParams(args.n, args.epsilon, rng_seed=args.seed))
    _emit(res.to_json())
    return EXIT_OK if res.status == "success" else EXIT_UNKNOWN


def _fraction(s: str) -> float:
    try:
        return float(Fraction(s))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {s!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="padicfeas", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def poly_flags(sp, prime_required=True):
        sp.add_argument("--prime", type=_prime, required=prime_required)
        sp.add_argument("--poly")
        sp.add_argument("--poly-file")

    for name, fn in (("solve", cmd_solve), ("certify", cmd_certify)):
        sp = sub.add_parser(name)
        poly_flags(sp)
        sp.add_argument("--method", choices=METHODS, default="auto")
        sp.add_argument("--depth", type=_nat)
        sp.add_argument("--threads", type=_nat, default=1)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("verify")
    poly_flags(sp)
    sp.add_argument("--cert", required=True)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("newton-polygon")
    poly_flags(sp)
    sp.set_defaults(func=cmd_newton)

    sp = sub.add_parser("discriminant")
    poly_flags(sp, prime_required=False)
    sp.add_argument("--budget", type=_nat)
    sp.set_defaults(func=cmd_discriminant)

    sp = sub.add_parser("oracle")
    poly_flags(sp)
    sp.add_argument("--depth", type=_nat)
    sp.add_argument("--window")
    sp.add_argument("--budget", type=_nat)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("reduce-sat")
    sp.add_argument("--cnf", required=True)
    sp.add_argument("--prime-mode", choices=("forge", "given"), default="given")
    sp.add_argument("--prime", type=_prime)
    sp.add_argument("--epsilon", type=_fraction, default=1 / 3)
    sp.add_argument("--seed", type=_nat, default=0)
    sp.add_argument("--collapse", action="store_true")
    sp.set_defaults(func=cmd_reduce_sat)

    sp = sub.add_parser("forge-prime")
    sp.add_argument("--n", type=_nat, required=True)
    sp.add_argument("--epsilon", type=_fraction, default=1 / 3)
    sp.add_argument("--seed", type=_nat, default=0)
    sp.add_argument("--wagstaff", action="store_true")
    sp.add_argument("--threads", type=_nat, default=1)
    sp.set_defaults(func=cmd_forge)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    except InputError as exc:
        print(f"padicfeas: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, ArithmeticError) as exc:
        print(f"padicfeas: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # never let a traceback reach the user
        print(f"padicfeas: internal failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN


if __name__ == "__main__":
    sys.exit(main())
