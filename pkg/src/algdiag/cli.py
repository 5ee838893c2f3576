"""Command-line interface.

Exit codes: 0 success, 1 verification failed, 2 usage or parse error,
3 mathematical precondition violated.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

from . import __version__
from .artin_mazur import am_code_from_representation, am_code_simple, am_verify
from .corpus import load_corpus, random_etale_entries, run_corpus
from .denef_lipshitz import dl_rational
from .errors import MathError, UsageError
from .hensel import AlgebraicSeriesSpec, lift_factorization, lift_root
from .jsonio import emit
from .parser import parse_poly, parse_ratfun
from .pipelines import diag_from_expr, hadamard_from_exprs, representation_from_texts, split_list
from .poly import VarSet, annihilator_prod, annihilator_sum
from .series import TruncSeries, eval_poly_at_series
from .weierstrass import w_divide, w_prepare

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_MATH = 0, 1, 2, 3


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class Outcome:
    """What a command produced: a JSON-ready payload, text lines, and an exit code."""

    def __init__(self, payload: dict, lines: List[str], code: int = EXIT_OK):
        self.payload, self.lines, self.code = payload, lines, code


def _vars(args, default: Optional[str] = None) -> VarSet:
    text = args.vars or default
    if not text:
        raise UsageError("--vars is required, e.g. --vars x,t")
    return VarSet(text)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {text!r}") from exc


def cmd_diag(args) -> Outcome:
    V = _vars(args)
    s = diag_from_expr(args.kind, args.expr, V, args.order, args.name)
    return Outcome({"command": "diag", "kind": args.kind, "series": s}, [s.to_expr()])


def cmd_lift(args) -> Outcome:
    V = _vars(args)
    P = parse_poly(args.minpoly, V)
    root = lift_root(P, _fraction(args.lam), args.order)
    return Outcome(
        {"command": "lift", "lambda": root.root_at_origin, "series": root.series},
        [root.series.to_expr()],
    )


def cmd_lift_factor(args) -> Outcome:
    V = _vars(args)
    f, p0, q0 = (parse_poly(s, V) for s in (args.f, args.p0, args.q0))
    p, q = lift_factorization(f, p0, q0, args.order)
    return Outcome(
        {"command": "lift-factor", "var": V[-1], "p": list(p.coeffs), "q": list(q.coeffs)},
        [f"p = {p.to_expr()}", f"q = {q.to_expr()}"],
    )


def cmd_dl(args) -> Outcome:
    V = _vars(args)
    spec = AlgebraicSeriesSpec.of(parse_poly(args.minpoly, V))
    W = None
    if args.num is not None:
        W = representation_from_texts(split_list(args.num), split_list(args.den or "1"), spec.base_vars)
    cert = dl_rational(spec, W, args.order)
    v = cert.verification
    status = "PASS" if v.passed else f"FAIL (first mismatch at degree {v.first_mismatch})"
    payload = {
        "command": "dl",
        "R": {"numerator": cert.R.numerator, "denominator": cert.R.denominator},
        "order": v.order,
        "expected": v.expected,
        "computed": v.computed,
        "passed": v.passed,
        "first_mismatch": v.first_mismatch,
    }
    lines = [f"R = {cert.R.to_expr()}", f"D(R) = {v.computed.to_expr()}", f"verification through degree {v.order}: {status}"]
    return Outcome(payload, lines, EXIT_OK if v.passed else EXIT_FAILED)


def cmd_weierstrass(args) -> Outcome:
    V = _vars(args)
    var = args.var or V[-1]
    g = TruncSeries.from_poly(parse_poly(args.g, V), args.order)
    if args.mode == "prepare":
        P = w_prepare(g, var)
        payload = {"command": "weierstrass", "mode": "prepare", "var": var, "order": P.order, "window": P.window,
                   "unit": P.unit, "distinguished": list(P.distinguished)}
        lines = [f"order in {var}: {P.order}, exact window: {P.window}",
                 f"u = {P.unit.to_expr()}", f"p = {P.polynomial().to_expr()}"]
        return Outcome(payload, lines)
    if args.f is None:
        raise UsageError("weierstrass divide needs --f")
    f = TruncSeries.from_poly(parse_poly(args.f, V), args.order)
    D = w_divide(f, g, var)
    payload = {"command": "weierstrass", "mode": "divide", "var": var, "order": D.order, "window": D.window,
               "quotient": D.quotient, "remainder": list(D.remainder_coeffs)}
    lines = [f"order in {var}: {D.order}, exact window: {D.window}",
             f"q = {D.quotient.to_expr()}", f"r = {D.remainder().to_expr()}"]
    return Outcome(payload, lines)


def cmd_am_code(args) -> Outcome:
    V = _vars(args)
    xvars = V.without(V[-1])
    N = args.order
    if args.q is not None:
        Q = parse_poly(args.q, V)
        code = am_code_simple(Q)
        f, h = lift_root(Q, 0, N).series, TruncSeries.zero(xvars, N)
    else:
        if args.s is None or args.num is None:
            raise UsageError("am-code needs --q, or --s with --num (and optionally --den)")
        S = parse_poly(args.s, V)
        rep = representation_from_texts(split_list(args.num), split_list(args.den or "1"), xvars)
        code = am_code_from_representation(rep, S)
        h = lift_root(S, 0, N).series
        f = rep.evaluate(h)
    (a, b), (c, d) = code.jacobian_at_origin
    payload = {"command": "am-code", "branch": code.branch, "vars": list(code.vars),
               "pair": list(code.pair), "jacobian_at_origin": [[a, b], [c, d]], "determinant": code.determinant()}
    lines = [f"branch: {code.branch}", f"P1 = {code.pair[0].to_expr()}", f"P2 = {code.pair[1].to_expr()}",
             f"det J(0) = {code.determinant()}"]
    status = EXIT_OK
    if args.verify:
        res = am_verify(code, f, h, N)
        payload.update(f=f, h=h, passed=res.passed, first_failure=res.first_failure)
        lines.append(f"f = {f.to_expr()}")
        lines.append(f"P(x,f,h) = 0 through degree {N}: " + ("PASS" if res.passed else f"FAIL at degree {res.first_failure}"))
        status = EXIT_OK if res.passed else EXIT_FAILED
    return Outcome(payload, lines, status)


def cmd_annihilate(args) -> Outcome:
    V = _vars(args)
    P1, P2 = parse_poly(args.p1, V), parse_poly(args.p2, V)
    A = annihilator_sum(P1, P2) if args.op == "add" else annihilator_prod(P1, P2)
    payload = {"command": "annihilate", "op": args.op, "annihilator": A}
    lines = [A.to_expr()]
    status = EXIT_OK
    if args.roots is not None:
        lams = [_fraction(s) for s in split_list(args.roots)]
        if len(lams) != 2:
            raise UsageError("--roots takes two values, one per input polynomial")
        f1, f2 = (lift_root(P, lam, args.order).series for P, lam in zip((P1, P2), lams))
        combined = f1 + f2 if args.op == "add" else f1 * f2
        residual = eval_poly_at_series(A, combined)
        ok = not residual.terms
        payload.update(series=combined, passed=ok)
        lines.append(f"annihilates the combined root through degree {args.order}: " + ("PASS" if ok else "FAIL"))
        status = EXIT_OK if ok else EXIT_FAILED
    return Outcome(payload, lines, status)


def cmd_hadamard(args) -> Outcome:
    V = _vars(args)
    s = hadamard_from_exprs(args.f, args.g, V, args.order)
    return Outcome({"command": "hadamard", "series": s}, [s.to_expr()])


def cmd_corpus(args) -> Outcome:
    entries = load_corpus(args.path)
    if args.random:
        entries = entries + random_etale_entries(args.random, args.seed)
    results = run_corpus(entries, args.jobs)
    failed = [r for r in results if not r.passed]
    width = max((len(r.name) for r in results), default=4)
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.name:<{width}}  {r.kind:<18} {r.seconds:7.2f}s  {r.detail}" for r in results]
    lines.append(f"{len(results) - len(failed)}/{len(results)} entries passed")
    payload = {"command": "corpus", "results": [
        {"name": r.name, "kind": r.kind, "passed": r.passed, "detail": r.detail} for r in results
    ], "passed": not failed}
    return Outcome(payload, lines, EXIT_FAILED if failed else EXIT_OK)


def build_parser() -> argparse.ArgumentParser:
    # Global flags are accepted before or after the subcommand; the subparser
    # copies use SUPPRESS so they only override when actually given.
    def add_globals(p, top: bool):
        dflt = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
        p.add_argument("--vars", default=dflt(None), help="comma-separated variable order; the last one is t")
        p.add_argument("--order", type=int, default=dflt(10), help="truncation order N")
        p.add_argument("--format", choices=("text", "json"), default=dflt("text"))
        p.add_argument("--seed", type=int, default=dflt(0), help="seed for randomized entries")

    parser = _ArgParser(prog="algdiag", description="Exact diagonals, Hensel lifting and algebraic series codes.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    add_globals(parser, True)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgParser)

    def command(name, func, help):
        p = sub.add_parser(name, help=help)
        add_globals(p, False)
        p.set_defaults(func=func)
        return p

    p = command("diag", cmd_diag, "small or big diagonal of a rational function")
    p.add_argument("kind", choices=("small", "big"))
    p.add_argument("expr")
    p.add_argument("--name", default="t", help="variable name of a small diagonal")

    p = command("lift", cmd_lift, "Hensel-lift a simple root of P(x, t)")
    p.add_argument("minpoly")
    p.add_argument("--lambda", dest="lam", default="0", help="root of P(0, t) to lift")

    p = command("lift-factor", cmd_lift_factor, "lift f(0,t) = p0*q0 to f = p*q")
    p.add_argument("f")
    p.add_argument("p0")
    p.add_argument("q0")

    p = command("dl", cmd_dl, "rational R with D(R) = W(x, h)")
    p.add_argument("minpoly")
    p.add_argument("--num", help="comma-separated numerator coefficients a_0,a_1,... in x")
    p.add_argument("--den", help="comma-separated denominator coefficients b_0,b_1,... in x")

    p = command("weierstrass", cmd_weierstrass, "Weierstrass preparation or division")
    p.add_argument("mode", choices=("prepare", "divide"))
    p.add_argument("--g", required=True)
    p.add_argument("--f")
    p.add_argument("--var", help="distinguished variable (default: last of --vars)")

    p = command("am-code", cmd_am_code, "two-polynomial code with invertible Jacobian")
    p.add_argument("--q", help="annihilator Q(x, t) with a simple root at 0")
    p.add_argument("--s", help="etale annihilator S(x, t) of h")
    p.add_argument("--num")
    p.add_argument("--den")
    p.add_argument("--verify", action="store_true")

    p = command("annihilate", cmd_annihilate, "annihilator of a sum or product of algebraic series")
    p.add_argument("op", choices=("add", "mul"))
    p.add_argument("p1")
    p.add_argument("p2")
    p.add_argument("--roots", help="lambda1,lambda2: lift these roots and check the result")

    p = command("hadamard", cmd_hadamard, "Hadamard product of two expansions")
    p.add_argument("f")
    p.add_argument("g")

    p = command("corpus", cmd_corpus, "run a regression corpus")
    p.add_argument("path", nargs="?", default="builtin")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--random", type=int, default=0, help="append this many random lifting cross-checks")
    return parser


def render(outcome: Outcome, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(emit(outcome.payload), indent=2)
    return "\n".join(outcome.lines)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.order < 0:
            raise UsageError("--order must be nonnegative")
        outcome = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MathError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MATH
    print(render(outcome, args.format))
    return outcome.code


if __name__ == "__main__":
    sys.exit(main())
