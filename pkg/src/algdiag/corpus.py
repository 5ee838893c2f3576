"""Regression corpus: named checks with independent expected values.

An entry is ``{"name", "kind", "inputs", "expected"}``.  ``expected`` is
either a SeriesJson literal or an oracle directive such as
``{"oracle": "central-binomial"}`` (see :mod:`algdiag.oracles`).
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import List, Optional

from . import oracles
from .artin_mazur import am_code_from_representation, am_code_simple, am_verify
from .denef_lipshitz import dl_rational
from .errors import AlgdiagError, UsageError
from .hensel import AlgebraicSeriesSpec, lift_root, lift_root_linear
from .jsonio import series_from_json
from .parser import parse_poly, parse_ratfun
from .pipelines import diag_from_expr, representation_from_texts, series_from_coeffs
from .poly import VarSet, annihilator_prod, annihilator_sum
from .series import TruncSeries, eval_poly_at_series
from .weierstrass import w_divide, w_prepare

KINDS = ("diagonal-identity", "lift", "dl-certificate", "am-code", "weierstrass", "annihilator", "lift-consistency")


@dataclass(frozen=True)
class EntryResult:
    name: str
    kind: str
    passed: bool
    detail: str
    seconds: float


def expected_series(expected, N: int, var: str = "x") -> TruncSeries:
    if "oracle" in expected:
        return series_from_coeffs(oracles.evaluate(expected, N), var)
    return series_from_json(expected)


def _compare(got: TruncSeries, expected, N: int):
    if "oracle" in expected and len(got.vars) != 1:
        raise UsageError("oracles describe univariate series")
    exp = expected_series(expected, N, got.vars[0] if "oracle" in expected else "x")
    bad = got.first_mismatch(exp, N)
    return bad is None, ("agrees through degree %d" % N) if bad is None else f"first mismatch at degree {bad}"


def _vars(inputs) -> VarSet:
    v = inputs.get("vars")
    if not v:
        raise UsageError("entry inputs need 'vars'")
    return VarSet(v)


def _run_diagonal(inp, expected):
    N = int(inp["order"])
    got = diag_from_expr(inp["diagonal"], inp["expr"], _vars(inp), N, inp.get("name", "t"))
    return _compare(got, expected, N)


def _run_lift(inp, expected):
    V, N = _vars(inp), int(inp["order"])
    P = parse_poly(inp["minpoly"], V)
    root = lift_root(P, Fraction(inp.get("lambda", "0")), N)
    ok, msg = _compare(root.series, expected, N)
    residual = eval_poly_at_series(P, root.series)
    if residual.terms:
        return False, "P(x, h) does not vanish"
    return ok, msg


def _run_dl(inp, expected):
    V, N = _vars(inp), int(inp["order"])
    P = parse_poly(inp["minpoly"], V)
    spec = AlgebraicSeriesSpec.of(P)
    W = None
    if "num" in inp:
        W = representation_from_texts(inp["num"], inp.get("den", ["1"]), spec.base_vars)
    cert = dl_rational(spec, W, N)
    if not cert.verification.passed:
        return False, f"diagonal differs from W(x,h) at degree {cert.verification.first_mismatch}"
    if expected:
        return _compare(cert.verification.computed, expected, N)
    return True, f"D(R) = W(x,h) through degree {N}"


def _run_am(inp, expected):
    V, N = _vars(inp), int(inp["order"])
    if "q" in inp:
        Q = parse_poly(inp["q"], V)
        code = am_code_simple(Q)
        xvars = V.without(V[-1])
        h = TruncSeries.zero(xvars, N)
    else:
        S = parse_poly(inp["s"], V)
        xvars = V.without(V[-1])
        rep = representation_from_texts(inp["num"], inp.get("den", ["1"]), xvars)
        code = am_code_from_representation(rep, S)
        h = lift_root(S, 0, N).series
    f = expected_series(expected["f"], N, xvars[0])
    res = am_verify(code, f, h, N)
    if not res.passed:
        return False, f"P(x,f,h) nonzero at degree {res.first_failure} (det {res.determinant})"
    return True, f"{code.branch} branch, det J = {res.determinant}, P(x,f,h) = 0 through {N}"


def _run_weierstrass(inp, expected):
    V, N = _vars(inp), int(inp["order"])
    v = inp["var"]
    g = TruncSeries.from_poly(parse_poly(inp["g"], V), N)
    xvars = V.without(v)

    def check(got: TruncSeries, text: str, label: str):
        want = parse_ratfun(text, got.vars).expand(got.bound)
        bad = got.first_mismatch(want)
        return None if bad is None else f"{label} differs at degree {bad}"

    problems = []
    if inp["mode"] == "divide":
        f = TruncSeries.from_poly(parse_poly(inp["f"], V), N)
        D = w_divide(f, g, v)
        W = D.window
        recon = (D.quotient.truncate(W) * g.truncate(W) + D.remainder()).first_mismatch(f.truncate(W))
        if recon is not None:
            problems.append(f"q*g + r != f at degree {recon}")
        if "quotient" in expected:
            problems.append(check(D.quotient, expected["quotient"], "quotient"))
        for j, text in enumerate(expected.get("remainder", [])):
            problems.append(check(D.remainder_coeffs[j], text, f"b_{j}"))
    elif inp["mode"] == "prepare":
        P = w_prepare(g, v)
        W = P.window
        recon = (P.unit.truncate(W) * P.polynomial()).first_mismatch(g.truncate(W))
        if recon is not None:
            problems.append(f"u*p != g at degree {recon}")
        if "unit" in expected:
            problems.append(check(P.unit, expected["unit"], "unit"))
        for j, text in enumerate(expected.get("distinguished", [])):
            problems.append(check(P.distinguished[j], text, f"a_{j}"))
    else:
        raise UsageError("weierstrass mode must be 'divide' or 'prepare'")
    problems = [p for p in problems if p]
    return not problems, "; ".join(problems) or f"reconstruction and expected values agree on window {W}"


def _run_annihilator(inp, expected):
    V, N = _vars(inp), int(inp["order"])
    if "poly" in inp:
        A = parse_poly(inp["poly"], V)
    else:
        P1, P2 = parse_poly(inp["p1"], V), parse_poly(inp["p2"], V)
        op = inp["op"]
        if op not in ("add", "mul"):
            raise UsageError("annihilator op must be 'add' or 'mul'")
        A = annihilator_sum(P1, P2) if op == "add" else annihilator_prod(P1, P2)
    target = expected_series(expected["annihilates"], N, V[0])
    res = eval_poly_at_series(A, target)
    if res.terms:
        return False, f"annihilator leaves a residual at degree {min(sum(e) for e in res.terms)}"
    return True, f"degree-{A.degree_in(V[-1])} annihilator vanishes through {N}"


def _run_consistency(inp, expected):
    V, N = _vars(inp), int(inp["order"])
    P = parse_poly(inp["minpoly"], V)
    a = lift_root(P, 0, N).series
    b = lift_root_linear(P, 0, N)
    bad = a.first_mismatch(b)
    return bad is None, "Newton and linear lifting agree" if bad is None else f"disagree at degree {bad}"


RUNNERS = {
    "diagonal-identity": _run_diagonal,
    "lift": _run_lift,
    "dl-certificate": _run_dl,
    "am-code": _run_am,
    "weierstrass": _run_weierstrass,
    "annihilator": _run_annihilator,
    "lift-consistency": _run_consistency,
}


def run_entry(entry) -> EntryResult:
    name, kind = entry.get("name", "?"), entry.get("kind")
    t0 = time.perf_counter()
    try:
        if kind not in RUNNERS:
            raise UsageError(f"unknown corpus kind {kind!r}")
        ok, detail = RUNNERS[kind](entry.get("inputs", {}), entry.get("expected") or {})
    except AlgdiagError as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return EntryResult(name, kind, ok, detail, time.perf_counter() - t0)


def load_corpus(path: Optional[str] = None) -> list:
    if path in (None, "builtin"):
        text = resources.files("algdiag").joinpath("data/corpus.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    entries = json.loads(text)
    if not isinstance(entries, list):
        raise UsageError("a corpus file holds a JSON list of entries")
    names = [e.get("name") for e in entries]
    if len(set(names)) != len(names):
        raise UsageError("corpus entry names must be unique")
    return entries


def random_etale_entries(count: int, seed: int, order: int = 12) -> list:
    """Random etale annihilators (t - p(x)) * u(x, t) + t^2 * w, for lifting cross-checks."""
    rng = random.Random(seed)
    entries = []
    for k in range(count):
        p = " + ".join(f"{rng.randint(-5, 5)}/{rng.randint(1, 4)}*x^{e}" for e in range(1, 4))
        u0 = rng.choice([1, 2, -3, 5])
        u = f"{u0} + {rng.randint(-3, 3)}*x + {rng.randint(-3, 3)}*t"
        w = f"{rng.randint(-2, 2)}*x"
        entries.append({
            "name": f"random-lift-{seed}-{k}",
            "kind": "lift-consistency",
            "inputs": {"minpoly": f"(t - ({p}))*({u}) + t^2*({w})", "vars": ["x", "t"], "order": order},
        })
    return entries


def run_corpus(entries, jobs: int = 1) -> List[EntryResult]:
    """Run entries, optionally in worker processes; results are ordered by entry name."""
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_entry, entries))
    else:
        results = [run_entry(e) for e in entries]
    return sorted(results, key=lambda r: r.name)
