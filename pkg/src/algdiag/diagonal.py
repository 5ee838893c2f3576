"""Small diagonal, big diagonal and Hadamard product of truncated series."""

from __future__ import annotations

from typing import Sequence

from .errors import UsageError, VarSetMismatch
from .poly import VarSet
from .series import TruncSeries


def small_diagonal(g: TruncSeries, name: str = "t") -> TruncSeries:
    """Sum of g_{j,...,j} t^j; exact for n*j <= bound, so the window is bound // n."""
    n = len(g.vars)
    if n < 1:
        raise UsageError("small diagonal needs at least one variable")
    bound = g.bound // n
    terms = {}
    for e, c in g.terms.items():
        j = e[0]
        if j <= bound and all(k == j for k in e):
            terms[(j,)] = c
    return TruncSeries(VarSet([name]), bound, terms)


def big_diagonal(f: TruncSeries, t: str = None) -> TruncSeries:
    """Keep x^a t^j with |a| = j and drop t.

    A surviving monomial has total degree 2|a|, so the window halves.
    """
    t = t or f.vars[-1]
    ti = f.vars.index(t)
    out_vars = f.vars.without(t)
    bound = f.bound // 2
    terms = {}
    for e, c in f.terms.items():
        j = e[ti]
        rest = e[:ti] + e[ti + 1:]
        if sum(rest) == j and j <= bound:
            terms[rest] = c
    return TruncSeries(out_vars, bound, terms)


def hadamard(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    if f.vars != g.vars:
        raise VarSetMismatch(f"variable sets differ: ({f.vars}) vs ({g.vars})")
    bound = min(f.bound, g.bound)
    terms = {}
    for e, c in f.terms.items():
        d = g.terms.get(e)
        if d is not None and sum(e) <= bound:
            terms[e] = c * d
    return TruncSeries(f.vars, bound, terms)


def geom(vars, exponent: Sequence[int], bound: int) -> TruncSeries:
    """1 / (1 - m) for the monomial m = vars^exponent."""
    if not isinstance(vars, VarSet):
        vars = VarSet(vars)
    exponent = tuple(exponent)
    step = sum(exponent)
    if len(exponent) != len(vars) or step < 1:
        raise UsageError("geom needs a non-constant monomial")
    terms = {}
    k = 0
    while k * step <= bound:
        terms[tuple(k * a for a in exponent)] = 1
        k += 1
    return TruncSeries(vars, bound, terms)


def all_ones(vars, bound: int) -> TruncSeries:
    """The series with every coefficient 1 (Hadamard identity)."""
    if not isinstance(vars, VarSet):
        vars = VarSet(vars)
    n = len(vars)
    terms = {}

    def rec(prefix, left):
        if len(prefix) == n - 1:
            for k in range(left + 1):
                terms[prefix + (k,)] = 1
            return
        for k in range(left + 1):
            rec(prefix + (k,), left - k)

    if n == 0:
        terms[()] = 1
    else:
        rec((), bound)
    return TruncSeries(vars, bound, terms)
