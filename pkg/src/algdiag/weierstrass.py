"""Formal Weierstrass division and preparation on truncated series.

Exactness is tracked with the weight w(x'^b v^j) = d*|b| + j, where d is
the v-regularity order of the divisor.  Weight is at least total degree,
so inputs exact through total degree N are exact through weight N, and
division maps weight <= N data to a quotient exact through weight N - d
and a remainder exact through weight N.  Converted back to total degree
this gives a quotient window of (N - d) // d and a window of (N - j) // d
for the coefficient of v^j in the remainder (no x' variables: N - d and N).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple

from .errors import NotRegular, UsageError, VarSetMismatch
from .poly import Exponent, VarSet
from .series import TruncSeries, inv_terms, mul_terms, regular_order


@dataclass(frozen=True)
class WeierstrassDivision:
    quotient: TruncSeries
    remainder_coeffs: Tuple[TruncSeries, ...]
    var: str
    order: int
    window: int

    def remainder(self) -> TruncSeries:
        """r = sum b_j v^j over the full variable set, exact through ``window``."""
        vars = self.quotient.vars
        return _assemble(vars, self.var, self.remainder_coeffs, self.window)


@dataclass(frozen=True)
class WeierstrassPreparation:
    unit: TruncSeries
    distinguished: Tuple[TruncSeries, ...]
    var: str
    order: int
    window: int

    def polynomial(self) -> TruncSeries:
        """p = v^d + sum a_i v^i, exact through ``window``."""
        vars = self.unit.vars
        return _assemble(vars, self.var, self.distinguished + (None,), self.window)


def _assemble(vars: VarSet, v: str, coeffs, bound: int) -> TruncSeries:
    vi = vars.index(v)
    terms = {}
    for j, b in enumerate(coeffs):
        if b is None:
            e = [0] * len(vars)
            e[vi] = j
            terms[tuple(e)] = 1
            continue
        for e, c in b.terms.items():
            full = list(e[:vi]) + [j] + list(e[vi:])
            terms[tuple(full)] = c
    return TruncSeries(vars, bound, terms)


def _split(terms, vi, d):
    """Split into (v-degree < d part, v^-d * (v-degree >= d part))."""
    low, high = {}, {}
    for e, c in terms.items():
        if e[vi] < d:
            low[e] = c
        else:
            high[e[:vi] + (e[vi] - d,) + e[vi + 1:]] = c
    return low, high


def _sub(a: Dict, b: Dict) -> Dict:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) - c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _core(f_terms, g: TruncSeries, v: str, N: int):
    vars = g.vars
    n = len(vars)
    vi = vars.index(v)
    order = regular_order(g, v)
    if not order.is_finite:
        raise NotRegular(f"g is not {v}-regular inside the window (bound {g.bound})")
    d = order.value
    weights = tuple(1 if i == vi else d for i in range(n))

    def w(e):
        return sum(a * b for a, b in zip(e, weights))

    f_w = {e: c for e, c in f_terms.items() if w(e) <= N}
    g_w = {e: c for e, c in g.terms.items() if w(e) <= N}
    g_low, g_hat = _split(g_w, vi, d)
    inv_hat = inv_terms(g_hat, n, N - d, weights)
    K = mul_terms(inv_hat, g_low, n, N, weights)
    Q: Dict[Exponent, Fraction] = {}
    # the update raises the x'-degree by one, and x'-degree m costs weight d*m
    for _ in range(N // d + 2):
        _, newQ = _split(_sub(f_w, mul_terms(Q, K, n, N, weights)), vi, d)
        if newQ == Q:
            break
        Q = newQ
    else:
        raise AssertionError("Weierstrass iteration did not stabilise")
    rest = _sub(f_w, mul_terms(Q, K, n, N, weights))
    r_terms, _ = _split(rest, vi, d)
    q_terms = mul_terms(Q, inv_hat, n, N - d, weights)
    return d, vi, q_terms, r_terms


def _windows(n_other: int, N: int, d: int):
    if n_other == 0:
        return N - d, [N] * d
    return (N - d) // d, [(N - j) // d for j in range(d)]


def _remainder_series(vars: VarSet, vi: int, d: int, r_terms, bounds):
    xvars = VarSet(n for i, n in enumerate(vars) if i != vi)
    coeffs = []
    for j in range(d):
        terms = {e[:vi] + e[vi + 1:]: c for e, c in r_terms.items() if e[vi] == j}
        coeffs.append(TruncSeries(xvars, bounds[j], terms))
    return tuple(coeffs)


def w_divide(f: TruncSeries, g: TruncSeries, v: str) -> WeierstrassDivision:
    """f = q*g + sum_{j<d} b_j(x') v^j for v-regular g of order d."""
    if f.vars != g.vars:
        raise VarSetMismatch(f"variable sets differ: ({f.vars}) vs ({g.vars})")
    N = min(f.bound, g.bound)
    g = g.truncate(N)
    if g.constant_term():
        # order 0: g is a unit, so plain division with no remainder
        n = len(g.vars)
        q_terms = mul_terms(f.terms, inv_terms(g.terms, n, N), n, N)
        return WeierstrassDivision(TruncSeries(g.vars, N, q_terms), (), v, 0, N)
    d, vi, q_terms, r_terms = _core(f.terms, g, v, N)
    q_bound, r_bounds = _windows(len(g.vars) - 1, N, d)
    quotient = TruncSeries(g.vars, q_bound, q_terms)
    rem = _remainder_series(g.vars, vi, d, r_terms, r_bounds)
    return WeierstrassDivision(quotient, rem, v, d, min([q_bound] + r_bounds))


def w_prepare(g: TruncSeries, v: str) -> WeierstrassPreparation:
    """g = u * p with u a unit and p = v^d + sum a_i(x') v^i distinguished.

    Divides v^d by g: v^d = q*g + r, so p = v^d - r and u = 1/q.
    """
    vars = g.vars
    vi = vars.index(v)
    order = regular_order(g, v)
    if not order.is_finite:
        raise NotRegular(f"g is not {v}-regular inside the window (bound {g.bound})")
    d = order.value
    N = g.bound
    if d == 0:
        return WeierstrassPreparation(g, (), v, 0, N)
    vd = tuple(d if i == vi else 0 for i in range(len(vars)))
    d_, _, q_terms, r_terms = _core({vd: Fraction(1)}, g, v, N)
    weights = tuple(1 if i == vi else d for i in range(len(vars)))
    u_terms = inv_terms(q_terms, len(vars), N - d, weights)
    q_bound, r_bounds = _windows(len(vars) - 1, N, d)
    unit = TruncSeries(vars, q_bound, u_terms)
    a = tuple(-b for b in _remainder_series(vars, vi, d, r_terms, r_bounds))
    for coeff in a:
        if coeff.constant_term():
            raise UsageError("internal: distinguished coefficient with nonzero constant term")
    return WeierstrassPreparation(unit, a, v, d, min([q_bound] + r_bounds))
