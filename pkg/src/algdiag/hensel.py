"""Etale-algebraicity, Hensel lifting of simple roots and of coprime factorizations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Sequence, Tuple

from .errors import BadSeed, MultipleRoot, NotARoot, NotCoprime, UsageError
from .poly import MultiPoly, VarSet, as_fraction
from .series import TruncSeries, eval_poly_at_series, invert_unit


class EtaleCheck(NamedTuple):
    ok: bool
    reason: str

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class AlgebraicSeriesSpec:
    """An annihilator P(x, t) with its designated series variable."""

    annihilator: MultiPoly
    series_var: str

    def __post_init__(self):
        P = self.annihilator
        if P.is_zero() or P.degree_in(self.series_var) < 1:
            raise UsageError(f"annihilator must have positive degree in {self.series_var}")

    @classmethod
    def of(cls, P: MultiPoly, t: str = None) -> "AlgebraicSeriesSpec":
        return cls(P, t or P.vars[-1])

    @property
    def base_vars(self) -> VarSet:
        return self.annihilator.vars.without(self.series_var)

    @property
    def etale_flag(self) -> bool:
        return is_etale_algebraic(self.annihilator, self.series_var).ok


@dataclass(frozen=True)
class LiftedRoot:
    spec: AlgebraicSeriesSpec
    root_at_origin: Fraction
    series: TruncSeries


def is_etale_algebraic(P: MultiPoly, t: str = None) -> EtaleCheck:
    t = t or P.vars[-1]
    if P.is_zero():
        return EtaleCheck(False, "P is the zero polynomial")
    p00 = P.at_origin()
    if p00:
        return EtaleCheck(False, f"P(0,0) = {p00} != 0")
    d00 = P.diff(t).at_origin()
    if not d00:
        return EtaleCheck(False, f"d{t}P(0,0) = 0")
    return EtaleCheck(True, f"P(0,0) = 0 and d{t}P(0,0) = {d00} != 0")


def _check_simple_root(P: MultiPoly, lam: Fraction, t: str):
    at0 = P.evaluate({v: 0 for v in P.vars if v != t})
    if at0.value_at({t: lam}):
        raise NotARoot(f"{lam} is not a root of P(0,{t})")
    slope = at0.diff(t).value_at({t: lam})
    if not slope:
        raise MultipleRoot(f"{lam} is a multiple root of P(0,{t}); lifting is refused")
    return slope


def lift_root(P: MultiPoly, lam=0, N: int = 10, t: str = None) -> LiftedRoot:
    """Series root h of P(x, h) = 0 with h(0) = lam, exact through degree N.

    Newton iteration h <- h - P(h)/P_t(h); a root correct through degree k
    becomes correct through 2k + 1.
    """
    t = t or P.vars[-1]
    lam = as_fraction(lam)
    _check_simple_root(P, lam, t)
    spec = AlgebraicSeriesSpec(P, t)
    xvars = P.vars.without(t)
    dP = P.diff(t)
    h = TruncSeries.constant(xvars, 0, lam)
    k = 0
    while k < N:
        m = min(2 * k + 1, N)
        h = TruncSeries(xvars, m, h.terms)
        residual = eval_poly_at_series(P, h, t)
        slope = eval_poly_at_series(dP, h, t)
        h = h - residual * invert_unit(slope)
        k = m
    return LiftedRoot(spec, lam, TruncSeries(xvars, N, h.terms))


def lift_root_linear(P: MultiPoly, lam=0, N: int = 10, t: str = None) -> TruncSeries:
    """Degree-by-degree lifting; independent of :func:`lift_root`.

    Writing h = h_<d + h_d, the degree-d part of P(x, h) equals
    [P(x, h_<d)]_d + P_t(0, lam) * h_d, so h_d is solved directly.
    """
    t = t or P.vars[-1]
    lam = as_fraction(lam)
    slope = _check_simple_root(P, lam, t)
    xvars = P.vars.without(t)
    terms = {(0,) * len(xvars): lam}
    for d in range(1, N + 1):
        h = TruncSeries(xvars, d, terms)
        res = eval_poly_at_series(P, h, t)
        for e, c in res.homogeneous(d).items():
            terms[e] = terms.get(e, 0) - c / slope
    return TruncSeries(xvars, N, terms)


def shift_annihilator(P: MultiPoly, c, t: str = None) -> MultiPoly:
    """P(x, t + c): annihilates h - c whenever P annihilates h."""
    t = t or P.vars[-1]
    return P.compose(P.vars, {t: MultiPoly.var(P.vars, t) + as_fraction(c)})


# factorization lifting


@dataclass(frozen=True)
class SeriesPolynomial:
    """Polynomial in ``var`` whose coefficients (ascending) are truncated series."""

    coeffs: Tuple[TruncSeries, ...]
    var: str

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def bound(self) -> int:
        return min(c.bound for c in self.coeffs)

    def __mul__(self, other: "SeriesPolynomial") -> "SeriesPolynomial":
        out = [None] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = a * b if out[i + j] is None else out[i + j] + a * b
        return SeriesPolynomial(tuple(out), self.var)

    def is_monic(self) -> bool:
        lead = self.coeffs[-1]
        return lead.terms == {(0,) * len(lead.vars): 1}

    def to_expr(self) -> str:
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k].to_expr(order_term=False)
            if c == "0":
                continue
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            if not mono:
                parts.append(f"({c})")
            elif c == "1":
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}")
        body = " + ".join(parts) or "0"
        return f"{body}  [coefficients exact through degree {self.bound}]"

    __str__ = to_expr


def _univariate(p: MultiPoly, t: str) -> List[Fraction]:
    if any(v != t for v in p.used_vars()):
        raise UsageError(f"seed {p} must be a polynomial in {t} alone")
    return [c.constant_term() for c in p.coeffs_in(t)]


def _poly_mul_1d(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _solve_matrix_inverse(M):
    """Inverse of a square Fraction matrix by Gauss-Jordan; None if singular."""
    n = len(M)
    A = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col]), None)
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [v * inv for v in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return [row[n:] for row in A]


def sylvester_solver(p0: Sequence[Fraction], q0: Sequence[Fraction]):
    """Return a solver for p0*B + q0*A = E with deg A < deg p0, deg B < deg q0.

    The linear map (A, B) -> q0*A + p0*B is given by the Sylvester matrix;
    it is invertible exactly when p0 and q0 are coprime.
    """
    d = len(p0) - 1
    e = len(q0) - 1
    n = d + e
    # columns: A_0..A_{d-1}, B_0..B_{e-1}; rows: coefficient of t^0..t^{n-1}
    M = [[Fraction(0)] * n for _ in range(n)]
    for i in range(d):
        for k, c in enumerate(q0):
            if i + k < n:
                M[i + k][i] += c
    for j in range(e):
        for k, c in enumerate(p0):
            if j + k < n:
                M[j + k][d + j] += c
    inv = _solve_matrix_inverse(M)
    if inv is None:
        return None

    def solve(rhs):
        sol = [sum((inv[r][c] * rhs[c] for c in range(n) if rhs[c]), Fraction(0)) for r in range(n)]
        return sol[:d], sol[d:]

    return solve


def lift_factorization(f: MultiPoly, p0: MultiPoly, q0: MultiPoly, N: int, t: str = None):
    """Lift f(0,t) = p0*q0 (monic, coprime) to f = p*q over truncated series.

    Degree by degree in x: the degree-k parts (p_k, q_k) of the lower
    coefficients solve p0*q_k + q0*p_k = [f - p_<k * q_<k]_k.
    Returns two :class:`SeriesPolynomial` values exact through N.
    """
    t = t or f.vars[-1]
    xvars = f.vars.without(t)
    fc = f.coeffs_in(t)
    n = len(fc) - 1
    if n < 1 or fc[-1] != MultiPoly.one(f.vars):
        raise UsageError("f must be monic of positive degree in " + t)
    a = _univariate(p0, t)
    b = _univariate(q0, t)
    if a[-1] != 1 or b[-1] != 1:
        raise UsageError("seeds must be monic")
    d, e = len(a) - 1, len(b) - 1
    f_at0 = [c.constant_term() for c in fc]
    if _poly_mul_1d(a, b) != f_at0:
        raise BadSeed("f(0,t) != p0*q0")
    if d == 0 or e == 0:
        # a trivial factor: the other one is f itself
        fs = tuple(TruncSeries.from_poly(c.embed(xvars), N) for c in fc)
        one = (TruncSeries.one(xvars, N),)
        return (SeriesPolynomial(one, t), SeriesPolynomial(fs, t)) if d == 0 else (SeriesPolynomial(fs, t), SeriesPolynomial(one, t))
    solve = sylvester_solver(a, b)
    if solve is None:
        raise NotCoprime("Res(p0, q0) = 0")
    fser = [TruncSeries.from_poly(c.embed(xvars), N) for c in fc]
    zero = (0,) * len(xvars)
    P = [dict({zero: a[i]} if a[i] else {}) for i in range(d)]
    Q = [dict({zero: b[j]} if b[j] else {}) for j in range(e)]

    def as_series(terms, bound):
        return TruncSeries(xvars, bound, terms)

    for k in range(1, N + 1):
        ps = [as_series(c, k) for c in P] + [TruncSeries.one(xvars, k)]
        qs = [as_series(c, k) for c in Q] + [TruncSeries.one(xvars, k)]
        prod = SeriesPolynomial(tuple(ps), t) * SeriesPolynomial(tuple(qs), t)
        err = [fser[i].truncate(k) - prod.coeffs[i] for i in range(n)]
        monos = set()
        for s in err:
            monos.update(s.homogeneous(k))
        for mono in monos:
            rhs = [s.terms.get(mono, Fraction(0)) for s in err]
            dA, dB = solve(rhs)
            for i, c in enumerate(dA):
                if c:
                    P[i][mono] = c
            for j, c in enumerate(dB):
                if c:
                    Q[j][mono] = c
    p = SeriesPolynomial(tuple(as_series(c, N) for c in P) + (TruncSeries.one(xvars, N),), t)
    q = SeriesPolynomial(tuple(as_series(c, N) for c in Q) + (TruncSeries.one(xvars, N),), t)
    return p, q
