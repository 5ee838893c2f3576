"""Algebraic series as big diagonals of rational functions in one extra variable.

For an etale-algebraic h with annihilator P(x, t),

    F = t * P_t(xt, t) / P(xt, t)

is a power series, and the diagonal of (xt)^i t^j F is x^i h^j.  A
rational expression f = W(x, h) in h then gives
R(x, t) = W(xt, t) * t * P_t(xt, t) / P(xt, t) with diagonal f.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

from .diagonal import big_diagonal
from .errors import DenominatorNotUnit, NotDivisible, NotEtale, UsageError
from .hensel import AlgebraicSeriesSpec, is_etale_algebraic, lift_root
from .poly import MultiPoly, VarSet
from .ratfun import RationalFunction
from .series import TruncSeries, invert_unit, substitute_xt


@dataclass(frozen=True)
class Verification:
    order: int
    expected: TruncSeries
    computed: TruncSeries
    passed: bool
    first_mismatch: Optional[int] = None


@dataclass(frozen=True)
class WRepresentation:
    """f = (a_0 + a_1 h + ... + a_r h^r) / (b_0 + b_1 h + ... + b_s h^s)."""

    numerator: Tuple[MultiPoly, ...]
    denominator: Tuple[MultiPoly, ...]

    def __post_init__(self):
        if not self.numerator or not self.denominator:
            raise UsageError("representation needs at least one numerator and denominator coefficient")
        vs = {c.vars for c in self.numerator + self.denominator}
        if len(vs) != 1:
            raise UsageError("representation coefficients must share one VarSet")
        if not self.denominator[0].constant_term():
            raise DenominatorNotUnit("b_0(0) = 0")

    @classmethod
    def identity(cls, xvars) -> "WRepresentation":
        if not isinstance(xvars, VarSet):
            xvars = VarSet(xvars)
        return cls((MultiPoly.zero(xvars), MultiPoly.one(xvars)), (MultiPoly.one(xvars),))

    @property
    def vars(self) -> VarSet:
        return self.numerator[0].vars

    def is_identity(self) -> bool:
        return self == WRepresentation.identity(self.vars)

    def polys(self, full: VarSet, t: str) -> Tuple[MultiPoly, MultiPoly]:
        """(sum a_i t^i, sum b_j t^j) over the VarSet ``full`` = x plus t."""
        lift = lambda cs: MultiPoly.from_coeffs(full, t, [c.embed(full) for c in cs])
        return lift(self.numerator), lift(self.denominator)

    def evaluate(self, h: TruncSeries) -> TruncSeries:
        """W(x, h) as a truncated series; exact through h's window."""
        if h.vars != self.vars:
            raise UsageError(f"series over ({h.vars}) but representation over ({self.vars})")

        def horner(cs):
            out = TruncSeries.zero(h.vars, h.bound)
            for c in reversed(cs):
                out = out * h + TruncSeries.from_poly(c, h.bound)
            return out

        return horner(self.numerator) * invert_unit(horner(self.denominator))


@dataclass(frozen=True)
class DLCertificate:
    spec: AlgebraicSeriesSpec
    representation: WRepresentation
    R: RationalFunction
    verification: Verification


def _require_etale(spec: AlgebraicSeriesSpec):
    check = is_etale_algebraic(spec.annihilator, spec.series_var)
    if not check.ok:
        raise NotEtale(f"annihilator {spec.annihilator} is not etale: {check.reason}")


def _as_spec(spec) -> AlgebraicSeriesSpec:
    if isinstance(spec, MultiPoly):
        return AlgebraicSeriesSpec.of(spec)
    return spec


def build_F(spec: Union[AlgebraicSeriesSpec, MultiPoly], N: int) -> TruncSeries:
    """Expansion of t * P_t(xt, t) / P(xt, t) through total degree N."""
    spec = _as_spec(spec)
    _require_etale(spec)
    P, t = spec.annihilator, spec.series_var
    Pxt = substitute_xt(P, t)
    try:
        v = Pxt.divide_by_var(t, 1)
    except NotDivisible:
        raise AssertionError("P(xt, t) not divisible by t although P(0, 0) = 0") from None
    dPxt = substitute_xt(P.diff(t), t)
    return TruncSeries.from_poly(dPxt, N) * invert_unit(TruncSeries.from_poly(v, N))


def _multi_index(i, n: int) -> Tuple[int, ...]:
    if isinstance(i, int):
        if n != 1:
            raise UsageError("integer index only valid for one base variable")
        return (i,)
    i = tuple(i)
    if len(i) != n:
        raise UsageError(f"multi-index {i} needs length {n}")
    return i


def monomial_diagonal_certificate(spec, i, j: int, N: int) -> Verification:
    """Check D((xt)^i t^j F) = x^i h^j through degree N.

    (xt)^i t^j F equals (xt)^i t^(j+1) P_t(xt,t)/P(xt,t), the rational
    function whose diagonal the construction asserts.
    """
    spec = _as_spec(spec)
    _require_etale(spec)
    P, t = spec.annihilator, spec.series_var
    i = _multi_index(i, len(P.vars) - 1)
    F = build_F(spec, 2 * N)
    ti = P.vars.index(t)
    shift = list(i[:ti]) + [sum(i) + j] + list(i[ti:])
    mono = TruncSeries(P.vars, 2 * N, {tuple(shift): 1})
    computed = big_diagonal(F * mono, t)
    h = lift_root(P, 0, N, t).series
    xmono = TruncSeries(h.vars, N, {i: 1})
    expected = xmono * h ** j
    bad = computed.first_mismatch(expected, N)
    return Verification(N, expected, computed, bad is None, bad)


def dl_verify(R: RationalFunction, expected: TruncSeries, N: int, t: str = None) -> Verification:
    """Expand R through 2N, take the big diagonal (exact through N), compare."""
    t = t or R.vars[-1]
    computed = big_diagonal(R.expand(2 * N), t)
    if computed.vars != expected.vars:
        raise UsageError(f"expected series over ({expected.vars}), diagonal over ({computed.vars})")
    if expected.bound < N:
        raise UsageError(f"expected series only exact through {expected.bound} < {N}")
    bad = computed.first_mismatch(expected, N)
    return Verification(N, expected.truncate(N), computed, bad is None, bad)


def dl_rational_function(spec, W: WRepresentation = None) -> RationalFunction:
    """R(x, t) = W(xt, t) * t * P_t(xt, t) / P(xt, t), denominators cleared."""
    spec = _as_spec(spec)
    _require_etale(spec)
    P, t = spec.annihilator, spec.series_var
    W = W or WRepresentation.identity(spec.base_vars)
    if W.vars != spec.base_vars:
        raise UsageError(f"representation over ({W.vars}) but series in ({spec.base_vars})")
    Wn, Wd = W.polys(P.vars, t)
    T = MultiPoly.var(P.vars, t)
    num = substitute_xt(Wn, t) * T * substitute_xt(P.diff(t), t)
    den = substitute_xt(Wd, t) * substitute_xt(P, t)
    return RationalFunction(num, den)


def dl_rational(spec, W: WRepresentation = None, N: int = 10) -> DLCertificate:
    """Build R and check D(R) = W(x, h) through N against an independent h.

    h comes from Newton lifting and W(x, h) from series arithmetic; the
    diagonal side only ever sees R.
    """
    spec = _as_spec(spec)
    W = W or WRepresentation.identity(spec.base_vars)
    R = dl_rational_function(spec, W)
    h = lift_root(spec.annihilator, 0, N, spec.series_var).series
    f = W.evaluate(h)
    return DLCertificate(spec, W, R, dl_verify(R, f, N, spec.series_var))
