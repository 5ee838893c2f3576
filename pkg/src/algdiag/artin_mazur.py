"""Two-polynomial codes P(x, y1, y2) pinning down an algebraic series f.

P(x, f, h) = 0 for an etale-algebraic h, and the Jacobian of P in
(y1, y2) is invertible at the origin.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .denef_lipshitz import WRepresentation
from .errors import DenominatorNotUnit, NotEtale, UsageError, UseRepresentationBranch
from .hensel import is_etale_algebraic
from .poly import MultiPoly, VarSet
from .series import TruncSeries, substitute_series


@dataclass(frozen=True)
class AMCode:
    pair: Tuple[MultiPoly, MultiPoly]
    jacobian_at_origin: Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]
    branch: str
    y1: str = "y1"
    y2: str = "y2"

    def __post_init__(self):
        if not self.determinant():
            raise UsageError("code Jacobian is singular at the origin")
        if self.pair[1].degree_in(self.y1) > 0:
            raise UsageError(f"second component must not involve {self.y1}")

    @property
    def vars(self) -> VarSet:
        return self.pair[0].vars

    @property
    def base_vars(self) -> VarSet:
        return self.vars.without(self.y1).without(self.y2)

    def determinant(self) -> Fraction:
        (a, b), (c, d) = self.jacobian_at_origin
        return a * d - b * c


@dataclass(frozen=True)
class AMVerification:
    order: int
    residuals: Tuple[TruncSeries, TruncSeries]
    determinant: Fraction
    passed: bool
    first_failure: Optional[int] = None


def _jacobian(P1: MultiPoly, P2: MultiPoly, y1: str, y2: str):
    return tuple(
        tuple(p.diff(y).at_origin() for y in (y1, y2)) for p in (P1, P2)
    )


def _code_vars(xvars: VarSet, y1: str, y2: str) -> VarSet:
    return xvars.extend(y1, y2)


def am_code_simple(Q: MultiPoly, y1: str = None, y2: str = "y2") -> AMCode:
    """(Q(x, y1), y2) when Q(0,0) = 0 and Q_y1(0,0) != 0."""
    y1 = y1 or Q.vars[-1]
    check = is_etale_algebraic(Q, y1)
    if not check.ok:
        raise UseRepresentationBranch(f"{check.reason}; a representation f = W(x, h) is needed")
    full = _code_vars(Q.vars.without(y1), y1, y2)
    P1 = Q.embed(full)
    P2 = MultiPoly.var(full, y2)
    return AMCode((P1, P2), _jacobian(P1, P2, y1, y2), "simple", y1, y2)


def am_code_from_representation(rep: WRepresentation, S: MultiPoly, y1: str = "y1", y2: str = None) -> AMCode:
    """(y1*T2 - T1, S) with T1 = sum a_i y2^i, T2 = sum b_j y2^j."""
    y2 = y2 or S.vars[-1]
    check = is_etale_algebraic(S, y2)
    if not check.ok:
        raise NotEtale(f"S is not etale: {check.reason}")
    if not rep.denominator[0].constant_term():
        raise DenominatorNotUnit("b_0(0) = 0")
    xvars = S.vars.without(y2)
    if rep.vars != xvars:
        raise UsageError(f"representation over ({rep.vars}) but S over ({xvars}, {y2})")
    full = _code_vars(xvars, y1, y2)
    T1, T2 = rep.polys(full, y2)
    P1 = MultiPoly.var(full, y1) * T2 - T1
    P2 = S.embed(full)
    return AMCode((P1, P2), _jacobian(P1, P2, y1, y2), "representation", y1, y2)


def am_code(Q: MultiPoly, rep: WRepresentation = None, S: MultiPoly = None, y1: str = None) -> AMCode:
    """Dispatch: simple branch when possible, otherwise the representation branch."""
    y1 = y1 or Q.vars[-1]
    if Q.at_origin():
        raise UsageError("f(0) must be 0, i.e. Q(0,0) = 0")
    try:
        return am_code_simple(Q, y1)
    except UseRepresentationBranch:
        if rep is None or S is None:
            raise
        return am_code_from_representation(rep, S, y1=y1 if y1 not in S.vars else "y1")


def am_verify(code: AMCode, f: TruncSeries, h: TruncSeries, N: int) -> AMVerification:
    """Both components vanish at (f, h) through degree N and det J(0) != 0."""
    if f.bound < N or h.bound < N:
        raise UsageError(f"series windows ({f.bound}, {h.bound}) shorter than {N}")
    if f.vars != code.base_vars or h.vars != code.base_vars:
        raise UsageError(f"series must be over ({code.base_vars})")
    f, h = f.truncate(N), h.truncate(N)
    images = {code.y1: f, code.y2: h}
    residuals = tuple(substitute_series(p, images, f.vars) for p in code.pair)
    fails = [min(sum(e) for e in r.terms) for r in residuals if r.terms]
    det = code.determinant()
    first = min(fails) if fails else None
    return AMVerification(N, residuals, det, first is None and det != 0, first)
