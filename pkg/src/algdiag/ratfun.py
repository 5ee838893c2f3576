"""Rational functions as numerator/denominator pairs and their series expansion."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotExpandable, VarSetMismatch, ZeroDenominator
from .poly import MultiPoly
from .series import TruncSeries, invert_unit


@dataclass(frozen=True)
class RationalFunction:
    numerator: MultiPoly
    denominator: MultiPoly

    def __post_init__(self):
        if self.numerator.vars != self.denominator.vars:
            raise VarSetMismatch("numerator and denominator over different variables")
        if self.denominator.is_zero():
            raise ZeroDenominator("denominator is the zero polynomial")

    @classmethod
    def from_poly(cls, p: MultiPoly) -> "RationalFunction":
        return cls(p, MultiPoly.one(p.vars))

    @property
    def vars(self):
        return self.numerator.vars

    def reduced(self) -> "RationalFunction":
        """Cancel the largest monomial dividing both numerator and denominator."""
        exps = list(self.numerator.terms) + list(self.denominator.terms)
        common = tuple(min(col) for col in zip(*exps)) if exps else ()
        if not any(common):
            return self
        num = self.numerator.terms
        den = self.denominator.terms
        shift = lambda terms: {tuple(a - b for a, b in zip(e, common)): c for e, c in terms.items()}
        return RationalFunction(MultiPoly(self.vars, shift(num)), MultiPoly(self.vars, shift(den)))

    def is_series_expandable(self) -> bool:
        return bool(self.reduced().denominator.constant_term())

    def expand(self, bound: int) -> TruncSeries:
        """Power series expansion exact through total degree ``bound``."""
        r = self.reduced()
        if not r.denominator.constant_term():
            raise NotExpandable(f"denominator {r.denominator} vanishes at the origin")
        inv = invert_unit(TruncSeries.from_poly(r.denominator, bound))
        if r.numerator == MultiPoly.one(self.vars):
            return inv
        return TruncSeries.from_poly(r.numerator, bound) * inv

    def to_expr(self) -> str:
        if self.denominator == MultiPoly.one(self.vars):
            return self.numerator.to_expr()
        return f"({self.numerator.to_expr()})/({self.denominator.to_expr()})"

    def __str__(self):
        return self.to_expr()
