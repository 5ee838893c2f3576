"""Worked examples for each operation, with independently derived values."""

from fractions import Fraction
from math import comb

import pytest

from algdiag import oracles
from algdiag.artin_mazur import am_code_from_representation, am_code_simple, am_verify
from algdiag.denef_lipshitz import WRepresentation, build_F, dl_rational, dl_verify, monomial_diagonal_certificate
from algdiag.diagonal import all_ones, big_diagonal, hadamard, small_diagonal
from algdiag.errors import NotDivisible, UseRepresentationBranch
from algdiag.hensel import AlgebraicSeriesSpec, is_etale_algebraic, lift_factorization, lift_root, shift_annihilator
from algdiag.parser import parse_poly, parse_ratfun
from algdiag.poly import MultiPoly, VarSet, annihilator_prod, annihilator_sum, resultant
from algdiag.ratfun import RationalFunction
from algdiag.series import (
    SeriesOrder, TruncSeries, eval_poly_at_series, exact_divide_by_var, invert_unit, ord, regular_order, substitute_xt,
)

X, XT, XY = VarSet("x"), VarSet("x,t"), VarSet("x,y")


def P(text, vars=XT):
    return parse_poly(text, vars)


def S(text, bound, vars=XT):
    return parse_ratfun(text, vars).expand(bound)


def uni(coeffs, var="x"):
    return TruncSeries(VarSet([var]), len(coeffs) - 1, dict(((k,), Fraction(c)) for k, c in enumerate(coeffs)))


SQRT_M1 = lambda N: uni(oracles.binomial_combination([{"r": Fraction(1, 2)}, {"coef": -1}], N))


# polynomials


def test_polynomial_basics():
    assert P("(x+1)*(x-1)") == P("x^2-1")
    p = P("t^2+2*t-x")
    assert p + MultiPoly.zero(XT) == p and p * 1 == p
    assert p.diff("t") == P("2*t+2")
    assert P("x^3").diff("t").is_zero()
    assert P("(1-4*x)*t^2-1").diff("t") == P("2*(1-4*x)*t")


def test_resultant_examples():
    assert resultant(P("t^2-x"), P("t-1"), "t") == P("1-x")
    V = VarSet("a,b,t")
    assert resultant(P("t-a", V), P("t-b", V), "t") == P("a-b", V)
    assert resultant(P("t-1"), P("t+1"), "t") == MultiPoly.constant(XT, 2)


def test_linear_annihilators():
    V = VarSet("a,b,t")
    A = annihilator_sum(P("t-a", V), P("t-b", V))
    assert not A.exact_div(P("t-(a+b)", V)).is_zero()
    B = annihilator_prod(P("t^2-(1+x)"), P("t-2"))
    target = uni([2 * c for c in oracles.binomial_series(Fraction(1, 2), 12)])
    assert eval_poly_at_series(B, target).is_zero()


# series


def test_series_examples():
    assert S("(1+x)*(1-x)", 10, X) == S("1-x^2", 10, X)
    assert TruncSeries.from_poly(P("x^3", X), 2).is_zero()
    geo = TruncSeries.from_poly(P("1+x+x^2+x^3+x^4", X), 4)
    assert geo * TruncSeries.from_poly(P("1-x", X), 4) == TruncSeries.one(X, 4)
    inv = invert_unit(S("1-x-t", 4))
    assert inv == TruncSeries(XT, 4, {(i, j): comb(i + j, i) for i in range(5) for j in range(5 - i)})
    assert invert_unit(TruncSeries.one(XT, 3)) == TruncSeries.one(XT, 3)
    assert invert_unit(S("2+x", 2, X)) == TruncSeries(X, 2, {(0,): Fraction(1, 2), (1,): Fraction(-1, 4), (2,): Fraction(1, 8)})


def test_substitution_and_division_examples():
    assert substitute_xt(P("x^2*t")) == P("x^2*t^3")
    sub = substitute_xt(P("t^2+2*t-x"))
    assert sub == P("t^2+2*t-x*t")
    assert sub.divide_by_var("t") == P("t+2-x")
    assert substitute_xt(MultiPoly.constant(XT, 7)) == MultiPoly.constant(XT, 7)
    with pytest.raises(NotDivisible):
        exact_divide_by_var(S("x", 4), "t", 1)
    assert exact_divide_by_var(S("t^3", 6), "t", 2) == S("t", 4)


def test_order_examples():
    assert ord(S("x^2+x^3", 6, X)) == SeriesOrder(2)
    assert str(ord(TruncSeries.zero(X, 7))) == "at-least(8)"
    assert ord(S("t^2+2*t-x", 5)) == SeriesOrder(1)
    assert regular_order(S("y^2-x", 6, XY), "y") == SeriesOrder(2)
    assert regular_order(S("x", 6, XY), "y") == SeriesOrder(7, exact=False)
    assert regular_order(S("(1+x)*y", 6, XY), "y") == SeriesOrder(1)


def test_polynomial_at_series_examples():
    h = uni([0, Fraction(1, 2), Fraction(-1, 8), Fraction(1, 16)])
    assert eval_poly_at_series(P("t^2+2*t-x"), h).is_zero()
    assert eval_poly_at_series(P("t"), h) == h
    node = uni(oracles.binomial_combination([{"r": Fraction(1, 2), "a": -1, "x_power": 1}], 12))
    assert eval_poly_at_series(P("t^2+x^3-x^2"), node).is_zero()


# diagonals


def test_diagonal_examples():
    d = small_diagonal(S("1/(1-x1-x2)", 8, VarSet("x1,x2")))
    assert d == uni([1, 2, 6, 20, 70], "t")
    assert small_diagonal(S("x1*x2", 4, VarSet("x1,x2"))) == uni([0, 1, 0], "t")
    apery = small_diagonal(S("1/((1-x1)*((1-x2)*(1-x3)*(1-x4)*(1-x5) - x1*x2*x3))", 15, VarSet("x1,x2,x3,x4,x5")))
    assert apery == uni([1, 5, 73, 1445], "t")
    assert big_diagonal(S("1/(1-x-t)", 8)) == uni([1, 2, 6, 20, 70])
    assert big_diagonal(S("x^2*t", 6)).is_zero()


def test_hadamard_examples():
    f = S("1/(1-x-t)", 8)
    assert hadamard(f, all_ones(XT, 8)) == f
    assert hadamard(S("x+t", 3), S("x-t", 3)) == S("x-t", 3)


# lifting


def test_lifting_examples():
    assert not is_etale_algebraic(P("t^2+x^3-x^2"))
    assert is_etale_algebraic(P("t^2+2*t+x"))
    assert is_etale_algebraic(P("t-x"))
    assert lift_root(P("t-(x+3*x^2-x^5)"), 0, 8).series == S("x+3*x^2-x^5", 8, X)
    assert lift_root(P("t^2-t+x"), 0, 5).series == uni([0, 1, 1, 2, 5, 14])


def test_factor_lifting_examples():
    p, q = lift_factorization(P("(t-x)*(t-1-x)"), P("t"), P("t-1"), 8)
    assert p.coeffs[0] == S("-x", 8, X) and q.coeffs[0] == S("-1-x", 8, X)
    p, q = lift_factorization(P("t^3-(1+x)*t"), P("t"), P("t^2-1"), 8)
    assert p.coeffs[0].is_zero() and q.coeffs[0] == S("-1-x", 8, X) and q.coeffs[1].is_zero()


def test_shift_examples():
    assert shift_annihilator(P("t^2-(1-x)"), 1) == P("t^2+2*t+x")
    assert shift_annihilator(P("t^2-(1-x)"), 0) == P("t^2-(1-x)")
    assert shift_annihilator(P("t-x"), 5) == P("t+5-x")


# Denef-Lipshitz


def test_build_F_examples():
    assert build_F(P("t^2+2*t-x"), 6).constant_term() == 1
    assert build_F(P("t-x"), 6) == S("1/(1-x)", 6)
    assert build_F(P("t^2-t+x"), 6).constant_term() == 1


def test_certificate_examples():
    sqrt_spec = AlgebraicSeriesSpec.of(P("t^2+2*t-x"))
    v = monomial_diagonal_certificate(sqrt_spec, 0, 1, 3)
    assert v.passed and v.computed.truncate(3) == uni([0, Fraction(1, 2), Fraction(-1, 8), Fraction(1, 16)])
    assert monomial_diagonal_certificate(sqrt_spec, 0, 0, 5).computed == TruncSeries.one(X, 5)
    cat = AlgebraicSeriesSpec.of(P("t^2-t+x"))
    v = monomial_diagonal_certificate(cat, (2,), 3, 10)
    h = uni(oracles.catalan_shifted(10))
    assert v.passed and v.computed.truncate(10) == S("x^2", 10, X) * h ** 3


def test_dl_examples():
    cat = AlgebraicSeriesSpec.of(P("t^2-t+x"))
    identity = WRepresentation((MultiPoly.zero(X), MultiPoly.one(X)), (MultiPoly.one(X),))
    assert dl_rational(cat, identity, 4).verification.computed.truncate(4) == uni([0, 1, 1, 2, 5])
    square = WRepresentation((MultiPoly.zero(X), MultiPoly.zero(X), MultiPoly.one(X)), (MultiPoly.one(X),))
    cert = dl_rational(AlgebraicSeriesSpec.of(P("t^2+2*t-x")), square, 10)
    assert cert.verification.passed and cert.verification.computed.truncate(10) == SQRT_M1(10) ** 2


def test_dl_verify_examples():
    R = parse_ratfun("1/(1-x-t)", XT)
    assert dl_verify(R, uni(oracles.central_binomial(8)), 8).passed
    assert dl_verify(RationalFunction.from_poly(MultiPoly.one(XT)), TruncSeries.one(X, 6), 6).passed
    bad = dl_verify(R, TruncSeries.from_poly(P("1+2*x+5*x^2", X), 2), 2)
    assert not bad.passed and bad.first_mismatch == 2


# codes


def test_code_examples():
    XY1 = VarSet("x,y1")
    code = am_code_simple(parse_poly("y1^2+2*y1-x", XY1))
    assert code.pair[1] == MultiPoly.var(code.vars, "y2")
    assert code.jacobian_at_origin == ((2, 0), (0, 1))
    assert am_code_simple(parse_poly("y1-x", XY1)).jacobian_at_origin == ((1, 0), (0, 1))
    with pytest.raises(UseRepresentationBranch):
        am_code_simple(parse_poly("y1^2+x^3-x^2", XY1))

    XY2 = VarSet("x,y2")
    S_sqrt = parse_poly("y2^2+2*y2-x", XY2)
    node = am_code_from_representation(
        WRepresentation((P("x", X), P("x", X)), (MultiPoly.one(X),)), S_sqrt)
    assert node.pair[0] == parse_poly("y1 - x*y2 - x", node.vars)
    assert node.jacobian_at_origin == ((1, 0), (0, 2)) and node.determinant() == 2
    ident = am_code_from_representation(WRepresentation((MultiPoly.zero(X), MultiPoly.one(X)), (MultiPoly.one(X),)), S_sqrt)
    assert ident.jacobian_at_origin == ((1, -1), (0, 2))
    sq = am_code_from_representation(
        WRepresentation((MultiPoly.zero(X), MultiPoly.zero(X), MultiPoly.one(X)), (MultiPoly.one(X),)),
        parse_poly("y2^2-y2+x", XY2))
    assert sq.pair[0] == parse_poly("y1 - y2^2", sq.vars) and sq.determinant() == -1

    N = 15
    f = uni(oracles.binomial_combination([{"r": Fraction(1, 2), "x_power": 1}], N))
    assert am_verify(node, f, SQRT_M1(N), N).passed
    own = lift_root(parse_poly("y1^2+2*y1-x", XY1), 0, N).series
    assert am_verify(code, own, TruncSeries.zero(X, N), N).passed
