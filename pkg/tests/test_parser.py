from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from algdiag.errors import NotAPolynomial, ParseError, UnknownIdentifier, ZeroDenominator
from algdiag.parser import BinOp, Neg, Num, Paren, Pow, Var, parse_ast, parse_poly, parse_ratfun, render
from algdiag.poly import MultiPoly, VarSet

V = VarSet("a,b,c")


def _ast_strategies():
    base = st.deferred(lambda: st.one_of(
        st.builds(Num, st.builds(Fraction, st.integers(0, 9), st.integers(1, 3))),
        st.builds(Var, st.sampled_from(list(V))),
        st.builds(Paren, expr),
    ))
    factor = st.one_of(base, st.builds(Pow, base, st.integers(0, 3)))
    unary = st.one_of(factor, st.builds(Neg, factor))
    term = st.deferred(lambda: st.one_of(unary, st.builds(BinOp, st.just("*"), term, unary)))
    expr = st.deferred(lambda: st.one_of(term, st.builds(BinOp, st.sampled_from("+-"), expr, term)))
    return expr


EXPR = _ast_strategies()


def _value(node):
    """Reference evaluator straight off the AST."""
    if isinstance(node, Num):
        return MultiPoly.constant(V, node.value)
    if isinstance(node, Var):
        return MultiPoly.var(V, node.name)
    if isinstance(node, Paren):
        return _value(node.inner)
    if isinstance(node, Neg):
        return -_value(node.operand)
    if isinstance(node, Pow):
        return _value(node.base) ** node.exponent
    a, b = _value(node.left), _value(node.right)
    return {"+": a + b, "-": a - b, "*": a * b}[node.op]


@settings(max_examples=200)
@given(EXPR.filter(lambda n: len(render(n)) < 300))
def test_render_parse_round_trip(ast):
    text = render(ast)
    again = parse_ast(text)
    assert render(again) == text
    assert parse_poly(text, V) == _value(ast)


def test_precedence():
    assert parse_poly("a+b*c^2", V) == MultiPoly.var(V, "a") + MultiPoly.var(V, "b") * MultiPoly.var(V, "c") ** 2
    node = parse_ast("a+b*c^2")
    assert isinstance(node, BinOp) and node.op == "+"
    assert isinstance(node.right, BinOp) and node.right.op == "*"
    assert isinstance(node.right.right, Pow)
    assert parse_poly("-a^2", V) == -(MultiPoly.var(V, "a") ** 2)
    assert parse_poly("a-b-c", V) == parse_poly("(a-b)-c", V)


def test_examples():
    XT = VarSet("x,t")
    assert parse_poly("0", XT).is_zero()
    P = parse_poly("(1-4*x)*t^2 - 1", XT)
    assert P.coeff((1, 2)) == -4 and P.coeff((0, 0)) == -1
    R = parse_ratfun("1/(1-x-t)", XT)
    assert R.numerator == MultiPoly.one(XT) and R.denominator == parse_poly("1-x-t", XT)
    assert parse_ratfun("x", XT).denominator == MultiPoly.one(XT)
    assert parse_poly("3/4*x", XT).coeff((1, 0)) == Fraction(3, 4)


def test_constant_denominators_fold():
    R = parse_ratfun("x/2 + t/(3/2)", "x,t")
    assert R.numerator == parse_poly("1/2*x + 2/3*t", "x,t")


def test_nested_division_is_cleared():
    R = parse_ratfun("1/(1 - x/(1-t))", "x,t")
    assert R.expand(6) == parse_ratfun("(1-t)/(1-t-x)", "x,t").expand(6)


def test_errors():
    with pytest.raises(ParseError) as exc:
        parse_poly("2x", "x")
    assert exc.value.line == 1 and exc.value.column == 2
    with pytest.raises(ParseError):
        parse_poly("x^-1", "x")
    with pytest.raises(ParseError):
        parse_poly("(x", "x")
    with pytest.raises(UnknownIdentifier) as exc:
        parse_poly("x +\n  y", "x")
    assert (exc.value.line, exc.value.column) == (2, 3)
    with pytest.raises(NotAPolynomial):
        parse_poly("1/(1-x)", "x")
    with pytest.raises(ZeroDenominator):
        parse_ratfun("1/0", "x")
    with pytest.raises(ZeroDenominator):
        parse_ratfun("x/(x-x)", "x")
