from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from algdiag.diagonal import all_ones, big_diagonal, geom, hadamard, small_diagonal
from algdiag.errors import NotExpandable, VarSetMismatch
from algdiag.parser import parse_ratfun
from algdiag.poly import MultiPoly, VarSet
from algdiag.series import TruncSeries, substitute_xt

from strategies import polys, series, small_fractions

XT = VarSet("x,t")
X1X2 = VarSet("x1,x2")


def expand(text, vars, N):
    return parse_ratfun(text, vars).expand(N)


def test_central_binomial_big_diagonal():
    d = big_diagonal(expand("1/(1-x-t)", XT, 10))
    assert d.bound == 5
    assert [d.coeff((n,)) for n in range(6)] == [comb(2 * n, n) for n in range(6)]


def test_small_diagonal_of_one_and_geometric():
    assert small_diagonal(expand("1", VarSet("x,y"), 18)) == TruncSeries.one(VarSet("t"), 9)
    d = small_diagonal(expand("1/(1-x-y)", VarSet("x,y"), 12))
    assert [d.coeff((n,)) for n in range(7)] == [comb(2 * n, n) for n in range(7)]


def test_windows():
    s = TruncSeries.one(VarSet("a,b,c"), 10)
    assert small_diagonal(s).bound == 3
    assert big_diagonal(TruncSeries.one(XT, 9)).bound == 4


def test_expansion_needs_a_unit_denominator():
    with pytest.raises(NotExpandable):
        expand("1/(x+t)", XT, 4)
    # a common monomial factor is cancelled first
    assert expand("x/(x - x*t)", XT, 3) == expand("1/(1-t)", XT, 3)


def test_hadamard_example():
    h = hadamard(expand("1/(1-x-t)", XT, 6), expand("1/(1-x*t)", XT, 6))
    assert h == TruncSeries(XT, 6, {(n, n): comb(2 * n, n) for n in range(4)})


def test_hadamard_mismatch():
    with pytest.raises(VarSetMismatch):
        hadamard(TruncSeries.one(XT, 2), TruncSeries.one(X1X2, 2))


def test_geom_and_all_ones():
    assert geom(XT, (1, 1), 6) == expand("1/(1-x*t)", XT, 6)
    ones = all_ones(XT, 4)
    assert ones == expand("1/((1-x)*(1-t))", XT, 4)


pairs = st.tuples(series(XT, 12), series(XT, 12), small_fractions)


@given(pairs)
def test_big_diagonal_is_linear(data):
    f, g, c = data
    assert big_diagonal(f + g * c) == big_diagonal(f) + big_diagonal(g) * c


@given(st.tuples(series(VarSet("x,y,z"), 12), series(VarSet("x,y,z"), 12), small_fractions))
def test_small_diagonal_is_linear(data):
    f, g, c = data
    assert small_diagonal(f + g * c) == small_diagonal(f) + small_diagonal(g) * c


@settings(max_examples=100)
@given(polys(X1X2, 8, 10))
def test_small_diagonal_is_big_diagonal_with_renamed_last_variable(g):
    f1 = small_diagonal(TruncSeries.from_poly(g, 16))
    f2 = big_diagonal(TruncSeries.from_poly(g, 16).rename(VarSet("x1,t")))
    # same coefficients g_{jj}; the small diagonal names its variable t
    assert f1.rename(VarSet("x1")) == f2


@settings(max_examples=50)
@given(series(XT, 12, max_terms=12))
def test_hadamard_with_geometric_series_is_the_diagonal(f):
    lhs = hadamard(f, geom(XT, (1, 1), 12))
    D = big_diagonal(f)
    rhs = TruncSeries.from_poly(substitute_xt(D.to_poly().embed(XT)), 12)
    assert lhs == rhs
