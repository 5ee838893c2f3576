from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from algdiag import oracles
from algdiag.errors import UsageError
from algdiag.jsonio import emit, fraction_from_json, ingest, poly_from_json, series_from_json, series_to_json
from algdiag.poly import VarSet

from strategies import VARSETS, polys, series


@given(st.sampled_from(VARSETS).flatmap(lambda V: series(V, 7)))
def test_series_round_trip(s):
    obj = series_to_json(s)
    assert series_from_json(obj) == s
    keys = [(sum(t["exp"]), t["exp"]) for t in obj["terms"]]
    assert keys == sorted(keys)


@given(st.sampled_from(VARSETS).flatmap(lambda V: polys(V, 5)))
def test_poly_round_trip(p):
    assert ingest(emit(p)) == p
    assert poly_from_json(emit(p)) == p


def test_fraction_rules():
    assert fraction_from_json({"num": "-3", "den": "4"}) == Fraction(-3, 4)
    with pytest.raises(UsageError):
        fraction_from_json({"num": "2", "den": "4"})
    with pytest.raises(UsageError):
        fraction_from_json({"num": "1", "den": "-4"})
    big = Fraction(10**40 + 1, 3)
    assert ingest(emit(big)) == big


def test_oracles_independent_values():
    assert oracles.central_binomial(5) == [comb(2 * n, n) for n in range(6)]
    assert oracles.apery(6) == [1, 5, 73, 1445, 33001, 819005, 21460825]
    assert oracles.catalan_shifted(6) == [0, 1, 1, 2, 5, 14, 42]
    assert oracles.binomial_series(Fraction(1, 2), 3) == [1, Fraction(1, 2), Fraction(-1, 8), Fraction(1, 16)]
    assert oracles.binomial_combination([{"r": 2, "a": -1, "x_power": 1, "coef": 3}], 4) == [0, 3, -6, 3, 0]
    with pytest.raises(UsageError):
        oracles.evaluate({"oracle": "nope"}, 3)
