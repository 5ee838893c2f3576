"""Closed-form coefficient evaluators, independent of the series engine.

Everything here is plain integer/Fraction arithmetic on coefficient lists,
used to check the engine's output.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Iterable, List, Mapping

from .errors import UsageError


def central_binomial(N: int) -> List[Fraction]:
    return [Fraction(factorial(2 * n), factorial(n) ** 2) for n in range(N + 1)]


def apery(N: int) -> List[Fraction]:
    return [Fraction(sum(comb(n, k) ** 2 * comb(n + k, k) ** 2 for k in range(n + 1))) for n in range(N + 1)]


def catalan_shifted(N: int) -> List[Fraction]:
    """x + x^2 + 2x^3 + 5x^4 + ...: the root of t^2 - t + x vanishing at 0.

    Uses c_0 = 1, c_{n+1} = sum_i c_i c_{n-i}; coefficient of x^n is c_{n-1}.
    """
    c = [1]
    while len(c) < N:
        m = len(c) - 1
        c.append(sum(c[i] * c[m - i] for i in range(m + 1)))
    return [Fraction(0)] + [Fraction(v) for v in c[:N]]


def gen_binomial(r: Fraction, k: int) -> Fraction:
    """binom(r, k) for rational r."""
    out = Fraction(1)
    for i in range(k):
        out = out * (r - i) / (i + 1)
    return out


def binomial_series(r, N: int, a=1) -> List[Fraction]:
    """Coefficients of (1 + a x)^r through x^N."""
    r, a = Fraction(r), Fraction(a)
    return [gen_binomial(r, k) * a ** k for k in range(N + 1)]


def binomial_combination(terms: Iterable[Mapping], N: int) -> List[Fraction]:
    """sum coef * x^x_power * (1 + a x)^r through x^N."""
    out = [Fraction(0)] * (N + 1)
    for term in terms:
        coef = Fraction(term.get("coef", 1))
        shift = int(term.get("x_power", 0))
        series = binomial_series(term.get("r", 0), N, term.get("a", 1))
        for k in range(N + 1 - shift):
            out[k + shift] += coef * series[k]
    return out


ORACLES = {
    "central-binomial": lambda d, N: central_binomial(N),
    "apery": lambda d, N: apery(N),
    "binomial-sum-apery": lambda d, N: apery(N),
    "catalan": lambda d, N: catalan_shifted(N),
    "binomial": lambda d, N: binomial_combination(d["terms"], N),
}


def evaluate(directive: Mapping, N: int) -> List[Fraction]:
    name = directive.get("oracle")
    if name not in ORACLES:
        raise UsageError(f"unknown oracle {name!r}; known: {sorted(ORACLES)}")
    return ORACLES[name](directive, N)
