"""Exact JSON encoding: numbers travel as decimal strings.

SeriesJson: {"vars": [...], "truncation": N, "terms": [{"exp", "num", "den"}]}
PolyJson:   {"vars": [...], "terms": [...]}  (same, without "truncation")

Terms are listed in ascending graded lexicographic order.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import UsageError
from .poly import MultiPoly, VarSet, grlex_key
from .series import TruncSeries


def fraction_to_json(c: Fraction) -> dict:
    c = Fraction(c)
    return {"num": str(c.numerator), "den": str(c.denominator)}


def fraction_from_json(obj) -> Fraction:
    num, den = int(obj["num"]), int(obj["den"])
    if den <= 0:
        raise UsageError("denominator must be positive")
    c = Fraction(num, den)
    if c.numerator != num or c.denominator != den:
        raise UsageError(f"{num}/{den} is not in lowest terms")
    return c


def _terms_to_json(terms) -> list:
    return [
        {"exp": list(e), **fraction_to_json(c)}
        for e, c in sorted(terms.items(), key=lambda kv: grlex_key(kv[0]))
    ]


def _terms_from_json(items, n: int) -> dict:
    terms = {}
    for item in items:
        e = tuple(int(k) for k in item["exp"])
        if len(e) != n:
            raise UsageError(f"exponent {list(e)} does not match {n} variables")
        if e in terms:
            raise UsageError(f"duplicate exponent {list(e)}")
        terms[e] = fraction_from_json(item)
    return terms


def series_to_json(s: TruncSeries) -> dict:
    return {"vars": list(s.vars), "truncation": s.bound, "terms": _terms_to_json(s.terms)}


def series_from_json(obj) -> TruncSeries:
    vars = VarSet(obj["vars"])
    return TruncSeries(vars, int(obj["truncation"]), _terms_from_json(obj["terms"], len(vars)))


def poly_to_json(p: MultiPoly) -> dict:
    return {"vars": list(p.vars), "terms": _terms_to_json(p.terms)}


def poly_from_json(obj) -> MultiPoly:
    vars = VarSet(obj["vars"])
    return MultiPoly(vars, _terms_from_json(obj["terms"], len(vars)))


def _is_poly_like(obj) -> bool:
    return isinstance(obj, dict) and "vars" in obj and "terms" in obj and isinstance(obj["terms"], list)


def ingest(obj):
    """Turn a command's JSON output back into engine values, recursively."""
    if _is_poly_like(obj):
        return series_from_json(obj) if "truncation" in obj else poly_from_json(obj)
    if isinstance(obj, dict):
        if set(obj) == {"num", "den"}:
            return fraction_from_json(obj)
        return {k: ingest(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [ingest(v) for v in obj]
    return obj


def emit(obj):
    """Inverse of :func:`ingest`: engine values to JSON-ready structures."""
    if isinstance(obj, TruncSeries):
        return series_to_json(obj)
    if isinstance(obj, MultiPoly):
        return poly_to_json(obj)
    if isinstance(obj, Fraction):
        return fraction_to_json(obj)
    if isinstance(obj, dict):
        return {k: emit(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [emit(v) for v in obj]
    return obj
