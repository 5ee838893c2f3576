"""Expression-level pipelines shared by the CLI and the corpus runner."""

from __future__ import annotations

from typing import Sequence

from .diagonal import big_diagonal, hadamard, small_diagonal
from .errors import UsageError
from .denef_lipshitz import WRepresentation
from .parser import parse_poly, parse_ratfun
from .poly import MultiPoly, VarSet
from .series import TruncSeries


def diag_from_expr(kind: str, expr: str, vars, N: int, name: str = "t") -> TruncSeries:
    """Diagonal of the expansion of ``expr``, exact through degree N.

    The expansion is taken through n*N (small, n variables) or 2N (big).
    """
    vars = VarSet(vars) if not isinstance(vars, VarSet) else vars
    R = parse_ratfun(expr, vars)
    if kind == "small":
        return small_diagonal(R.expand(len(vars) * N), name)
    if kind == "big":
        if len(vars) < 2:
            raise UsageError("the big diagonal needs variables x..., t")
        return big_diagonal(R.expand(2 * N), vars[-1])
    raise UsageError(f"diagonal kind must be 'small' or 'big', not {kind!r}")


def hadamard_from_exprs(f: str, g: str, vars, N: int) -> TruncSeries:
    vars = VarSet(vars) if not isinstance(vars, VarSet) else vars
    return hadamard(parse_ratfun(f, vars).expand(N), parse_ratfun(g, vars).expand(N))


def coeff_list(texts: Sequence[str], xvars: VarSet) -> tuple:
    return tuple(parse_poly(s, xvars) for s in texts)


def split_list(text: str) -> list:
    return [s.strip() for s in text.split(",") if s.strip()]


def representation_from_texts(num: Sequence[str], den: Sequence[str], xvars: VarSet) -> WRepresentation:
    return WRepresentation(coeff_list(num, xvars), coeff_list(den or ["1"], xvars))


def series_from_coeffs(coeffs, var: str = "x") -> TruncSeries:
    """Univariate series from a coefficient list (exact through len-1)."""
    return TruncSeries(VarSet([var]), len(coeffs) - 1, {(k,): c for k, c in enumerate(coeffs)})
