"""Exact engine for algebraic power series and diagonals of rational functions."""

from .poly import MultiPoly, VarSet
from .series import SeriesOrder, TruncSeries

__all__ = ["MultiPoly", "VarSet", "SeriesOrder", "TruncSeries"]
__version__ = "0.1.0"
