"""Rational generating functions: resolvent entries, series and continued fractions."""

from coinvariants.genfunc.closed_forms import (
    negative_continued_fraction,
    virasoro_boundary_cf,
    wmax_generating_function,
)
from coinvariants.genfunc.rational import RationalFunction, rf_equal, series, series_coeff
from coinvariants.genfunc.resolvent import indexing_function, resolvent_entry

__all__ = [
    "RationalFunction",
    "indexing_function",
    "negative_continued_fraction",
    "resolvent_entry",
    "rf_equal",
    "series",
    "series_coeff",
    "virasoro_boundary_cf",
    "wmax_generating_function",
]
