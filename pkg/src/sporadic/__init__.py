"""Exact verification toolkit for the weight-3 noncongruence cusp form attached
to the sporadic Apery-like sequence with recurrence triple (17, 6, 72)."""

from .arith import cornacchia, kronecker_symbol, tonelli_shanks
from .qseries import QSeries, g_series, j_series, p_series, s_series, t_series
from .sequences import f_closed, f_values, search_integral, zagier_u

__version__ = "0.1.0"

__all__ = [
    "QSeries",
    "cornacchia",
    "f_closed",
    "f_values",
    "g_series",
    "j_series",
    "kronecker_symbol",
    "p_series",
    "s_series",
    "search_integral",
    "t_series",
    "tonelli_shanks",
    "zagier_u",
]
