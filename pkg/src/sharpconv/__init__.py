"""Exact decision and numerical probing of sharp weighted convolution inequalities."""

__version__ = "0.1.0"

from .errors import BudgetError, DegenerateInput, DomainError, GridError, ParseError, Unsupported
from .index import (
    INF,
    ExtendedExponent,
    FracTuple,
    YoungTuple,
    dilation_exponent,
    dual,
    dual_frac_tuple,
    dual_young_tuple,
    exponent,
    gauge,
    gauge_plus,
    parse_rational,
)
from .kernels import BACKEND

__all__ = [
    "BACKEND", "INF", "BudgetError", "DegenerateInput", "DomainError", "ExtendedExponent", "FracTuple",
    "GridError", "ParseError", "Unsupported", "YoungTuple", "dilation_exponent", "dual", "dual_frac_tuple",
    "dual_young_tuple", "exponent", "gauge", "gauge_plus", "parse_rational", "__version__",
]
