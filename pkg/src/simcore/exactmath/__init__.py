"""Exact rational arithmetic, sparse polynomials, truncated series and linear solving."""

from fractions import Fraction

from .linsolve import (
    InconsistentSystemError,
    LinearSystemError,
    UnderdeterminedSystemError,
    solve_linear_exact,
)
from .polynomial import BivariatePolynomial, QPolynomial, QWPolynomial
from .radical import RadicalNumber, square_free_decomposition
from .rational import as_fraction, format_rational, parse_rational, rational_arith
from .series import PowerSeries, series_reciprocal

BigRational = Fraction

__all__ = [
    "BigRational",
    "BivariatePolynomial",
    "Fraction",
    "InconsistentSystemError",
    "LinearSystemError",
    "PowerSeries",
    "QPolynomial",
    "QWPolynomial",
    "RadicalNumber",
    "UnderdeterminedSystemError",
    "as_fraction",
    "format_rational",
    "parse_rational",
    "rational_arith",
    "series_reciprocal",
    "solve_linear_exact",
    "square_free_decomposition",
]
