"""Moments of ``Z = sum_k (z_k^2 + z'_k^2) / (4 pi^2 k^2)`` for independent standard normals.

The moment generating function is ``sqrt(t/2) / sin(sqrt(t/2))``.  Its
Maclaurin series is the reciprocal of ``sin(x)/x = sum (-1)^n x^(2n)/(2n+1)!``
with ``x^2 = t/2``, so every coefficient is rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .exactmath import PowerSeries, RadicalNumber
from .moments import central_moments, limiting_standardized_moment, standardized_moments

MAX_COMPARED_ORDER = 9


def chi_square_series_from_moments(order: int) -> PowerSeries:
    """MGF of ``z^2`` built from its moments ``(2r)! / (2^r r!)``."""
    return PowerSeries.from_function(
        lambda r: Fraction(factorial(2 * r), 2**r * factorial(r) * factorial(r)), order
    )


def chi_square_series_from_binomial(order: int) -> PowerSeries:
    """``(1 - 2t)^(-1/2) = sum C(2r, r) (t/2)^r``."""
    return PowerSeries.from_function(lambda r: Fraction(comb(2 * r, r), 2**r), order)


def chi_square_mgf_check(order: int) -> PowerSeries:
    if order < 1:
        raise ValueError("order must be at least 1")
    a = chi_square_series_from_moments(order)
    b = chi_square_series_from_binomial(order)
    if a != b:
        raise ArithmeticError("moment and binomial forms of M_{z^2} disagree")
    return a


def sinc_series(order: int) -> PowerSeries:
    """``sin(x)/x`` as a series in ``u = x^2``."""
    return PowerSeries.from_function(lambda n: Fraction((-1) ** n, factorial(2 * n + 1)), order)


def z_mgf_series(order: int) -> PowerSeries:
    if order < 1:
        raise ValueError("order must be at least 1")
    return sinc_series(order).reciprocal().scale(Fraction(1, 2))


@dataclass
class ZMoments:
    order: int
    mgf_coeffs: PowerSeries
    straight: list[Fraction]
    central: list[Fraction]
    standardized: dict[int, RadicalNumber]


def z_moments(order: int) -> ZMoments:
    if order < 3:
        raise ValueError("order must be at least 3")
    mgf = z_mgf_series(order)
    straight = [mgf[k] * factorial(k) for k in range(order + 1)]
    central = central_moments(straight)
    return ZMoments(order, mgf, straight, central, standardized_moments(central))


@dataclass
class LimitRow:
    r: int
    combinatorial: RadicalNumber | None
    limiting: RadicalNumber

    @property
    def equal(self) -> bool:
        return self.combinatorial is not None and self.combinatorial == self.limiting

    def line(self) -> str:
        if self.combinatorial is None:
            return f"alpha_{self.r}: no combinatorial side available (Z gives {self.limiting})"
        verdict = "equal" if self.equal else "DIFFER"
        return f"alpha_{self.r}: {verdict} combinatorial={self.combinatorial} Z={self.limiting}"


@dataclass
class LimitComparison:
    rows: list[LimitRow]

    @property
    def all_equal(self) -> bool:
        return all(row.equal for row in self.rows)


def compare_limits(maxr: int = MAX_COMPARED_ORDER) -> LimitComparison:
    """Leading-term limits of the closed forms along ``t = s + 1`` versus ``Z``."""
    zm = z_moments(max(maxr, 3))
    rows = []
    for r in range(3, maxr + 1):
        if r > MAX_COMPARED_ORDER:
            rows.append(LimitRow(r, None, zm.standardized[r]))
            continue
        rows.append(LimitRow(r, limiting_standardized_moment(r, 1), zm.standardized[r]))
    return LimitComparison(rows)
