"""Truncated power series with rational coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .rational import as_fraction


@dataclass(frozen=True)
class PowerSeries:
    """``c[0] + c[1] x + ... + c[order] x^order + O(x^(order+1))``."""

    order: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("truncation order must be nonnegative")
        if len(self.coeffs) != self.order + 1:
            raise ValueError(
                f"expected {self.order + 1} coefficients, got {len(self.coeffs)}"
            )

    @classmethod
    def from_coeffs(cls, coeffs: Sequence, order: int | None = None) -> "PowerSeries":
        coeffs = [as_fraction(c) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        coeffs = (coeffs + [Fraction(0)] * (order + 1))[: order + 1]
        return cls(order, tuple(coeffs))

    @classmethod
    def from_function(cls, fn: Callable[[int], object], order: int) -> "PowerSeries":
        return cls(order, tuple(as_fraction(fn(n)) for n in range(order + 1)))

    @classmethod
    def one(cls, order: int) -> "PowerSeries":
        return cls.from_coeffs([1], order)

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return PowerSeries(order, self.coeffs[: order + 1])

    def _common(self, other: "PowerSeries") -> int:
        return min(self.order, other.order)

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        n = self._common(other)
        return PowerSeries(n, tuple(a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)))

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        n = self._common(other)
        return PowerSeries(n, tuple(a - b for a, b in zip(self.coeffs[: n + 1], other.coeffs)))

    def __mul__(self, other) -> "PowerSeries":
        if not isinstance(other, PowerSeries):
            c = as_fraction(other)
            return PowerSeries(self.order, tuple(a * c for a in self.coeffs))
        n = self._common(other)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n + 1):
            out.append(sum((a[i] * b[k - i] for i in range(k + 1)), Fraction(0)))
        return PowerSeries(n, tuple(out))

    __rmul__ = __mul__

    def reciprocal(self) -> "PowerSeries":
        a = self.coeffs
        if a[0] == 0:
            raise ZeroDivisionError("series with zero constant term has no reciprocal")
        inv0 = 1 / a[0]
        out = [inv0]
        for k in range(1, self.order + 1):
            acc = sum((a[i] * out[k - i] for i in range(1, k + 1)), Fraction(0))
            out.append(-acc * inv0)
        return PowerSeries(self.order, tuple(out))

    def scale(self, c) -> "PowerSeries":
        """The series of ``f(c x)``."""
        c = as_fraction(c)
        return PowerSeries(self.order, tuple(a * c**n for n, a in enumerate(self.coeffs)))

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def __str__(self) -> str:
        body = " + ".join(f"({c})*x^{n}" for n, c in enumerate(self.coeffs) if c)
        return f"{body or '0'} + O(x^{self.order + 1})"


def series_reciprocal(a: PowerSeries) -> PowerSeries:
    return a.reciprocal()
