"""Exact numbers of the form ``c * sqrt(m)`` with ``c`` rational and ``m`` square-free."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .rational import as_fraction, format_rational


def square_free_decomposition(n: int) -> tuple[int, int]:
    """Return ``(f, m)`` with ``n == f*f*m`` and ``m`` square-free.

    Trial division runs up to the cube root of ``n``; whatever is left then has
    at most two prime factors, so it is either square-free or a perfect square.
    """
    if n < 0:
        raise ValueError("square-free decomposition of a negative number")
    if n == 0:
        return 0, 1
    f, m = 1, 1
    p = 2
    while p * p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            f *= p ** (e // 2)
            if e % 2:
                m *= p
        p += 1 if p == 2 else 2
    r = math.isqrt(n)
    if r * r == n and n > 1:
        f *= r
    else:
        m *= n
    return f, m


@dataclass(frozen=True)
class RadicalNumber:
    coefficient: Fraction
    radicand: int = 1

    def __post_init__(self):
        c = as_fraction(self.coefficient)
        m = int(self.radicand)
        if m < 0:
            raise ValueError("radicand must be nonnegative")
        f, m = square_free_decomposition(m)
        c = c * f
        if c == 0:
            m = 1
        object.__setattr__(self, "coefficient", c)
        object.__setattr__(self, "radicand", m)

    @classmethod
    def rational(cls, value) -> "RadicalNumber":
        return cls(as_fraction(value), 1)

    @classmethod
    def sqrt_of(cls, value) -> "RadicalNumber":
        """sqrt(p/q) = sqrt(p*q)/q."""
        value = as_fraction(value)
        if value < 0:
            raise ValueError("square root of a negative rational")
        return cls(Fraction(1, value.denominator), value.numerator * value.denominator)

    @classmethod
    def rational_power(cls, base, half_exponent: int) -> "RadicalNumber":
        """``base ** (half_exponent / 2)`` for a positive rational ``base``."""
        base = as_fraction(base)
        if half_exponent < 0:
            return cls.rational(1) / cls.rational_power(base, -half_exponent)
        whole = base ** (half_exponent // 2)
        if half_exponent % 2 == 0:
            return cls.rational(whole)
        return cls.sqrt_of(base) * whole

    def is_rational(self) -> bool:
        return self.radicand == 1

    def square(self) -> Fraction:
        return self.coefficient**2 * self.radicand

    def __mul__(self, other):
        if isinstance(other, RadicalNumber):
            return RadicalNumber(self.coefficient * other.coefficient, self.radicand * other.radicand)
        return RadicalNumber(self.coefficient * as_fraction(other), self.radicand)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, RadicalNumber):
            if other.coefficient == 0:
                raise ZeroDivisionError("division by zero radical")
            # a sqrt(m) / (b sqrt(n)) = (a / (b n)) sqrt(m n)
            return RadicalNumber(
                self.coefficient / (other.coefficient * other.radicand),
                self.radicand * other.radicand,
            )
        return RadicalNumber(self.coefficient / as_fraction(other), self.radicand)

    def __neg__(self):
        return RadicalNumber(-self.coefficient, self.radicand)

    def __float__(self) -> float:
        return float(self.coefficient) * math.sqrt(self.radicand)

    def __str__(self) -> str:
        if self.radicand == 1:
            return format_rational(self.coefficient)
        if self.coefficient == 1:
            return f"sqrt({self.radicand})"
        return f"{format_rational(self.coefficient)}*sqrt({self.radicand})"

    def to_json(self) -> list[int]:
        return [self.coefficient.numerator, self.coefficient.denominator, self.radicand]

    @classmethod
    def from_json(cls, data) -> "RadicalNumber":
        num, den, rad = data
        return cls(Fraction(int(num), int(den)), int(rad))
