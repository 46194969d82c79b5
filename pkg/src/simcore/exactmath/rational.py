"""Rational helpers on top of :class:`fractions.Fraction`."""

from __future__ import annotations

import operator
from fractions import Fraction

_OPS = {
    "+": operator.add,
    "-": operator.sub,
    "−": operator.sub,
    "*": operator.mul,
    "×": operator.mul,
    "/": operator.truediv,
    "÷": operator.truediv,
}


def rational_arith(a, b, op: str) -> Fraction:
    """Apply ``op`` to two rationals; the result is always in lowest terms.

    Division by zero raises :class:`ZeroDivisionError`.
    """
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown rational operation {op!r}") from None
    return fn(Fraction(a), Fraction(b))


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted in exact arithmetic")
    return Fraction(value)


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())
