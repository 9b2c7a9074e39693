"""Exact point arithmetic.

Points and weights travel through JSON as decimal strings ("0.5") and are held
as :class:`fractions.Fraction` internally so sums never drift.
"""

from __future__ import annotations

from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Union

from .errors import ValidationError

RationalLike = Union[str, int, Decimal, Fraction, float]


def to_rational(value: RationalLike) -> Fraction:
    if isinstance(value, bool):
        raise ValidationError(f"not a number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Decimal):
        if not value.is_finite():
            raise ValidationError(f"not a finite number: {value}")
        return Fraction(value)
    if isinstance(value, float):
        # repr() gives the shortest decimal that round-trips, so 0.1 -> 1/10
        value = repr(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            if "/" in text:
                return Fraction(text)
            dec = Decimal(text)
        except (InvalidOperation, ValueError, ZeroDivisionError):
            raise ValidationError(f"not a number: {value!r}") from None
        if not dec.is_finite():
            raise ValidationError(f"not a finite number: {value!r}")
        return Fraction(dec)
    raise ValidationError(f"not a number: {value!r}")


def format_rational(q: Fraction) -> str:
    """Render ``q`` as a terminating decimal when possible, else ``"p/q"``.

    >>> format_rational(Fraction(3, 2))
    '1.5'
    >>> format_rational(Fraction(2))
    '2'
    >>> format_rational(Fraction(1, 3))
    '1/3'
    """
    den = q.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{q.numerator}/{q.denominator}"
    digits = max(twos, fives)
    if digits == 0:
        return str(q.numerator)
    scaled = q * 10**digits
    sign = "-" if scaled < 0 else ""
    s = str(abs(scaled.numerator)).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}"
