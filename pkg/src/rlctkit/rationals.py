"""Exact rational values and their wire format.

All thresholds and jumping numbers in this package are exact rationals,
represented by :class:`fractions.Fraction` (always reduced, positive
denominator, structural equality).  The one extra value is positive
infinity, used for the threshold of a function with no real zeros; it is
represented by ``math.inf`` and serialized as the string ``"infinity"``.

JSON carries rationals as ``"p/q"`` strings, never as floats, so exact
values survive a round-trip bit-for-bit.
"""

from __future__ import annotations

import math
from fractions import Fraction

INFINITY = math.inf

# A threshold is either an exact rational or +infinity.
Threshold = Fraction | float


def rational_to_str(value: Threshold) -> str:
    """Serialize a Fraction as "p/q" (denominator always explicit), or "infinity"."""
    if value == INFINITY:
        return "infinity"
    if not isinstance(value, Fraction):
        raise TypeError(f"expected Fraction or infinity, got {type(value).__name__}")
    return f"{value.numerator}/{value.denominator}"


def rational_from_str(text: str) -> Threshold:
    """Parse "p/q", a bare integer "p", or "infinity".

    Raises:
        ValueError: if the string is not a valid rational.
    """
    text = text.strip()
    if text == "infinity":
        return INFINITY
    num, sep, den = text.partition("/")
    try:
        if not sep:
            return Fraction(int(num))
        return Fraction(int(num), int(den))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc
