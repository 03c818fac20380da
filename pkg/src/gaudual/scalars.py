"""Exact rational scalars.

All ground constants (marked points, frequencies, the parameter mu) are
`fractions.Fraction` values; nothing in the package touches floats.
"""

from __future__ import annotations

from fractions import Fraction

Q = Fraction


def rat(value) -> Fraction:
    """Coerce ints, strings like ``"-3/2"``, or Fractions to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def rat_str(value: Fraction) -> str:
    """Serialize a Fraction as ``"p"`` or ``"p/q"`` (exactness survives)."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
