"""Exact quantity arithmetic helpers.

All token amounts and metric values are held as `fractions.Fraction` so
conservation and invariant checks are exact. Values cross into decimal
strings only at serialization boundaries.
"""

from __future__ import annotations

from decimal import Decimal
from fractions import Fraction
from typing import Union

Quantity = Fraction

Numeric = Union[int, float, str, Decimal, Fraction]


def as_fraction(value: Numeric) -> Fraction:
    """Convert a parsed scalar to an exact Fraction.

    Floats are converted through their shortest decimal repr, so a literal
    like 0.15 read from YAML/JSON becomes exactly 15/100 rather than the
    nearest binary float.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not quantities")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(str(value))
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a quantity")


def is_terminating(value: Fraction) -> bool:
    """True when the fraction has a finite decimal expansion."""
    d = value.denominator
    for p in (2, 5):
        while d % p == 0:
            d //= p
    return d == 1


def decimal_string(value: Fraction) -> str:
    """Exact decimal string for a terminating fraction, no trailing zeros."""
    if value.denominator == 1:
        return str(value.numerator)
    if not is_terminating(value):
        raise ValueError(f"{value} has no finite decimal expansion")
    sign = "-" if value < 0 else ""
    den = value.denominator
    scale = 0
    while den % 2 == 0:
        den //= 2
        scale += 1
    twos = scale
    scale = 0
    while den % 5 == 0:
        den //= 5
        scale += 1
    digits = max(twos, scale)
    scaled = abs(value.numerator) * 10**digits // value.denominator
    text = str(scaled).rjust(digits + 1, "0")
    whole, frac = text[:-digits], text[-digits:]
    frac = frac.rstrip("0")
    return f"{sign}{whole}.{frac}" if frac else f"{sign}{whole}"


def canonical_number(value: Fraction) -> Union[int, str]:
    """Render a fraction for canonical documents: int, decimal, or 'p/q'."""
    if value.denominator == 1:
        return value.numerator
    if is_terminating(value):
        return decimal_string(value)
    return f"{value.numerator}/{value.denominator}"


def rounded(value: Fraction, places: int = 6) -> float:
    """Round an exact value to a float with the given decimal precision."""
    scale = 10**places
    return int(value * scale + (Fraction(1, 2) if value >= 0 else Fraction(-1, 2))) / scale


def rounded_string(value: Fraction, places: int = 6) -> str:
    """Fixed-point decimal string of an exact value (banker's-free rounding)."""
    scale = 10**places
    scaled = value * scale
    adjusted = scaled + (Fraction(1, 2) if scaled >= 0 else Fraction(-1, 2))
    quant = Fraction(int(adjusted), scale)
    text = decimal_string(quant)
    if places <= 0:
        return text
    if "." not in text:
        return f"{text}.{'0' * places}"
    whole, frac = text.split(".")
    return f"{whole}.{frac.ljust(places, '0')}"
