"""Parsing and formatting of exact rational values.

Every quantity in this package (edge weights, thresholds, utilities,
potentials) is a `fractions.Fraction`.  Floats are rejected at every input
boundary: the interesting behavior of these games lives at exact ties, and
a float would silently change best-response sets.
"""

import re
from fractions import Fraction

from .errors import GameInputError

_RATIONAL_RE = re.compile(r"[+-]?\d+(?:\s*/\s*\d+)?")


def as_rational(value, what: str = "value") -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to Fraction; reject floats."""
    if isinstance(value, bool):
        raise GameInputError(f"{what}: expected a rational, got a boolean")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise GameInputError(
            f"{what}: floating point is not allowed, use an exact 'p/q' string"
        )
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_RE.fullmatch(text):
            raise GameInputError(
                f"{what}: malformed rational {value!r} (expected 'p' or 'p/q')"
            )
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise GameInputError(
                f"{what}: malformed rational {value!r} (zero denominator)"
            ) from None
    raise GameInputError(f"{what}: cannot interpret {type(value).__name__} as a rational")


def format_rational(value: Fraction) -> str:
    """Render a Fraction as "p" or "p/q" (lowest terms, positive q)."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
