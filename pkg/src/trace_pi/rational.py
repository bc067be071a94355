"""Exact rational helpers on top of :class:`fractions.Fraction`."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .errors import MalformedInputError


def to_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; floats are refused.

    >>> to_fraction("3/6")
    Fraction(1, 2)
    >>> to_fraction(-2)
    Fraction(-2, 1)
    """
    if isinstance(value, bool):
        raise MalformedInputError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise MalformedInputError(f"not an exact rational: {value!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInputError(f"not a rational: {value!r}") from exc
    raise MalformedInputError(f"not an exact rational: {value!r}")


def format_fraction(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational_list(text: str) -> list[Fraction]:
    """Parse ``"1,0,-1/2"`` into Fractions."""
    items = [t for t in text.split(",")]
    if not text.strip() or any(not t.strip() for t in items):
        raise MalformedInputError(f"bad rational list: {text!r}")
    return [to_fraction(t) for t in items]


def fraction_to_json(q: Fraction):
    return q.numerator if q.denominator == 1 else format_fraction(q)
