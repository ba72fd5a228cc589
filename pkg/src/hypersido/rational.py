"""Exact rational helpers and the "p/q" string encoding used in JSON files."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import lcm

from .errors import InvalidInput


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise InvalidInput(f"refusing to treat float {x!r} as an exact rational")
    try:
        return Fraction(x)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InvalidInput(f"not a rational: {x!r}") from exc


def fmt(q) -> str:
    """Lowest-terms ``p/q``; the sign sits on the numerator."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise InvalidInput(f"expected a 'p/q' string, got {s!r}")
    return to_fraction(s.strip())


def common_denominator(values) -> int:
    return reduce(lcm, (Fraction(v).denominator for v in values), 1)
