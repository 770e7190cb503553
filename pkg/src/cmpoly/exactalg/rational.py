"""Exact rational scalars.

Rationals are plain :class:`fractions.Fraction` values; this module only adds
parsing and the canonical ``"p/q"`` text form used in every exchange format.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

RationalLike = Union[int, Fraction, str]


def as_rational(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact rationals; pass a string")
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_vector(text: str) -> list[Fraction]:
    """Parse ``"a,b,c"`` (entries may be ``p/q``) into a rational vector."""
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if not parts:
        raise ValueError("empty vector")
    return [Fraction(p) for p in parts]


def format_vector(v: Iterable[Fraction]) -> list[str]:
    return [format_rational(x) for x in v]
