"""Exact rational scalars and certified interval enclosures.

Every scalar in the computational core is a :class:`fractions.Fraction`:
arbitrary precision, always in lowest terms with a positive denominator,
never rounded.  Irrational thresholds (square roots of non-square
rationals) are never materialized as radicals; they are either decided
through polynomial sign tests or represented by a
:class:`RationalInterval` whose exact rational endpoints bracket the
true value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Union

from .errors import DivisionByZero, ParamError

#: Default width bound for root enclosures.
DEFAULT_TOL = Fraction(1, 10**9)

RationalLike = Union[int, str, Fraction]


def as_fraction(x: RationalLike) -> Fraction:
    """Coerce an int, a string like ``"3/4"``, or a Fraction to a Fraction.

    Floats are rejected: no floating point is allowed in the core.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise ParamError(f"expected an exact rational, got {type(x).__name__}: {x!r}")
    if isinstance(x, (int, str)):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParamError(f"not a rational: {x!r}") from exc
    raise ParamError(f"expected an exact rational, got {type(x).__name__}")


def reduce(numerator: int, denominator: int) -> Fraction:
    """Return numerator/denominator in lowest terms, positive denominator."""
    if denominator == 0:
        raise DivisionByZero("denominator must be nonzero")
    return Fraction(numerator, denominator)


def sign(x: Fraction) -> int:
    """Exact sign: -1, 0, or +1."""
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def format_rational(x: RationalLike) -> str:
    """Canonical rendering: ``"n/d"`` in lowest terms, or ``"n"`` for integers."""
    return str(as_fraction(x))


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def rational_sqrt(x: Fraction) -> Fraction | None:
    """The exact square root of ``x`` if it is the square of a rational, else None."""
    if x < 0:
        return None
    if is_perfect_square(x.numerator) and is_perfect_square(x.denominator):
        return Fraction(isqrt(x.numerator), isqrt(x.denominator))
    return None


@dataclass(frozen=True)
class RationalInterval:
    """A closed interval [lo, hi] certified to contain one real value."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_fraction(self.lo))
        object.__setattr__(self, "hi", as_fraction(self.hi))
        if self.lo > self.hi:
            raise ParamError(f"interval endpoints out of order: {self.lo} > {self.hi}")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: RationalLike) -> bool:
        x = as_fraction(x)
        return self.lo <= x <= self.hi

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"
