"""Exception hierarchy.

Errors are semantic: callers can tell bad parameters apart from
degenerate geometry (vanishing denominators in slope formulas) and from
bookkeeping mistakes (pairing classes that live on different surfaces).
"""

from __future__ import annotations


class SlopeStabError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(SlopeStabError, ZeroDivisionError):
    """A rational was constructed with a zero denominator."""


class DegenerateInequality(SlopeStabError):
    """All coefficients of a polynomial inequality vanish."""


class ParamError(SlopeStabError, ValueError):
    """Surface or scan parameters violate a constructor precondition."""


class SurfaceMismatch(SlopeStabError):
    """Divisor classes from different surfaces were combined."""


class DegeneratePolarization(SlopeStabError):
    """The polarization has zero self-intersection, so no slope exists."""


class DegenerateQuotientSlope(SlopeStabError):
    """The quotient-slope denominator vanishes or is nowhere positive."""


class NotAmplePolarization(SlopeStabError):
    """The requested operation needs an ample polarization."""
