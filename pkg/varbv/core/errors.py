"""Exception hierarchy shared by every varbv module."""
from __future__ import annotations

from typing import Optional


class VarbvError(Exception):
    """Base error. ``field`` names the offending input when there is one."""

    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(message)
        self.field = field


class InvalidModel(VarbvError, ValueError):
    """A domain object violates its construction invariants."""


class OutOfDomain(VarbvError, ValueError):
    """A point or interval lies outside [a, b]."""


class UnsampledPoint(VarbvError, ValueError):
    """A sampled function was evaluated away from its sample points."""


class DegenerateInterval(VarbvError, ValueError):
    """An interval with lo >= hi reached a mean-exponent computation."""


class InvalidTag(VarbvError, ValueError):
    """A tag lies outside its closed partition interval."""


class GridTooSmall(VarbvError, ValueError):
    """A DP grid has fewer than two points."""


class GridTooLarge(VarbvError, ValueError):
    """A brute-force grid exceeds the enumeration limit."""


class NonpositiveScale(VarbvError, ValueError):
    """A modular was requested at a scale lambda <= 0."""


class NoFiniteBracket(VarbvError, ArithmeticError):
    """The Luxemburg bisection found no scale where the modular crosses 1."""


class NotPointwiseOrdered(VarbvError, ValueError):
    """An embedding comparison got exponents that are not p1 <= p2."""


class ConditionNotSatisfied(VarbvError, ValueError):
    """The additivity-failure condition does not hold at the given point."""


class DegenerateGap(ConditionNotSatisfied):
    """The additivity gap A is not positive, or too small for a representable jump."""


class SpecFormatError(VarbvError, ValueError):
    """A spec file could not be parsed into a domain object."""
