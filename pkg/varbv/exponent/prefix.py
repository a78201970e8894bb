# varbv/exponent/prefix.py
"""
Exact harmonic-mean exponents.

p̄(Q) is the reciprocal of the mean of 1/p over Q. For a step exponent the
integral of 1/p is piecewise linear, so one prefix table of exact rationals
answers every query.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import FrozenSet, Tuple, Union

from varbv.core.errors import DegenerateInterval, OutOfDomain
from varbv.core.model import Interval, RationalLike, StepExponent, rational

IntervalLike = Union[Interval, Tuple[RationalLike, RationalLike]]


@dataclass(frozen=True)
class PrefixIntegral:
    """Cumulative I(b_i) = ∫_a^{b_i} 1/p over the exponent breakpoints."""

    breakpoints: Tuple[Fraction, ...]
    values: Tuple[Fraction, ...]
    cumulative: Tuple[Fraction, ...]

    @classmethod
    def of(cls, p: StepExponent) -> "PrefixIntegral":
        return _prefix_integral(p.without_overrides())

    def at(self, x: Fraction) -> Fraction:
        i = min(bisect.bisect_right(self.breakpoints, x) - 1, len(self.values) - 1)
        return self.cumulative[i] + (x - self.breakpoints[i]) / self.values[i]

    def integral(self, lo: Fraction, hi: Fraction) -> Fraction:
        return self.at(hi) - self.at(lo)

    def mean_reciprocal(self, lo: Fraction, hi: Fraction) -> Fraction:
        """(1/|Q|) ∫_Q 1/p for Q = [lo, hi], lo < hi."""
        return self.integral(lo, hi) / (hi - lo)


@lru_cache(maxsize=256)
def _prefix_integral(p: StepExponent) -> PrefixIntegral:
    cum = [Fraction(0)]
    for (lo, hi), v in zip(zip(p.breakpoints, p.breakpoints[1:]), p.values):
        cum.append(cum[-1] + (hi - lo) / v)
    return PrefixIntegral(p.breakpoints, p.values, tuple(cum))


def as_interval(p: StepExponent, q: IntervalLike) -> Interval:
    """Validate ``q`` as a nondegenerate subinterval of the exponent's domain."""
    if isinstance(q, Interval):
        lo, hi = q.lo, q.hi
    else:
        lo, hi = rational(q[0], "lo"), rational(q[1], "hi")
    if lo >= hi:
        raise DegenerateInterval(f"interval [{lo}, {hi}] is degenerate", field="interval")
    if not (p.domain.contains(lo) and p.domain.contains(hi)):
        raise OutOfDomain(f"[{lo}, {hi}] is not inside {p.domain}", field="interval")
    return q if isinstance(q, Interval) else Interval(lo, hi)


def mean_exponent(p: StepExponent, q: IntervalLike) -> Fraction:
    """p̄(Q), exact. Overrides have measure zero and are ignored."""
    iv = as_interval(p, q)
    return 1 / PrefixIntegral.of(p).mean_reciprocal(iv.lo, iv.hi)


def attainable_exponents(p: StepExponent, q: IntervalLike) -> FrozenSet[Fraction]:
    """
    Exponent values a tag inside Q can select: pieces meeting Q in a set of
    positive length plus overrides sitting in the closed interval.

    A piece that only touches Q at its right end is not counted, so the set
    does not depend on which side a breakpoint belongs to.
    """
    iv = as_interval(p, q)
    found = {p.values[k] for k in p.overlapping_pieces(iv.lo, iv.hi)}
    found.update(p.overrides_within(iv.lo, iv.hi))
    return frozenset(found)


def _free_point(p: StepExponent, lo: Fraction, hi: Fraction) -> Fraction:
    """A point of the open interval (lo, hi) that is not an override point."""
    x = (lo + hi) / 2
    while x in p.override_map:
        x = (lo + x) / 2
    return x


def mean_value_witnesses(p: StepExponent, q: IntervalLike) -> Tuple[Fraction, Fraction]:
    """Points x, y in Q off the overrides with p(x) <= p̄(Q) <= p(y)."""
    iv = as_interval(p, q)
    pieces = list(p.overlapping_pieces(iv.lo, iv.hi))
    k_min = min(pieces, key=lambda k: (p.values[k], k))
    k_max = max(pieces, key=lambda k: (p.values[k], -k))

    def inside(k: int) -> Fraction:
        left, right = p.piece_span(k)
        return _free_point(p, max(left, iv.lo), min(right, iv.hi))

    return inside(k_min), inside(k_max)
