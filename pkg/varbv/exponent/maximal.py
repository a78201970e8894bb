# varbv/exponent/maximal.py
"""
Hardy–Littlewood maximal values of 1/p at a point, full and one-sided.

While one endpoint moves inside a single exponent piece the mean of 1/p is a
fractional-linear, hence monotone, function of that endpoint. Extrema are
therefore reached at breakpoints, at the domain ends or at x itself, and a
finite enumeration of candidate intervals gives exact answers. The one-sided
limits 1/p(x±) are attained by the single-piece intervals next to x.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Literal, Optional, Tuple

import structlog

from varbv.core.errors import OutOfDomain
from varbv.core.model import Interval, RationalLike, StepExponent, rational
from varbv.exponent.prefix import PrefixIntegral

logger = structlog.get_logger()

Side = Literal["full", "left", "right"]


@dataclass(frozen=True)
class MaximalProfile:
    """M(1/p)(x) and its one-sided variants with witness intervals."""

    x: Fraction
    full: Fraction
    left: Fraction
    right: Fraction
    full_witness: Interval
    left_witness: Interval
    right_witness: Interval

    def value(self, side: Side) -> Fraction:
        return {"full": self.full, "left": self.left, "right": self.right}[side]

    def witness(self, side: Side) -> Interval:
        return {"full": self.full_witness, "left": self.left_witness, "right": self.right_witness}[side]


@dataclass(frozen=True)
class AdditivityCondition:
    holds: bool
    gap: Fraction
    side: Literal["left", "right"]
    p_full: Fraction
    p_left: Fraction
    p_right: Fraction


def _interior_point(p: StepExponent, x: RationalLike) -> Fraction:
    point = rational(x, "x")
    if not p.domain.lo < point < p.domain.hi:
        raise OutOfDomain(f"x={point} must lie strictly inside {p.domain}", field="x")
    return point


def _candidates(p: StepExponent, x: Fraction) -> Tuple[List[Fraction], List[Fraction]]:
    lefts = sorted({p.domain.lo, x, *(b for b in p.breakpoints if b <= x)})
    rights = sorted({x, p.domain.hi, *(b for b in p.breakpoints if b >= x)})
    return lefts, rights


def _best(pairs: Iterator[Tuple[Fraction, Fraction]], prefix: PrefixIntegral) -> Tuple[Fraction, Interval]:
    best: Optional[Fraction] = None
    witness: Optional[Tuple[Fraction, Fraction]] = None
    for c, d in pairs:
        m = prefix.mean_reciprocal(c, d)
        if best is None or m > best:
            best, witness = m, (c, d)
    assert best is not None and witness is not None
    return best, Interval(*witness)


def maximal_profile(p: StepExponent, x: RationalLike) -> MaximalProfile:
    point = _interior_point(p, x)
    prefix = PrefixIntegral.of(p)
    lefts, rights = _candidates(p, point)

    full, full_w = _best(((c, d) for c in lefts for d in rights if c < d), prefix)
    left, left_w = _best(((c, point) for c in lefts if c < point), prefix)
    right, right_w = _best(((point, d) for d in rights if d > point), prefix)

    logger.debug(
        "Maximal profile computed",
        x=str(point),
        full=str(full),
        left=str(left),
        right=str(right),
        candidates=len(lefts) * len(rights),
    )
    return MaximalProfile(point, full, left, right, full_w, left_w, right_w)


def p_minus(p: StepExponent, x: RationalLike, side: Side = "full") -> Fraction:
    """Infimum of p̄ over the chosen family of intervals containing x."""
    return 1 / maximal_profile(p, x).value(side)


def additivity_condition(p: StepExponent, x: RationalLike) -> AdditivityCondition:
    """
    Whether p̄_-^x over [a, b] is strictly below the larger one-sided value.

    ``side`` names the one-sided family attaining the max (right on ties);
    ``gap`` is that max minus the full value and is invariant under
    reflection of the exponent.
    """
    profile = maximal_profile(p, x)
    p_full, p_left, p_right = 1 / profile.full, 1 / profile.left, 1 / profile.right
    side: Literal["left", "right"] = "right" if p_right >= p_left else "left"
    top = max(p_left, p_right)
    return AdditivityCondition(
        holds=p_full < top,
        gap=top - p_full,
        side=side,
        p_full=p_full,
        p_left=p_left,
        p_right=p_right,
    )
