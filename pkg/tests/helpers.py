"""
Shared builders and hypothesis strategies.

Everything lives on [0, 1] with breakpoints on a fixed denominator, so the
grids stay small enough for the brute-force oracle.
"""
from fractions import Fraction
from typing import Dict, List

from hypothesis import strategies as st

from varbv.core.model import Grid, Interval, SpikeFunction, StepExponent, StepFunction

UNIT = Interval.unit()
EXPONENTS = [Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3), Fraction(4)]
HEIGHTS = [Fraction(k, 4) for k in range(-6, 7)]


def split(left, right, at=Fraction(1, 2)) -> StepExponent:
    return StepExponent.from_pieces([0, at, 1], [left, right])


def constant(value) -> StepExponent:
    return StepExponent.constant(UNIT, value)


@st.composite
def inner_points(draw, denominator: int = 12, max_size: int = 4) -> List[Fraction]:
    ks = draw(st.sets(st.integers(1, denominator - 1), max_size=max_size))
    return [Fraction(k, denominator) for k in sorted(ks)]


@st.composite
def step_exponents(draw, denominator: int = 12, max_pieces: int = 5, overrides: bool = True) -> StepExponent:
    inner = draw(inner_points(denominator, max_pieces - 1))
    values = draw(st.lists(st.sampled_from(EXPONENTS), min_size=len(inner) + 1, max_size=len(inner) + 1))
    ovr: Dict[Fraction, Fraction] = {}
    if overrides:
        spots = draw(st.sets(st.integers(0, denominator), max_size=2))
        ovr = {Fraction(k, denominator): draw(st.sampled_from(EXPONENTS)) for k in spots}
    return StepExponent.from_pieces([0, *inner, 1], values, ovr)


@st.composite
def step_functions(draw, denominator: int = 12) -> StepFunction:
    inner = draw(inner_points(denominator, 3))
    n = len(inner) + 1
    pieces = draw(st.lists(st.sampled_from(HEIGHTS), min_size=n, max_size=n))
    points = draw(st.lists(st.sampled_from(HEIGHTS), min_size=n + 1, max_size=n + 1))
    return StepFunction.from_pieces([0, *inner, 1], pieces, points)


@st.composite
def spike_functions(draw, denominator: int = 12) -> SpikeFunction:
    spots = draw(st.sets(st.integers(0, denominator), min_size=1, max_size=4))
    spikes = {Fraction(k, denominator): draw(st.sampled_from(HEIGHTS)) for k in spots}
    return SpikeFunction.from_mapping(UNIT, spikes)


def functions(denominator: int = 12):
    return st.one_of(step_functions(denominator), spike_functions(denominator))


@st.composite
def grids(draw, denominator: int = 12, max_points: int = 12) -> Grid:
    inner = draw(st.sets(st.integers(1, denominator - 1), max_size=max_points - 2))
    return Grid.of([0, 1, *(Fraction(k, denominator) for k in inner)])
