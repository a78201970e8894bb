# varbv/core/model.py
"""
Domain types shared by all computation: intervals, step exponents, point
functions, partitions and grids.

All points, breakpoints and exponent values are exact ``Fraction``s. Function
values are either exact rationals or binary64 floats (irrational spike heights
such as 1/sqrt(k) only exist as floats). Every object is immutable.
"""
from __future__ import annotations

import bisect
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import ClassVar, Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

from varbv.core.errors import InvalidModel, InvalidTag, OutOfDomain, UnsampledPoint

Real = Union[Fraction, float]
RationalLike = Union[Fraction, int, str]


def rational(value: RationalLike, what: str = "value") -> Fraction:
    """Coerce an exact literal to ``Fraction``. Floats are rejected."""
    if isinstance(value, bool):
        raise InvalidModel(f"{what}: booleans are not rationals", field=what)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise InvalidModel(f"{what}: decimal literal {value!r} is not exact", field=what)
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as e:
            raise InvalidModel(f"{what}: cannot parse {value!r}", field=what) from e
    raise InvalidModel(f"{what}: expected an exact rational, got {type(value).__name__}", field=what)


def real(value: Union[Real, int], what: str = "value") -> Real:
    """Coerce a function value: exact literals become ``Fraction``, floats stay floats."""
    if isinstance(value, float):
        if not math.isfinite(value):
            raise InvalidModel(f"{what}: non-finite value {value!r}", field=what)
        return value
    return rational(value, what)


def _strictly_increasing(points: Sequence[Fraction]) -> bool:
    return all(a < b for a, b in zip(points, points[1:]))


# ── Interval ──────────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with exact endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", rational(self.lo, "lo"))
        object.__setattr__(self, "hi", rational(self.hi, "hi"))
        if self.lo > self.hi:
            raise InvalidModel(f"interval [{self.lo}, {self.hi}] has lo > hi", field="interval")

    @classmethod
    def unit(cls) -> "Interval":
        return cls(Fraction(0), Fraction(1))

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def degenerate(self) -> bool:
        return self.lo == self.hi

    def contains(self, x: Fraction) -> bool:
        return self.lo <= x <= self.hi

    def require(self, x: RationalLike, what: str = "x") -> Fraction:
        """Return ``x`` as a Fraction or raise ``OutOfDomain``."""
        point = rational(x, what)
        if not self.contains(point):
            raise OutOfDomain(f"{what}={point} outside [{self.lo}, {self.hi}]", field=what)
        return point

    def mirror(self, x: Fraction) -> Fraction:
        return self.lo + self.hi - x

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


# ── StepExponent ──────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class StepExponent:
    """
    Piecewise-constant exponent p on [a, b] with finite point overrides.

    Piece i occupies [b_i, b_{i+1}); the last piece is closed at b. Overrides
    change p at single points: they matter for pointwise evaluation and tagged
    sums, never for the harmonic mean p̄(Q).
    """

    domain: Interval
    breakpoints: Tuple[Fraction, ...]
    values: Tuple[Fraction, ...]
    overrides: Tuple[Tuple[Fraction, Fraction], ...] = ()

    def __post_init__(self) -> None:
        bps = tuple(rational(b, "breakpoints") for b in self.breakpoints)
        vals = tuple(rational(v, "values") for v in self.values)
        ovr = tuple(
            sorted((rational(x, "overrides"), rational(v, "overrides")) for x, v in self.overrides)
        )
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "overrides", ovr)

        if self.domain.degenerate:
            raise InvalidModel("exponent domain must be nondegenerate", field="domain")
        if len(bps) < 2 or bps[0] != self.domain.lo or bps[-1] != self.domain.hi:
            raise InvalidModel("breakpoints must start at a and end at b", field="breakpoints")
        if not _strictly_increasing(bps):
            raise InvalidModel("breakpoints must be strictly increasing", field="breakpoints")
        if len(vals) != len(bps) - 1:
            raise InvalidModel(
                f"{len(bps) - 1} pieces need {len(bps) - 1} values, got {len(vals)}",
                field="values",
            )
        if any(v < 1 for v in vals):
            raise InvalidModel("piece values must be >= 1", field="values")
        points = [x for x, _ in ovr]
        if len(set(points)) != len(points):
            raise InvalidModel("duplicate override point", field="overrides")
        for x, v in ovr:
            if not self.domain.contains(x):
                raise InvalidModel(f"override point {x} outside {self.domain}", field="overrides")
            if v < 1:
                raise InvalidModel("override values must be >= 1", field="overrides")

    # -- constructors ----------------------------------------------------------

    @classmethod
    def constant(
        cls,
        domain: Interval,
        value: RationalLike,
        overrides: Optional[Mapping[RationalLike, RationalLike]] = None,
    ) -> "StepExponent":
        return cls.from_pieces([domain.lo, domain.hi], [value], overrides)

    @classmethod
    def from_pieces(
        cls,
        breakpoints: Sequence[RationalLike],
        values: Sequence[RationalLike],
        overrides: Optional[Mapping[RationalLike, RationalLike]] = None,
    ) -> "StepExponent":
        bps = [rational(b, "breakpoints") for b in breakpoints]
        if len(bps) < 2:
            raise InvalidModel("need at least two breakpoints", field="breakpoints")
        pairs = tuple((k, v) for k, v in (overrides or {}).items())
        return cls(Interval(bps[0], bps[-1]), tuple(bps), tuple(values), pairs)

    # -- lookup ----------------------------------------------------------------

    @property
    def piece_count(self) -> int:
        return len(self.values)

    @cached_property
    def override_map(self) -> Dict[Fraction, Fraction]:
        return dict(self.overrides)

    def piece_index(self, x: Fraction) -> int:
        """Index of the piece containing x under the left-closed convention."""
        return min(bisect.bisect_right(self.breakpoints, x) - 1, self.piece_count - 1)

    def piece_left_of(self, x: Fraction) -> int:
        """Index of the piece whose interior lies immediately left of x (x > a)."""
        return max(bisect.bisect_left(self.breakpoints, x) - 1, 0)

    def piece_span(self, k: int) -> Tuple[Fraction, Fraction]:
        return self.breakpoints[k], self.breakpoints[k + 1]

    def value_at(self, x: RationalLike) -> Fraction:
        point = self.domain.require(x)
        if point in self.override_map:
            return self.override_map[point]
        return self.values[self.piece_index(point)]

    def overlapping_pieces(self, lo: Fraction, hi: Fraction) -> range:
        """Pieces meeting [lo, hi] in a set of positive length (lo < hi)."""
        return range(self.piece_index(lo), self.piece_left_of(hi) + 1)

    def overrides_within(self, lo: Fraction, hi: Fraction) -> Tuple[Fraction, ...]:
        return tuple(v for x, v in self.overrides if lo <= x <= hi)

    @property
    def essential_min(self) -> Fraction:
        return min(self.values)

    @property
    def essential_max(self) -> Fraction:
        return max(self.values)

    @property
    def is_constant(self) -> bool:
        return len(set(self.values)) == 1

    # -- derived exponents -----------------------------------------------------

    def without_overrides(self) -> "StepExponent":
        return StepExponent(self.domain, self.breakpoints, self.values)

    def with_overrides(self, overrides: Mapping[RationalLike, RationalLike]) -> "StepExponent":
        merged = dict(self.override_map)
        merged.update({rational(k, "overrides"): rational(v, "overrides") for k, v in overrides.items()})
        return StepExponent(self.domain, self.breakpoints, self.values, tuple(merged.items()))

    def on_breakpoints(self, breakpoints: Iterable[Fraction]) -> "StepExponent":
        """The same exponent expressed over a superset of its breakpoints."""
        bps = sorted(set(self.breakpoints) | {rational(b, "breakpoints") for b in breakpoints})
        if bps[0] != self.domain.lo or bps[-1] != self.domain.hi:
            raise InvalidModel("refinement must stay inside the domain", field="breakpoints")
        vals = [self.values[self.piece_index(lo)] for lo in bps[:-1]]
        return StepExponent(self.domain, tuple(bps), tuple(vals), self.overrides)

    def restrict(self, lo: RationalLike, hi: RationalLike) -> "StepExponent":
        sub = Interval(self.domain.require(lo, "lo"), self.domain.require(hi, "hi"))
        if sub.degenerate:
            raise InvalidModel("cannot restrict an exponent to a point", field="interval")
        inner = [b for b in self.breakpoints if sub.lo < b < sub.hi]
        bps = [sub.lo, *inner, sub.hi]
        vals = [self.values[self.piece_index(left)] for left in bps[:-1]]
        ovr = tuple((x, v) for x, v in self.overrides if sub.contains(x))
        return StepExponent(sub, tuple(bps), tuple(vals), ovr)

    def reflect(self) -> "StepExponent":
        """Mirror about the midpoint of the domain: x -> a + b - x."""
        bps = tuple(self.domain.mirror(b) for b in reversed(self.breakpoints))
        ovr = tuple((self.domain.mirror(x), v) for x, v in self.overrides)
        return StepExponent(self.domain, bps, tuple(reversed(self.values)), ovr)


def eval_exponent(p: StepExponent, x: RationalLike) -> Fraction:
    """Pointwise p(x): the override value at an override point, else the piece value."""
    return p.value_at(x)


# ── Point functions ───────────────────────────────────────────────────────────


class PointFunction(ABC):
    """A test function f on [a, b] that can be read at exact points."""

    kind: ClassVar[str]
    domain: Interval
    anchored: bool

    @abstractmethod
    def value_at(self, x: RationalLike) -> Real:
        """Exact value (Fraction or float) at ``x``."""

    @abstractmethod
    def grid_points(self) -> Tuple[Fraction, ...]:
        """Points a DP grid must contain to see every feature of f."""

    @abstractmethod
    def restrict(self, lo: RationalLike, hi: RationalLike) -> "PointFunction":
        """f on [lo, hi]; the membership flag is dropped."""

    @abstractmethod
    def reflect(self) -> "PointFunction":
        """x -> f(a + b - x)."""

    @abstractmethod
    def scaled(self, factor: Real) -> "PointFunction":
        """c·f."""

    def __call__(self, x: RationalLike) -> float:
        return float(self.value_at(x))

    def _check_anchor(self) -> None:
        if self.anchored and self.value_at(self.domain.lo) != 0:
            raise InvalidModel("membership flag set but f(a) != 0", field="anchored")


def _scale(value: Real, factor: Real) -> Real:
    return value * factor


@dataclass(frozen=True)
class StepFunction(PointFunction):
    """
    Step function with explicit values at its breakpoints.

    ``pieces[i]`` is the value on the open interval (b_i, b_{i+1});
    ``point_values[j]`` is f(b_j).
    """

    kind: ClassVar[str] = "step"

    domain: Interval
    breakpoints: Tuple[Fraction, ...]
    pieces: Tuple[Real, ...]
    point_values: Tuple[Real, ...]
    anchored: bool = False

    def __post_init__(self) -> None:
        bps = tuple(rational(b, "breakpoints") for b in self.breakpoints)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "pieces", tuple(real(v, "pieces") for v in self.pieces))
        object.__setattr__(
            self, "point_values", tuple(real(v, "point_values") for v in self.point_values)
        )
        if len(bps) < 2 or bps[0] != self.domain.lo or bps[-1] != self.domain.hi:
            raise InvalidModel("breakpoints must start at a and end at b", field="breakpoints")
        if not _strictly_increasing(bps):
            raise InvalidModel("breakpoints must be strictly increasing", field="breakpoints")
        if len(self.pieces) != len(bps) - 1:
            raise InvalidModel("one piece value per breakpoint gap", field="pieces")
        if len(self.point_values) != len(bps):
            raise InvalidModel("one point value per breakpoint", field="point_values")
        self._check_anchor()

    @classmethod
    def from_pieces(
        cls,
        breakpoints: Sequence[RationalLike],
        pieces: Sequence[Union[Real, int]],
        point_values: Optional[Sequence[Union[Real, int]]] = None,
        anchored: bool = False,
    ) -> "StepFunction":
        """Build from pieces; by default f(b_j) takes the value of the piece on its left."""
        bps = tuple(rational(b, "breakpoints") for b in breakpoints)
        if point_values is None:
            point_values = [pieces[0], *pieces]
        return cls(Interval(bps[0], bps[-1]), bps, tuple(pieces), tuple(point_values), anchored)

    @classmethod
    def zero(cls, domain: Interval) -> "StepFunction":
        return cls(domain, (domain.lo, domain.hi), (Fraction(0),), (Fraction(0), Fraction(0)), True)

    @classmethod
    def jump(cls, domain: Interval, at: RationalLike, height: Union[Real, int] = 1) -> "StepFunction":
        """height·χ_(at, b]: zero up to and including ``at``."""
        c = domain.require(at, "at")
        if c == domain.hi:
            return cls.zero(domain)
        h = real(height, "height")
        if c == domain.lo:
            return cls(domain, (c, domain.hi), (h,), (Fraction(0), h), True)
        return cls(domain, (domain.lo, c, domain.hi), (Fraction(0), h), (Fraction(0), Fraction(0), h), True)

    def value_at(self, x: RationalLike) -> Real:
        point = self.domain.require(x)
        j = bisect.bisect_left(self.breakpoints, point)
        if j < len(self.breakpoints) and self.breakpoints[j] == point:
            return self.point_values[j]
        return self.pieces[j - 1]

    def grid_points(self) -> Tuple[Fraction, ...]:
        return self.breakpoints

    def restrict(self, lo: RationalLike, hi: RationalLike) -> "StepFunction":
        sub = Interval(self.domain.require(lo, "lo"), self.domain.require(hi, "hi"))
        if sub.degenerate:
            raise InvalidModel("cannot restrict a function to a point", field="interval")
        bps = [sub.lo, *(b for b in self.breakpoints if sub.lo < b < sub.hi), sub.hi]
        pieces = [self.value_at((u + v) / 2) for u, v in zip(bps, bps[1:])]
        points = [self.value_at(b) for b in bps]
        return StepFunction(sub, tuple(bps), tuple(pieces), tuple(points))

    def reflect(self) -> "StepFunction":
        bps = tuple(self.domain.mirror(b) for b in reversed(self.breakpoints))
        return StepFunction(
            self.domain, bps, tuple(reversed(self.pieces)), tuple(reversed(self.point_values))
        )

    def scaled(self, factor: Real) -> "StepFunction":
        return StepFunction(
            self.domain,
            self.breakpoints,
            tuple(_scale(v, factor) for v in self.pieces),
            tuple(_scale(v, factor) for v in self.point_values),
            self.anchored,
        )


@dataclass(frozen=True)
class SpikeFunction(PointFunction):
    """A base step function (or zero) changed at finitely many points."""

    kind: ClassVar[str] = "spike"

    domain: Interval
    spikes: Tuple[Tuple[Fraction, Real], ...]
    base: Optional[StepFunction] = None
    anchored: bool = False

    def __post_init__(self) -> None:
        pairs = tuple(sorted((rational(x, "spikes"), real(v, "spikes")) for x, v in self.spikes))
        object.__setattr__(self, "spikes", pairs)
        points = [x for x, _ in pairs]
        if len(set(points)) != len(points):
            raise InvalidModel("duplicate spike point", field="spikes")
        for x in points:
            if not self.domain.contains(x):
                raise InvalidModel(f"spike point {x} outside {self.domain}", field="spikes")
        if self.base is not None and self.base.domain != self.domain:
            raise InvalidModel("spike base must share the domain", field="base")
        self._check_anchor()

    @classmethod
    def from_mapping(
        cls,
        domain: Interval,
        spikes: Mapping[RationalLike, Union[Real, int]],
        base: Optional[StepFunction] = None,
        anchored: bool = False,
    ) -> "SpikeFunction":
        return cls(domain, tuple(spikes.items()), base, anchored)

    @cached_property
    def spike_map(self) -> Dict[Fraction, Real]:
        return dict(self.spikes)

    def value_at(self, x: RationalLike) -> Real:
        point = self.domain.require(x)
        if point in self.spike_map:
            return self.spike_map[point]
        if self.base is not None:
            return self.base.value_at(point)
        return Fraction(0)

    def grid_points(self) -> Tuple[Fraction, ...]:
        points = {self.domain.lo, self.domain.hi, *(x for x, _ in self.spikes)}
        if self.base is not None:
            points.update(self.base.breakpoints)
        return tuple(sorted(points))

    def restrict(self, lo: RationalLike, hi: RationalLike) -> "SpikeFunction":
        sub = Interval(self.domain.require(lo, "lo"), self.domain.require(hi, "hi"))
        base = self.base.restrict(sub.lo, sub.hi) if self.base is not None else None
        return SpikeFunction(sub, tuple((x, v) for x, v in self.spikes if sub.contains(x)), base)

    def reflect(self) -> "SpikeFunction":
        base = self.base.reflect() if self.base is not None else None
        return SpikeFunction(
            self.domain, tuple((self.domain.mirror(x), v) for x, v in self.spikes), base
        )

    def scaled(self, factor: Real) -> "SpikeFunction":
        base = self.base.scaled(factor) if self.base is not None else None
        return SpikeFunction(
            self.domain,
            tuple((x, _scale(v, factor)) for x, v in self.spikes),
            base,
            self.anchored,
        )


@dataclass(frozen=True)
class SampledFunction(PointFunction):
    """Values known only at finitely many sample points, a and b included."""

    kind: ClassVar[str] = "sampled"

    domain: Interval
    points: Tuple[Fraction, ...]
    values: Tuple[Real, ...]
    anchored: bool = False

    def __post_init__(self) -> None:
        pts = tuple(rational(x, "points") for x in self.points)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "values", tuple(real(v, "values") for v in self.values))
        if len(pts) < 2 or pts[0] != self.domain.lo or pts[-1] != self.domain.hi:
            raise InvalidModel("samples must include a and b", field="points")
        if not _strictly_increasing(pts):
            raise InvalidModel("sample points must be strictly increasing", field="points")
        if len(self.values) != len(pts):
            raise InvalidModel("one value per sample point", field="values")
        self._check_anchor()

    def value_at(self, x: RationalLike) -> Real:
        point = self.domain.require(x)
        j = bisect.bisect_left(self.points, point)
        if j == len(self.points) or self.points[j] != point:
            raise UnsampledPoint(f"{point} is not a sample point", field="x")
        return self.values[j]

    def grid_points(self) -> Tuple[Fraction, ...]:
        return self.points

    def restrict(self, lo: RationalLike, hi: RationalLike) -> "SampledFunction":
        sub = Interval(self.domain.require(lo, "lo"), self.domain.require(hi, "hi"))
        pairs = [(x, v) for x, v in zip(self.points, self.values) if sub.contains(x)]
        if not pairs or pairs[0][0] != sub.lo or pairs[-1][0] != sub.hi:
            raise UnsampledPoint("restriction endpoints must be sample points", field="interval")
        return SampledFunction(sub, tuple(x for x, _ in pairs), tuple(v for _, v in pairs))

    def reflect(self) -> "SampledFunction":
        return SampledFunction(
            self.domain,
            tuple(self.domain.mirror(x) for x in reversed(self.points)),
            tuple(reversed(self.values)),
        )

    def scaled(self, factor: Real) -> "SampledFunction":
        return SampledFunction(
            self.domain, self.points, tuple(_scale(v, factor) for v in self.values), self.anchored
        )


def eval_function(f: PointFunction, x: RationalLike) -> float:
    """f(x) as binary64, honouring spikes and explicit breakpoint values."""
    return float(f.value_at(x))


# ── Partitions and grids ──────────────────────────────────────────────────────


@dataclass(frozen=True)
class Partition:
    """Ordered points a = t_0 < ... < t_n = b, n >= 1."""

    points: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        pts = tuple(rational(t, "points") for t in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 2:
            raise InvalidModel("a partition needs at least two points", field="points")
        if not _strictly_increasing(pts):
            raise InvalidModel("partition points must be strictly increasing", field="points")

    @classmethod
    def of(cls, points: Iterable[RationalLike]) -> "Partition":
        return cls(tuple(points))

    @property
    def domain(self) -> Interval:
        return Interval(self.points[0], self.points[-1])

    def intervals(self) -> Iterator[Tuple[Fraction, Fraction]]:
        return zip(self.points, self.points[1:])

    def __len__(self) -> int:
        return len(self.points) - 1


@dataclass(frozen=True)
class TaggedPartition:
    """A partition plus one tag x_k in each closed interval [t_{k-1}, t_k]."""

    partition: Partition
    tags: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        tags = tuple(rational(x, "tags") for x in self.tags)
        object.__setattr__(self, "tags", tags)
        if len(tags) != len(self.partition):
            raise InvalidTag(
                f"{len(self.partition)} intervals need {len(self.partition)} tags, got {len(tags)}",
                field="tags",
            )
        for k, ((lo, hi), x) in enumerate(zip(self.partition.intervals(), tags)):
            if not lo <= x <= hi:
                raise InvalidTag(f"tag {x} outside interval {k} [{lo}, {hi}]", field=f"tags.{k}")

    def tagged_intervals(self) -> Iterator[Tuple[Fraction, Fraction, Fraction]]:
        for (lo, hi), x in zip(self.partition.intervals(), self.tags):
            yield lo, hi, x


@dataclass(frozen=True)
class Grid:
    """Candidate partition points; ``generation`` counts refinement rounds."""

    points: Tuple[Fraction, ...]
    generation: int = 0

    def __post_init__(self) -> None:
        pts = tuple(rational(t, "points") for t in self.points)
        object.__setattr__(self, "points", pts)
        if not _strictly_increasing(pts):
            raise InvalidModel("grid points must be strictly increasing", field="points")

    @classmethod
    def of(cls, points: Iterable[RationalLike], generation: int = 0) -> "Grid":
        return cls(tuple(sorted({rational(t, "points") for t in points})), generation)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.points)

    def __contains__(self, x: object) -> bool:
        return x in set(self.points)

    def union(self, points: Iterable[RationalLike]) -> "Grid":
        return Grid.of([*self.points, *points], self.generation)

    def restrict(self, lo: Fraction, hi: Fraction) -> "Grid":
        return Grid(tuple(t for t in self.points if lo <= t <= hi), self.generation)

    def refined(self, domain: Interval, eps: Fraction) -> "Grid":
        """Add every midpoint and the offsets t ± eps (clamped to the domain)."""
        new = set(self.points)
        new.update((u + v) / 2 for u, v in zip(self.points, self.points[1:]))
        for t in self.points:
            new.add(max(domain.lo, t - eps))
            new.add(min(domain.hi, t + eps))
        return Grid(tuple(sorted(new)), self.generation + 1)


__all__ = [
    "Real",
    "rational",
    "real",
    "Interval",
    "StepExponent",
    "eval_exponent",
    "PointFunction",
    "StepFunction",
    "SpikeFunction",
    "SampledFunction",
    "eval_function",
    "Partition",
    "TaggedPartition",
    "Grid",
]
