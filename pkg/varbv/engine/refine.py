# varbv/engine/refine.py
"""
Grid refinement around the DP.

Each round adds every midpoint and the offsets t ± ε_r around every grid
point, ε_r = (b - a)·2^-(r + ladder_base), so crossing intervals can shrink
onto exponent breakpoints. The lower bound only grows because every new grid
contains the old one.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

import structlog

from varbv.config.schema import EngineConfig
from varbv.core.errors import InvalidModel
from varbv.core.model import Grid, PointFunction, RationalLike, SampledFunction, StepExponent, rational
from varbv.engine.dp import VariationResult, max_partition_dp, sweep
from varbv.engine.weights import Mode, WeightPlan, dequantize

logger = structlog.get_logger()


def initial_grid(p: StepExponent, f: PointFunction, extra_points: Iterable[RationalLike] = ()) -> Grid:
    """
    a, b, every breakpoint, spike and override, plus ``extra_points``.

    A sampled function is only known at its samples, so its grid is the
    samples (and the extra points, which must be samples too).
    """
    if p.domain != f.domain:
        raise InvalidModel(
            f"exponent domain {p.domain} differs from function domain {f.domain}", field="domain"
        )
    points = {p.domain.lo, p.domain.hi, *f.grid_points()}
    if not isinstance(f, SampledFunction):
        points.update(p.breakpoints)
        points.update(x for x, _ in p.overrides)
    points.update(p.domain.require(x, "points") for x in extra_points)
    return Grid.of(points)


def refine_variation(
    p: StepExponent,
    f: PointFunction,
    opts: Optional[EngineConfig] = None,
    mode: Mode = "plain",
    scale: float = 1.0,
    extra_points: Iterable[RationalLike] = (),
) -> VariationResult:
    """Refine until the gain of a round is at most tol·|value| or the grid cap is hit."""
    opts = opts or EngineConfig()
    log = logger.bind(mode=mode)
    grid = initial_grid(p, f, extra_points)
    result = max_partition_dp(p, f, grid, mode, scale)

    if isinstance(f, SampledFunction):
        return replace(result, converged=True)
    if len(grid) > opts.max_points:
        log.warning(
            "Initial grid exceeds max_points; evaluated once",
            grid_size=len(grid),
            max_points=opts.max_points,
        )
        return replace(result, converged=False)

    rounds = 0
    increment = 0.0
    converged = result.infinite
    length = p.domain.length
    while not converged:
        eps = length / Fraction(2) ** (rounds + opts.ladder_base)
        candidate = grid.refined(p.domain, eps)
        if len(candidate) > opts.max_points:
            log.info("Grid cap reached", grid_size=len(grid), next_size=len(candidate), rounds=rounds)
            break
        refined = max_partition_dp(p, f, candidate, mode, scale)
        rounds += 1
        if refined.infinite:
            increment = math.inf
            converged = True
        else:
            increment = dequantize(refined.exact_total - result.exact_total)  # type: ignore[operator]
            converged = increment <= opts.tol * abs(refined.lower_bound)
        grid, result = candidate, refined
        log.debug(
            "Refinement round",
            round=rounds,
            grid_size=len(grid),
            value=result.lower_bound,
            increment=increment,
        )

    return replace(result, rounds=rounds, converged=converged, last_increment=increment)


@dataclass(frozen=True)
class VariationTrace:
    """F(x) = V_a^x read from the prefix optima of one DP sweep."""

    points: Tuple[Fraction, ...]
    values: Tuple[float, ...]
    exact: Tuple[Optional[int], ...]
    result: VariationResult


def trace_variation(
    p: StepExponent,
    f: PointFunction,
    xs: Sequence[RationalLike],
    opts: Optional[EngineConfig] = None,
    mode: Mode = "plain",
) -> VariationTrace:
    points = tuple(p.domain.require(rational(x, "xs"), "xs") for x in xs)
    if any(u > v for u, v in zip(points, points[1:])):
        raise InvalidModel("query points must be sorted", field="xs")

    result = refine_variation(p, f, opts, mode, extra_points=points)
    state = sweep(WeightPlan(p, f, result.grid, mode))
    index = {t: i for i, t in enumerate(result.grid.points)}
    exact = tuple(state.best[index[x]] for x in points)
    values = tuple(state.value(index[x]) for x in points)
    return VariationTrace(points, values, exact, result)


def variation_function(
    p: StepExponent,
    f: PointFunction,
    xs: Sequence[RationalLike],
    opts: Optional[EngineConfig] = None,
    mode: Mode = "plain",
) -> List[float]:
    """F(x) = V_a^x(p, f) at each query point; nondecreasing in x."""
    return list(trace_variation(p, f, xs, opts, mode).values)
