# varbv/norm/luxemburg.py
"""
Luxemburg norm inf{λ > 0 : V(p, f/λ) <= 1} by bracketing and bisection.

The grid is fixed once, from the refinement of f at λ = 1; every evaluation reuses
the same weight plan and only recomputes powers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import structlog

from varbv.config.schema import EngineConfig, NormConfig
from varbv.core.errors import InvalidModel, NoFiniteBracket, NonpositiveScale, NotPointwiseOrdered
from varbv.core.model import Grid, PointFunction, StepExponent
from varbv.engine.dp import run_plan
from varbv.engine.refine import refine_variation
from varbv.engine.weights import Mode, WeightPlan

logger = structlog.get_logger()


@dataclass(frozen=True)
class NormResult:
    norm: float
    bracket: Tuple[float, float]
    modular_at_norm: float
    evaluations: int
    grid: Grid
    mode: Mode = "plain"
    converged: bool = True

    @property
    def grid_size(self) -> int:
        return len(self.grid)


@dataclass(frozen=True)
class EmbeddingReport:
    norm_small: NormResult
    norm_large: NormResult
    tol: float

    @property
    def holds(self) -> bool:
        return self.norm_large.norm <= self.norm_small.norm + self.tol


def _check_scale(scale: float) -> float:
    if not (isinstance(scale, (int, float)) and scale > 0 and math.isfinite(scale)):
        raise NonpositiveScale(f"scale must be a positive finite number, got {scale!r}", field="scale")
    return float(scale)


def modular_at_scale(
    p: StepExponent,
    f: PointFunction,
    scale: float,
    grid: Grid,
    mode: Mode = "plain",
) -> float:
    """V(p, f/λ) on ``grid``; nonincreasing in λ."""
    lam = _check_scale(scale)
    return run_plan(WeightPlan(p, f, grid, mode), lam).lower_bound


def luxemburg_norm(
    p: StepExponent,
    f: PointFunction,
    tol: Optional[float] = None,
    mode: Mode = "plain",
    grid: Optional[Grid] = None,
    engine: Optional[EngineConfig] = None,
    config: Optional[NormConfig] = None,
) -> NormResult:
    config = config or NormConfig()
    tol = config.tol if tol is None else tol
    if not tol > 0:
        raise InvalidModel(f"tol must be positive, got {tol!r}", field="tol")

    converged = True
    if grid is None:
        refined = refine_variation(p, f, engine, mode)
        grid, converged = refined.grid, refined.converged
    plan = WeightPlan(p, f, grid, mode)
    log = logger.bind(mode=mode, grid_size=len(grid))

    evaluations = 0

    def modular(lam: float) -> float:
        nonlocal evaluations
        evaluations += 1
        return run_plan(plan, lam).lower_bound

    if plan.flat:
        return NormResult(0.0, (0.0, 0.0), 0.0, evaluations, grid, mode, converged)

    # an underflowed modular at λ = 1 still brackets from below by halving
    at_one = modular(1.0)

    cap = 2.0**config.scale_cap_log2
    if at_one > 1.0:
        lo, hi = 1.0, 2.0
        at_hi = modular(hi)
        while at_hi > 1.0:
            lo, hi = hi, hi * 2.0
            if hi > cap:
                raise NoFiniteBracket(f"modular stays above 1 up to λ = 2^{config.scale_cap_log2}")
            at_hi = modular(hi)
    else:
        lo, hi, at_hi = 0.5, 1.0, at_one
        at_lo = modular(lo)
        while at_lo <= 1.0:
            hi, at_hi = lo, at_lo
            lo = lo / 2.0
            if lo < 1.0 / cap:
                raise NoFiniteBracket(f"modular stays below 1 down to λ = 2^-{config.scale_cap_log2}")
            at_lo = modular(lo)
    log.debug("Bracket found", lo=lo, hi=hi, evaluations=evaluations)

    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        value = modular(mid)
        if value <= 1.0:
            hi, at_hi = mid, value
        else:
            lo = mid

    log.debug("Norm bisection finished", norm=hi, width=hi - lo, evaluations=evaluations)
    return NormResult(hi, (lo, hi), at_hi, evaluations, grid, mode, converged)


def embedding_compare(
    p_small: StepExponent,
    p_large: StepExponent,
    f: PointFunction,
    tol: Optional[float] = None,
    engine: Optional[EngineConfig] = None,
    config: Optional[NormConfig] = None,
) -> EmbeddingReport:
    """
    Both Luxemburg norms of f on one shared grid; expects p_small <= p_large.

    The exponents are rewritten over their common breakpoints first so both
    harmonic means are evaluated the same way.
    """
    if p_small.domain != p_large.domain:
        raise InvalidModel("exponents must share a domain", field="domain")
    common = set(p_small.breakpoints) | set(p_large.breakpoints)
    small = p_small.on_breakpoints(common)
    large = p_large.on_breakpoints(common)
    for k, (u, v) in enumerate(zip(small.values, large.values)):
        if u > v:
            lo, hi = small.piece_span(k)
            raise NotPointwiseOrdered(
                f"p1 = {u} > p2 = {v} on [{lo}, {hi}]", field=f"values.{k}"
            )

    config = config or NormConfig()
    tol = config.tol if tol is None else tol
    grid = refine_variation(small, f, engine).grid.union(refine_variation(large, f, engine).grid.points)
    norm_small = luxemburg_norm(small, f, tol, grid=grid, config=config)
    norm_large = luxemburg_norm(large, f, tol, grid=grid, config=config)
    report = EmbeddingReport(norm_small, norm_large, tol)
    logger.info(
        "Embedding compared",
        norm_small=norm_small.norm,
        norm_large=norm_large.norm,
        holds=report.holds,
    )
    return report
