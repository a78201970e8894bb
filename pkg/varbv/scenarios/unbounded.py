# varbv/scenarios/unbounded.py
"""
Unbounded exponent, spikes of height 1/2 at 1/n: the modular stays below 2
although f(0+) does not exist.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional, Tuple

import structlog

from varbv.config.schema import EngineConfig
from varbv.core.errors import InvalidModel
from varbv.core.model import Interval, SpikeFunction, StepExponent
from varbv.engine.refine import refine_variation
from varbv.scenarios.report import BoundCheck, ScenarioReport

logger = structlog.get_logger()


def unbounded_exponent(n: int) -> StepExponent:
    """1 + k on the piece between 1/(k+1) and 1/k; 1 + n on [0, 1/n]."""
    breakpoints = [Fraction(0)] + [Fraction(1, k) for k in range(n, 0, -1)]
    values = [1 + n] + [1 + k for k in range(n - 1, 0, -1)]
    return StepExponent.from_pieces(breakpoints, values)


def unbounded_function(n: int) -> SpikeFunction:
    return SpikeFunction.from_mapping(
        Interval.unit(), {Fraction(1, k): Fraction(1, 2) for k in range(1, n + 1)}, anchored=True
    )


def build_unbounded_jump(
    n: int, opts: Optional[EngineConfig] = None
) -> Tuple[StepExponent, SpikeFunction, ScenarioReport]:
    if not isinstance(n, int) or n < 2:
        raise InvalidModel(f"N must be an integer >= 2, got {n!r}", field="n")
    p = unbounded_exponent(n)
    f = unbounded_function(n)
    result = refine_variation(p, f, opts)
    logger.info("Unbounded jump evaluated", n=n, value=result.lower_bound, grid_size=result.grid_size)

    report = ScenarioReport(
        scenario="unbounded-jump",
        parameters={"n": n},
        values={"plain_dp": result.lower_bound, "max_exponent": 1 + n},
        checks=[BoundCheck("modular_bound", result.lower_bound, "<=", 2, "2·Σ 1/2^n = 2")],
        narrative="Every spike is crossed at most twice, each time with weight (1/2)^p̄.",
        diagnostics=result.diagnostics(),
    )
    return p, f, report
