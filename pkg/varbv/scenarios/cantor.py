# varbv/scenarios/cantor.py
"""
f = ½ on the Cantor set: discontinuous on a set of continuum power, yet the
modular stays below 2 when the exponent is 2n on the stage-n contiguous
intervals.

The Cantor set is truncated at ``depth``. Its remainder still has positive
measure, so the remainder pieces carry 2(depth + 1), the smallest exponent of
the contiguous intervals hidden inside them.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Tuple

import structlog

from varbv.config.schema import EngineConfig
from varbv.core.errors import InvalidModel
from varbv.core.model import StepExponent, StepFunction
from varbv.engine.refine import refine_variation
from varbv.scenarios.report import BoundCheck, ScenarioReport

logger = structlog.get_logger()

HALF = Fraction(1, 2)


def contiguous_intervals(depth: int) -> List[Tuple[int, Fraction, Fraction]]:
    """(stage, lo, hi) of every open middle third removed up to ``depth``."""
    removed: List[Tuple[int, Fraction, Fraction]] = []
    pieces = [(Fraction(0), Fraction(1))]
    for stage in range(1, depth + 1):
        kept = []
        for lo, hi in pieces:
            third = (hi - lo) / 3
            removed.append((stage, lo + third, hi - third))
            kept += [(lo, lo + third), (hi - third, hi)]
        pieces = kept
    return sorted(removed, key=lambda item: item[1])


def remainder_pieces(depth: int) -> List[Tuple[Fraction, Fraction]]:
    """The 2^depth closed intervals left after ``depth`` stages."""
    edges = [Fraction(0)]
    for _, lo, hi in contiguous_intervals(depth):
        edges += [lo, hi]
    edges.append(Fraction(1))
    return list(zip(edges[::2], edges[1::2]))


def cantor_exponent(depth: int) -> StepExponent:
    breakpoints = [Fraction(0)]
    values: List[int] = []
    for stage, lo, hi in contiguous_intervals(depth):
        breakpoints += [lo, hi]
        values += [2 * (depth + 1), 2 * stage]
    breakpoints.append(Fraction(1))
    values.append(2 * (depth + 1))
    return StepExponent.from_pieces(breakpoints, values)


def cantor_function(depth: int) -> StepFunction:
    """½ on the closed remainder pieces, 0 on contiguous intervals, f(0) = 0."""
    breakpoints = [Fraction(0)]
    pieces: List[Fraction] = []
    for _, lo, hi in contiguous_intervals(depth):
        breakpoints += [lo, hi]
        pieces += [HALF, Fraction(0)]
    breakpoints.append(Fraction(1))
    pieces.append(HALF)
    point_values = [Fraction(0)] + [HALF] * (len(breakpoints) - 1)
    return StepFunction.from_pieces(breakpoints, pieces, point_values, anchored=True)


def build_cantor(
    depth: int, opts: Optional[EngineConfig] = None
) -> Tuple[StepExponent, StepFunction, ScenarioReport]:
    if not isinstance(depth, int) or depth < 1:
        raise InvalidModel(f"depth must be an integer >= 1, got {depth!r}", field="depth")
    p = cantor_exponent(depth)
    f = cantor_function(depth)
    result = refine_variation(p, f, opts)
    logger.info("Cantor construction evaluated", depth=depth, value=result.lower_bound)

    report = ScenarioReport(
        scenario="cantor",
        parameters={"depth": depth},
        values={
            "plain_dp": result.lower_bound,
            "contiguous_intervals": len(contiguous_intervals(depth)),
            "remainder_pieces": 2**depth,
        },
        checks=[BoundCheck("modular_bound", result.lower_bound, "<=", 2, "2·Σ 1/2^n = 2")],
        narrative=(
            "Each contiguous interval of stage n meets at most two partition intervals, "
            "each weighing at most (½)^(2n)."
        ),
        diagnostics=result.diagnostics(),
    )
    return p, f, report
