# varbv/engine/dp.py
"""
Maximum-weight interval partition over a grid.

best[j] = max_{i<j} best[i] + w(g_i, g_j) with w from ``WeightPlan``. Sums
are exact integers of 2^-1126 quanta; a float pass only narrows the set of
predecessors whose exact sums need comparing.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
import structlog

from varbv.core.errors import GridTooLarge, GridTooSmall
from varbv.core.model import Grid, Partition, PointFunction, StepExponent, TaggedPartition
from varbv.engine.weights import Mode, WeightPlan, dequantize, power_weight, quantize
from varbv.exponent.prefix import mean_exponent

logger = structlog.get_logger()

# relative slack of the float pre-selection; far above the rounding error of
# one float addition of nonnegative terms
_SLACK = 1e-12
BRUTE_FORCE_LIMIT = 22


@dataclass(frozen=True)
class VariationResult:
    """Certified lower bound of a partition supremum and how it was reached."""

    lower_bound: float
    exact_total: Optional[int]
    best_partition: Partition
    grid: Grid
    mode: Mode = "plain"
    rounds: int = 0
    converged: bool = True
    last_increment: float = 0.0

    @property
    def grid_size(self) -> int:
        return len(self.grid)

    @property
    def infinite(self) -> bool:
        return self.exact_total is None

    def diagnostics(self) -> dict:
        return {
            "grid_size": self.grid_size,
            "rounds": self.rounds,
            "converged": self.converged,
        }


@dataclass
class Sweep:
    """Raw DP state: exact prefix optima and backpointers."""

    best: List[Optional[int]]
    back: List[int]

    def value(self, j: int) -> float:
        q = self.best[j]
        return math.inf if q is None else dequantize(q)

    def partition_indices(self, j: Optional[int] = None) -> List[int]:
        j = len(self.best) - 1 if j is None else j
        path = [j]
        while path[-1] != 0:
            path.append(self.back[path[-1]])
        return path[::-1]


def sweep(plan: WeightPlan, scale: float = 1.0) -> Sweep:
    """One left-to-right DP pass. ``None`` in ``best`` means +inf."""
    m = plan.size
    if m < 2:
        raise GridTooSmall(f"grid has {m} point(s); need at least 2", field="grid")

    best: List[Optional[int]] = [0] * m
    back: List[int] = [0] * m
    best_f = np.zeros(m)
    infinite_from: Optional[int] = None

    for j in range(1, m):
        if infinite_from is not None:
            best[j], back[j] = None, infinite_from
            continue
        w = plan.column(j, scale)
        hits = np.flatnonzero(np.isinf(w))
        if hits.size:
            best[j], back[j] = None, int(hits[-1])
            infinite_from = j
            continue

        approx = best_f[:j] + w
        top = float(approx.max())
        candidates = np.flatnonzero(approx >= top - top * _SLACK)
        # best is nondecreasing, so among zero-weight candidates only the last can win
        zero = candidates[w[candidates] == 0.0]
        if zero.size > 1:
            candidates = np.union1d(candidates[w[candidates] != 0.0], zero[-1:])

        chosen, chosen_value = -1, -1
        for i in reversed(candidates.tolist()):
            total = best[i] + quantize(w[i])  # type: ignore[operator]
            if total > chosen_value:
                chosen, chosen_value = i, total
        best[j], back[j] = chosen_value, chosen
        best_f[j] = dequantize(chosen_value)

    return Sweep(best, back)


def _result(plan: WeightPlan, state: Sweep) -> VariationResult:
    points = plan.grid.points
    partition = Partition(tuple(points[i] for i in state.partition_indices()))
    exact = state.best[-1]
    return VariationResult(
        lower_bound=state.value(len(state.best) - 1),
        exact_total=exact,
        best_partition=partition,
        grid=plan.grid,
        mode=plan.mode,
    )


def max_partition_dp(
    p: StepExponent,
    f: PointFunction,
    grid: Grid,
    mode: Mode = "plain",
    scale: float = 1.0,
) -> VariationResult:
    """Supremum of the modular over partitions with every point in ``grid``."""
    plan = WeightPlan(p, f, grid, mode)
    return run_plan(plan, scale)


def run_plan(plan: WeightPlan, scale: float = 1.0) -> VariationResult:
    result = _result(plan, sweep(plan, scale))
    logger.debug(
        "DP sweep finished",
        mode=plan.mode,
        grid_size=plan.size,
        value=result.lower_bound,
        intervals=len(result.best_partition),
    )
    return result


# ── Single-partition sums ─────────────────────────────────────────────────────


def partition_modular(p: StepExponent, f: PointFunction, partition: Partition) -> float:
    """Σ |f(t_k) - f(t_{k-1})|^{p̄([t_{k-1}, t_k])}."""
    terms = []
    for lo, hi in partition.intervals():
        delta = float(f.value_at(hi)) - float(f.value_at(lo))
        terms.append(power_weight(delta, float(mean_exponent(p, (lo, hi)))))
    return math.fsum(terms)


def tagged_partition_modular(p: StepExponent, f: PointFunction, tagged: TaggedPartition) -> float:
    """Σ |f(t_k) - f(t_{k-1})|^{p(x_k)} with p read at the tags."""
    terms = []
    for lo, hi, x in tagged.tagged_intervals():
        delta = float(f.value_at(hi)) - float(f.value_at(lo))
        terms.append(power_weight(delta, float(p.value_at(x))))
    return math.fsum(terms)


# ── Oracle ────────────────────────────────────────────────────────────────────


def brute_force_total(
    p: StepExponent,
    f: PointFunction,
    grid: Grid,
    mode: Mode = "plain",
    scale: float = 1.0,
) -> Optional[int]:
    """Exact maximum over every subset of interior grid points (None for +inf)."""
    m = len(grid)
    if m < 2:
        raise GridTooSmall(f"grid has {m} point(s); need at least 2", field="grid")
    if m > BRUTE_FORCE_LIMIT:
        raise GridTooLarge(f"grid has {m} points; brute force allows {BRUTE_FORCE_LIMIT}", field="grid")

    plan = WeightPlan(p, f, grid, mode)
    columns = [np.zeros(0)] + [plan.column(j, scale) for j in range(1, m)]
    if any(np.isinf(col).any() for col in columns[1:]):
        return None
    q = [[quantize(w) for w in col] for col in columns]

    best = 0
    for mask in itertools.product((False, True), repeat=m - 2):
        path = [0, *(k + 1 for k, keep in enumerate(mask) if keep), m - 1]
        total = sum(q[j][i] for i, j in zip(path, path[1:]))
        best = max(best, total)
    return best


def brute_force_variation(
    p: StepExponent,
    f: PointFunction,
    grid: Grid,
    mode: Mode = "plain",
    scale: float = 1.0,
) -> float:
    total = brute_force_total(p, f, grid, mode, scale)
    return math.inf if total is None else dequantize(total)


def sum_exact(values: Sequence[Optional[int]]) -> Optional[int]:
    """Exact sum of DP totals; None (+inf) is absorbing."""
    if any(v is None for v in values):
        return None
    return sum(values)  # type: ignore[arg-type]
