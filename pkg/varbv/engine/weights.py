# varbv/engine/weights.py
"""
Pairwise interval weights |f(v) - f(u)|^e(u, v) over a grid.

The exponent e is the harmonic mean p̄([u, v]) in plain mode and the
attainable tag exponent (min when the increment is below 1, max otherwise)
in tagged mode. Weights are produced one DP column at a time so memory stays
linear in the grid size.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Literal, Tuple

import numpy as np
import structlog

from varbv.core.errors import InvalidModel
from varbv.core.model import Grid, PointFunction, StepExponent

logger = structlog.get_logger()

Mode = Literal["plain", "tagged"]
MODES: Tuple[str, ...] = ("plain", "tagged")

# e·ln|Δ| below this underflows binary64; such weights are exactly 0.
UNDERFLOW_LOG = -745.0

# Every finite double is an integer multiple of 2^-1074; sums are kept as
# integer counts of 2^-1126 so they associate exactly.
QUANTUM_BITS = 1126
_ONE = 1 << QUANTUM_BITS


def quantize(w: float) -> int:
    num, den = float(w).as_integer_ratio()
    return num * (_ONE // den)


def dequantize(q: int) -> float:
    try:
        return q / _ONE
    except OverflowError:
        return math.inf


def power_weight(delta: float, exponent: float) -> float:
    """|delta|^exponent under the underflow policy."""
    a = abs(delta)
    if a == 0.0:
        return 0.0
    if exponent * math.log(a) < UNDERFLOW_LOG:
        return 0.0
    try:
        return a**exponent
    except OverflowError:
        return math.inf


def _power_weights(absd: np.ndarray, exponents: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", over="ignore", under="ignore", invalid="ignore"):
        logs = exponents * np.log(absd)
        w = np.power(absd, exponents)
    return np.where((absd == 0.0) | (logs < UNDERFLOW_LOG), 0.0, w)


@dataclass(frozen=True)
class PieceTables:
    """Exact span data between exponent breakpoints, rounded once to float."""

    values: np.ndarray
    span_len: np.ndarray
    span_int: np.ndarray
    range_min: np.ndarray
    range_max: np.ndarray


@lru_cache(maxsize=64)
def piece_tables(p: StepExponent) -> PieceTables:
    bps = p.breakpoints
    n = p.piece_count
    cum = [Fraction(0)]
    for k, v in enumerate(p.values):
        cum.append(cum[-1] + (bps[k + 1] - bps[k]) / v)

    span_len = np.zeros((n + 1, n + 1))
    span_int = np.zeros((n + 1, n + 1))
    for s in range(n + 1):
        for e in range(s + 1, n + 1):
            span_len[s, e] = float(bps[e] - bps[s])
            span_int[s, e] = float(cum[e] - cum[s])

    vals = np.array([float(v) for v in p.values])
    range_min = np.zeros((n, n))
    range_max = np.zeros((n, n))
    for s in range(n):
        range_min[s, s:] = np.minimum.accumulate(vals[s:])
        range_max[s, s:] = np.maximum.accumulate(vals[s:])
    return PieceTables(vals, span_len, span_int, range_min, range_max)


class WeightPlan:
    """Everything about (p, f, grid) that does not depend on the scale λ."""

    def __init__(self, p: StepExponent, f: PointFunction, grid: Grid, mode: Mode = "plain"):
        if mode not in MODES:
            raise InvalidModel(f"unknown mode {mode!r}", field="mode")
        if p.domain != f.domain:
            raise InvalidModel(
                f"exponent domain {p.domain} differs from function domain {f.domain}",
                field="domain",
            )
        if grid.points:
            p.domain.require(grid.points[0], "grid")
            p.domain.require(grid.points[-1], "grid")

        self.p = p
        self.f = f
        self.grid = grid
        self.mode = mode
        self.size = len(grid)
        self.tables = piece_tables(p.without_overrides())

        points = grid.points
        self.f_values = np.array([float(f.value_at(t)) for t in points])

        bps, vals = p.breakpoints, p.values
        ku = [p.piece_index(t) for t in points]
        kv = [p.piece_left_of(t) for t in points]
        self.ku = np.array(ku, dtype=np.int64)
        self.kv = np.array(kv, dtype=np.int64)
        self.r_len = np.array([float(bps[k + 1] - t) for k, t in zip(ku, points)])
        self.r_int = np.array([float((bps[k + 1] - t) / vals[k]) for k, t in zip(ku, points)])
        self.l_len = np.array([float(t - bps[k]) for k, t in zip(kv, points)])
        self.l_int = np.array([float((t - bps[k]) / vals[k]) for k, t in zip(kv, points)])

        # override z contributes to [g_i, g_j] iff g_i <= z <= g_j
        self._ovr_last_left: List[int] = []
        self._ovr_first_right: List[int] = []
        self._ovr_values: List[float] = []
        if mode == "tagged":
            for z, v in p.overrides:
                self._ovr_last_left.append(bisect.bisect_right(points, z) - 1)
                self._ovr_first_right.append(bisect.bisect_left(points, z))
                self._ovr_values.append(float(v))

    # -- exponents -------------------------------------------------------------

    def mean_exponents(self, j: int) -> np.ndarray:
        """p̄([g_i, g_j]) for every i < j."""
        t = self.tables
        ku = self.ku[:j]
        kv = int(self.kv[j])
        same = ku == kv
        length = self.r_len[:j] + t.span_len[ku + 1, kv] + self.l_len[j]
        integral = self.r_int[:j] + t.span_int[ku + 1, kv] + self.l_int[j]
        with np.errstate(divide="ignore", invalid="ignore"):
            pbar = length / integral
        pbar = np.clip(pbar, t.range_min[ku, kv], t.range_max[ku, kv])
        return np.where(same, t.values[np.minimum(ku, kv)], pbar)

    def tag_bounds(self, j: int) -> Tuple[np.ndarray, np.ndarray]:
        """Smallest and largest tag-attainable exponent on [g_i, g_j], i < j."""
        t = self.tables
        ku = self.ku[:j]
        kv = int(self.kv[j])
        lo = t.range_min[ku, kv].copy()
        hi = t.range_max[ku, kv].copy()
        if self._ovr_values:
            ovr_lo = np.full(j, np.inf)
            ovr_hi = np.full(j, -np.inf)
            for last_left, first_right, v in zip(
                self._ovr_last_left, self._ovr_first_right, self._ovr_values
            ):
                if first_right > j or last_left < 0:
                    continue
                idx = min(last_left, j - 1)
                ovr_lo[idx] = min(ovr_lo[idx], v)
                ovr_hi[idx] = max(ovr_hi[idx], v)
            # suffix extrema: every i <= idx sees the override
            ovr_lo = np.minimum.accumulate(ovr_lo[::-1])[::-1]
            ovr_hi = np.maximum.accumulate(ovr_hi[::-1])[::-1]
            lo = np.minimum(lo, ovr_lo)
            hi = np.maximum(hi, ovr_hi)
        return lo, hi

    # -- weights ---------------------------------------------------------------

    @property
    def flat(self) -> bool:
        """True when every grid increment of f is exactly zero."""
        return bool(np.all(self.f_values == self.f_values[0])) if self.size else True

    def increments(self, j: int, scale: float = 1.0) -> np.ndarray:
        absd = np.abs(self.f_values[j] - self.f_values[:j])
        if scale != 1.0:
            absd = absd / scale
        return absd

    def column(self, j: int, scale: float = 1.0) -> np.ndarray:
        """Weights w(g_i, g_j) for i < j at scale λ = ``scale``."""
        absd = self.increments(j, scale)
        if self.mode == "plain":
            exponents = self.mean_exponents(j)
        else:
            lo, hi = self.tag_bounds(j)
            exponents = np.where(absd < 1.0, lo, hi)
        return _power_weights(absd, exponents)


def single_interval_bound(plan: WeightPlan, scale: float = 1.0) -> float:
    """Largest single-interval weight on the grid: a lower bound of the modular."""
    best = 0.0
    for j in range(1, plan.size):
        col = plan.column(j, scale)
        if col.size:
            best = max(best, float(col.max()))
    return best

