# varbv/scenarios/inclusion.py
"""
BV^{p(·)} ⊂ WBV_{p(·)} at grid level, and the embedding of WBV spaces for
ordered exponents.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np
import structlog

from varbv.config.schema import EngineConfig, NormConfig
from varbv.core.errors import InvalidModel
from varbv.core.model import Grid, Interval, PointFunction, SpikeFunction, StepExponent, StepFunction
from varbv.engine.dp import VariationResult, max_partition_dp
from varbv.engine.refine import initial_grid, refine_variation
from varbv.norm.luxemburg import embedding_compare, modular_at_scale
from varbv.scenarios.anti_embedding import anti_embedding_exponent, anti_embedding_function
from varbv.scenarios.report import BoundCheck, ScenarioReport

logger = structlog.get_logger()

_EXPONENT_CHOICES = (Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3), Fraction(4))
_DENOMINATOR = 12


def _dominates(upper: VariationResult, lower: VariationResult) -> bool:
    if upper.infinite:
        return True
    if lower.infinite:
        return False
    return upper.exact_total >= lower.exact_total  # type: ignore[operator]


def random_step_pair(rng: np.random.Generator) -> Tuple[StepExponent, StepFunction]:
    """A step exponent with overrides and a step function on [0, 1], both on twelfths."""
    inner = sorted(rng.choice(np.arange(1, _DENOMINATOR), size=int(rng.integers(0, 4)), replace=False))
    bps = [Fraction(0), *(Fraction(int(k), _DENOMINATOR) for k in inner), Fraction(1)]
    values = [_EXPONENT_CHOICES[int(i)] for i in rng.integers(0, len(_EXPONENT_CHOICES), len(bps) - 1)]
    spots = rng.choice(np.arange(0, _DENOMINATOR + 1), size=int(rng.integers(1, 4)), replace=False)
    overrides = {
        Fraction(int(k), _DENOMINATOR): _EXPONENT_CHOICES[int(rng.integers(0, len(_EXPONENT_CHOICES)))]
        for k in spots
    }
    p = StepExponent.from_pieces(bps, values, overrides)

    f_inner = sorted(rng.choice(np.arange(1, _DENOMINATOR), size=int(rng.integers(1, 4)), replace=False))
    f_bps = [Fraction(0), *(Fraction(int(k), _DENOMINATOR) for k in f_inner), Fraction(1)]
    pieces = [Fraction(int(v), 4) for v in rng.integers(-6, 7, len(f_bps) - 1)]
    f = StepFunction.from_pieces(f_bps, pieces)
    return p, f


def _compare_modes(p: StepExponent, f: PointFunction, grid: Grid) -> Tuple[VariationResult, VariationResult]:
    return max_partition_dp(p, f, grid, "plain"), max_partition_dp(p, f, grid, "tagged")


def build_bv_inclusion(
    n: int = 20,
    samples: int = 20,
    seed: int = 0,
    opts: Optional[EngineConfig] = None,
) -> ScenarioReport:
    """
    Tagged DP >= plain DP on shared grids; plain ignores overrides, tagged does not.

    Runs on the anti-embedding construction with ``n`` spikes and on
    ``samples`` random step pairs drawn from ``seed``.
    """
    if not isinstance(n, int) or n < 3:
        raise InvalidModel(f"N must be an integer >= 3, got {n!r}", field="n")
    if not isinstance(samples, int) or samples < 0:
        raise InvalidModel(f"samples must be a nonnegative integer, got {samples!r}", field="samples")
    log = logger.bind(scenario="bv-inclusion", n=n, samples=samples, seed=seed)

    p = anti_embedding_exponent(n)
    f = anti_embedding_function(n)
    grid = refine_variation(p, f, opts).grid
    plain, tagged = _compare_modes(p, f, grid)
    stripped_plain, stripped_tagged = _compare_modes(p.without_overrides(), f, grid)

    rng = np.random.default_rng(seed)
    violations = 0
    for _ in range(samples):
        rp, rf = random_step_pair(rng)
        rgrid = initial_grid(rp, rf).refined(rp.domain, Fraction(1, 64))
        r_plain, r_tagged = _compare_modes(rp, rf, rgrid)
        if not _dominates(r_tagged, r_plain):
            violations += 1
    log.info("Inclusion evaluated", plain=plain.lower_bound, tagged=tagged.lower_bound, violations=violations)

    plain_stable = plain.exact_total == stripped_plain.exact_total
    return ScenarioReport(
        scenario="bv-inclusion",
        parameters={"n": n, "samples": samples, "seed": seed},
        values={
            "plain_dp": plain.lower_bound,
            "tagged_dp": tagged.lower_bound,
            "plain_without_overrides": stripped_plain.lower_bound,
            "tagged_without_overrides": stripped_tagged.lower_bound,
            "random_violations": violations,
        },
        checks=[
            BoundCheck("tagged_dominates_plain", int(_dominates(tagged, plain)), "==", 1, "BV^{p(·)} ⊂ WBV_{p(·)}"),
            BoundCheck("plain_ignores_overrides", int(plain_stable), "==", 1, "p̄ sees no null set"),
            BoundCheck(
                "tagged_sees_overrides",
                tagged.lower_bound,
                ">",
                stripped_tagged.lower_bound,
                "tags land on override points",
            ),
            BoundCheck("random_family_dominates", violations, "==", 0, "random step data"),
        ],
        narrative=(
            "Every tag-attainable exponent brackets p̄, so each tagged weight is at least "
            "the plain one; changing p on finitely many points moves only the tagged sums."
        ),
        diagnostics={"grid_size": len(grid), "rounds": grid.generation, "converged": True},
    )


def embedding_pair() -> Tuple[StepExponent, StepExponent, SpikeFunction]:
    """p1 ≡ 2 <= p2 = 2 | 4 on [0, 1], two spikes of height ½."""
    unit = Interval.unit()
    p1 = StepExponent.constant(unit, 2)
    p2 = StepExponent.from_pieces([0, Fraction(1, 2), 1], [2, 4])
    f = SpikeFunction.from_mapping(unit, {Fraction(1, 4): Fraction(1, 2), Fraction(3, 4): Fraction(1, 2)}, anchored=True)
    return p1, p2, f


def build_embedding(
    tol: Optional[float] = None,
    opts: Optional[EngineConfig] = None,
    norm: Optional[NormConfig] = None,
) -> ScenarioReport:
    p1, p2, f = embedding_pair()
    report = embedding_compare(p1, p2, f, tol, opts, norm)
    small, large = report.norm_small, report.norm_large
    # both modulars at λ = ‖f‖_{p1}, on the shared grid
    lam = small.norm
    m_small = modular_at_scale(p1, f, lam, small.grid)
    m_large = modular_at_scale(p2, f, lam, small.grid)
    logger.info("Embedding scenario evaluated", norm_small=small.norm, norm_large=large.norm)

    checks: List[BoundCheck] = [
        BoundCheck("norm_ordering", large.norm, "<=", small.norm + report.tol, "‖f‖_{p2} <= ‖f‖_{p1}"),
        BoundCheck("modular_ordering", m_large, "<=", m_small, "V(p2, f/λ) <= V(p1, f/λ) when |Δ|/λ <= 1"),
    ]
    return ScenarioReport(
        scenario="embedding",
        parameters={"tol": report.tol},
        values={
            "norm_p1": small.norm,
            "norm_p2": large.norm,
            "modular_p1": m_small,
            "modular_p2": m_large,
        },
        checks=checks,
        narrative="Raising the exponent shrinks every increment below 1, so the larger exponent gives the smaller norm.",
        diagnostics={
            "grid_size": small.grid_size,
            "converged": small.converged and large.converged,
            "evaluations": small.evaluations + large.evaluations,
        },
    )
