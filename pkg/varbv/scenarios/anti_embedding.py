# varbv/scenarios/anti_embedding.py
"""
A function with finite WBV modular whose tagged (BV) sums diverge.

p = 4 except p = 2 on A = {1/k}; f = sqrt(x) on A and 0 elsewhere. Harmonic
means never see A, so every plain term is at most |Δ|^4 and the plain modular
stays below π²/3. Tagging the interval [1/k, m_k] at 1/k picks exponent 2 and
contributes exactly 1/k, so the tagged sums follow the harmonic series.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

import structlog

from varbv.config.schema import EngineConfig
from varbv.core.errors import InvalidModel
from varbv.core.model import Interval, Partition, SpikeFunction, StepExponent, TaggedPartition
from varbv.engine.dp import tagged_partition_modular
from varbv.engine.refine import refine_variation
from varbv.engine.weights import power_weight
from varbv.scenarios.report import BoundCheck, ScenarioReport

logger = structlog.get_logger()

UNIT = Interval.unit()
PI2_OVER_3 = math.pi**2 / 3


def harmonic_tail(n: int) -> Fraction:
    """Σ_{k=2}^{n} 1/k."""
    return sum((Fraction(1, k) for k in range(2, n + 1)), Fraction(0))


def crossing_point(k: int) -> Fraction:
    """m_k = (2k - 1)/(2k² - 2k), the midpoint of 1/k and 1/(k-1)."""
    return Fraction(2 * k - 1, 2 * k * k - 2 * k)


def anti_embedding_exponent(n: int) -> StepExponent:
    return StepExponent.constant(UNIT, 4, {Fraction(1, k): 2 for k in range(1, n + 1)})


def anti_embedding_function(n: int) -> SpikeFunction:
    spikes = {Fraction(1, k): 1.0 / math.sqrt(k) for k in range(1, n + 1)}
    return SpikeFunction.from_mapping(UNIT, spikes, anchored=True)


def proof_partition(n: int) -> TaggedPartition:
    """0 < 1/n < m_n < 1/(n-1) < ... < 1/2 < m_2 < 1, tags at the left ends."""
    points: List[Fraction] = [Fraction(0)]
    for k in range(n, 1, -1):
        points += [Fraction(1, k), crossing_point(k)]
    points.append(Fraction(1))
    return TaggedPartition(Partition(tuple(points)), tuple(points[:-1]))


def proof_intervals(n: int) -> List[Tuple[Fraction, Fraction, Fraction]]:
    """The intervals [1/k, m_k] with tag 1/k, k = 2..n."""
    return [(Fraction(1, k), crossing_point(k), Fraction(1, k)) for k in range(2, n + 1)]


def exact_tagged_sum(p: StepExponent, f: SpikeFunction, n: int) -> Fraction:
    """
    Σ over the proof intervals of |f(m_k) - f(1/k)|^{p(1/k)} in rationals.

    Requires f(m_k) = 0 and p(1/k) = 2; then each term is f(1/k)² = 1/k
    because f(x)² = x on A.
    """
    total = Fraction(0)
    for lo, hi, tag in proof_intervals(n):
        if f.value_at(hi) != 0 or p.value_at(tag) != 2:
            raise InvalidModel(f"interval [{lo}, {hi}] does not isolate the spike at {lo}", field="n")
        total += tag
    return total


def _check_n(n: int, minimum: int) -> int:
    if not isinstance(n, int) or n < minimum:
        raise InvalidModel(f"N must be an integer >= {minimum}, got {n!r}", field="n")
    return n


def build_anti_embedding(
    n: int, opts: Optional[EngineConfig] = None
) -> Tuple[StepExponent, SpikeFunction, ScenarioReport]:
    _check_n(n, 3)
    log = logger.bind(scenario="anti-embedding", n=n)
    p = anti_embedding_exponent(n)
    f = anti_embedding_function(n)

    exact = exact_tagged_sum(p, f, n)
    expected = harmonic_tail(n)
    tagged_float = math.fsum(
        power_weight(float(f.value_at(hi)) - float(f.value_at(lo)), float(p.value_at(tag)))
        for lo, hi, tag in proof_intervals(n)
    )
    full_tagged = tagged_partition_modular(p, f, proof_partition(n))

    plain = refine_variation(p, f, opts, mode="plain")
    log.info("Anti-embedding evaluated", tagged=float(exact), plain=plain.lower_bound)

    checks = [
        BoundCheck("tagged_sum_exact", exact, "==", expected, "Σ_{k=2}^N 1/k"),
        BoundCheck(
            "tagged_sum_float",
            abs(tagged_float - float(expected)),
            "<=",
            1e-12 * float(expected),
            "binary64 agreement with the exact sum",
        ),
        BoundCheck("full_partition_dominates", full_tagged, ">=", tagged_float, "sub-collection of terms"),
        BoundCheck("wbv_bound_check", plain.lower_bound, "<", PI2_OVER_3, "1 + 2·Σ 1/k² < π²/3"),
    ]
    report = ScenarioReport(
        scenario="anti-embedding",
        parameters={"n": n},
        values={
            "tagged_sum": float(exact),
            "tagged_sum_exact": exact,
            "tagged_sum_float": tagged_float,
            "full_partition_tagged_sum": full_tagged,
            "plain_dp": plain.lower_bound,
            "pi2_over_3": PI2_OVER_3,
        },
        checks=checks,
        narrative=(
            "Tagged sums over [1/k, m_k] grow like the harmonic series while the "
            "plain modular stays bounded."
        ),
        diagnostics=plain.diagnostics(),
    )
    return p, f, report


@dataclass(frozen=True)
class DivergenceCertificate:
    threshold: Union[Fraction, float]
    n: int
    partial_sum: Fraction
    verified: bool


def divergence_certificate(m: Union[int, float, Fraction]) -> DivergenceCertificate:
    """Smallest N with Σ_{k=2}^N 1/k > M, re-checked on the construction."""
    if isinstance(m, bool) or not isinstance(m, (int, float, Fraction)) or not m > 0 or m != m:
        raise InvalidModel(f"M must be positive, got {m!r}", field="m")
    if isinstance(m, float) and math.isinf(m):
        raise InvalidModel("M must be finite", field="m")
    total = Fraction(0)
    k = 1
    while not total > m:
        k += 1
        total += Fraction(1, k)

    verified = exact_tagged_sum(anti_embedding_exponent(k), anti_embedding_function(k), k) > m
    logger.info("Divergence certificate", m=float(m), n=k, verified=verified)
    return DivergenceCertificate(m, k, total, verified)
