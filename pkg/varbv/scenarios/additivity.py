# varbv/scenarios/additivity.py
"""
Superadditivity of the modular in the interval, and its failing converse.

V_a^c + V_c^b <= V_a^b always: the union of two partitions is a partition of
[a, b]. The reverse inequality up to a constant C breaks at any x where the
one-sided maximal exponent exceeds the two-sided one. A jump of height
1/(K·C) just after x is then measured with exponent close to p̄_-^x(a;b) on
[a, b] but only with exponent p̄_-^x(x;b) on [x, b].
"""
from __future__ import annotations

import math
import sys
from fractions import Fraction
from typing import Optional, Tuple, Union

import structlog

from varbv.config.schema import EngineConfig
from varbv.core.errors import ConditionNotSatisfied, DegenerateGap, InvalidModel
from varbv.core.model import PointFunction, RationalLike, StepExponent, StepFunction, rational
from varbv.engine.dp import max_partition_dp, sum_exact
from varbv.engine.refine import refine_variation
from varbv.engine.weights import dequantize
from varbv.exponent.maximal import additivity_condition
from varbv.scenarios.report import BoundCheck, ScenarioReport

logger = structlog.get_logger()

Number = Union[int, float, Fraction]

# log(K·C) above this puts the jump height 1/(K·C) below sys.float_info.min
_MAX_LOG_KC = -math.log(sys.float_info.min)


def _check_constant(c: Number) -> float:
    if isinstance(c, bool) or not isinstance(c, (int, float, Fraction)):
        raise InvalidModel(f"C must be a number, got {c!r}", field="c")
    value = float(c)
    if not (math.isfinite(value) and value >= 1.0):
        raise InvalidModel(f"C must be a finite number >= 1, got {c!r}", field="c")
    return value


def jump_multiplier(gap: Fraction, c: float) -> float:
    """
    K = 2·max(1, C^((1 - A)/A)), so that K·C >= 1 and K exceeds the threshold.

    Raises DegenerateGap when the jump height 1/(K·C) is below the smallest
    normal double; the size check runs in log space.
    """
    a = float(gap)
    if a == 0.0:
        raise DegenerateGap(f"A = {gap} rounds to 0 in binary64", field="x")
    growth = (1.0 - a) / a
    log_kc = math.log(2.0) + max(0.0, growth * math.log(c)) + math.log(c)
    if log_kc > _MAX_LOG_KC:
        raise DegenerateGap(
            f"A = {gap} with C = {c} needs a jump of height exp(-{log_kc:.6g})",
            field="x",
        )
    return 2.0 * max(1.0, c**growth)


def build_additivity_failure(
    p: StepExponent,
    x: RationalLike,
    c: Number = 2,
    opts: Optional[EngineConfig] = None,
) -> Tuple[StepFunction, ScenarioReport]:
    """
    f with V_a^b(p, f) > C·(V_a^x(p, f) + V_x^b(p, f)).

    When the larger one-sided exponent sits on the left the construction runs
    on the reflected exponent; ``parameters["reflected"]`` records this and
    the returned f lives on the reflected picture.
    """
    point = rational(x, "x")
    constant = _check_constant(c)
    condition = additivity_condition(p, point)
    if not condition.holds:
        raise ConditionNotSatisfied(
            f"p̄_-^x over [a, b] = {condition.p_full} equals the larger one-sided value "
            f"{max(condition.p_left, condition.p_right)}",
            field="x",
        )

    reflected = condition.side == "left"
    if reflected:
        p = p.reflect()
        point = p.domain.mirror(point)
        condition = additivity_condition(p, point)
    gap = condition.p_right - condition.p_full
    if gap <= 0:
        raise DegenerateGap(f"A = {gap} after reflection", field="x")

    k = jump_multiplier(gap, constant)
    height = 1.0 / (k * constant)
    a, b = p.domain.lo, p.domain.hi
    f = StepFunction.jump(p.domain, point, height)

    log = logger.bind(scenario="additivity-failure", x=str(point), c=constant)
    whole = refine_variation(p, f, opts)
    left = refine_variation(p.restrict(a, point), f.restrict(a, point), opts)
    right = refine_variation(p.restrict(point, b), f.restrict(point, b), opts)
    split = left.lower_bound + right.lower_bound
    margin = whole.lower_bound - constant * split
    log.info("Additivity failure evaluated", gap=str(gap), k=k, margin=margin)

    report = ScenarioReport(
        scenario="additivity-failure",
        parameters={"x": point, "c": c, "reflected": reflected},
        values={
            "gap": gap,
            "p_full": condition.p_full,
            "p_right": condition.p_right,
            "k": k,
            "height": height,
            "v_ab": whole.lower_bound,
            "v_ax": left.lower_bound,
            "v_xb": right.lower_bound,
            "margin": margin,
        },
        checks=[
            BoundCheck("additivity_fails", whole.lower_bound, ">", constant * split, "V_a^b > C(V_a^x + V_x^b)"),
            BoundCheck("margin_positive", margin, ">", 0.0, "strict inequality"),
        ],
        narrative=(
            "The jump after x is seen through intervals straddling x, whose exponent "
            "approaches p̄_-^x(a;b), while [x, b] alone only offers p̄_-^x(x;b)."
        ),
        diagnostics=whole.diagnostics(),
    )
    return f, report


def verify_superadditivity(
    p: StepExponent,
    f: PointFunction,
    c: RationalLike,
    opts: Optional[EngineConfig] = None,
) -> ScenarioReport:
    """V_a^c + V_c^b <= V_a^b on one grid that contains c, compared in exact quanta."""
    point = rational(c, "c")
    a, b = p.domain.lo, p.domain.hi
    if not a < point < b:
        raise InvalidModel(f"c={point} must lie strictly inside {p.domain}", field="c")

    whole = refine_variation(p, f, opts, extra_points=[point])
    grid = whole.grid
    left = max_partition_dp(p.restrict(a, point), f.restrict(a, point), grid.restrict(a, point))
    right = max_partition_dp(p.restrict(point, b), f.restrict(point, b), grid.restrict(point, b))

    split = sum_exact([left.exact_total, right.exact_total])
    if whole.infinite:
        slack_sign = 1 if split is not None else 0
    elif split is None:
        slack_sign = -1
    else:
        diff = whole.exact_total - split  # type: ignore[operator]
        slack_sign = (diff > 0) - (diff < 0)
    split_value = math.inf if split is None else dequantize(split)

    logger.debug(
        "Superadditivity checked",
        c=str(point),
        left=left.lower_bound,
        right=right.lower_bound,
        whole=whole.lower_bound,
    )
    return ScenarioReport(
        scenario="superadditivity",
        parameters={"c": point},
        values={
            "v_ac": left.lower_bound,
            "v_cb": right.lower_bound,
            "v_ab": whole.lower_bound,
            "split_sum": split_value,
        },
        checks=[
            BoundCheck("superadditivity", split_value, "<=", whole.lower_bound, "V_a^c + V_c^b <= V_a^b"),
            BoundCheck("exact_slack_sign", slack_sign, ">=", 0, "exact quanta comparison"),
        ],
        narrative="Joining a partition of [a, c] and one of [c, b] gives a partition of [a, b].",
        diagnostics=whole.diagnostics(),
    )
