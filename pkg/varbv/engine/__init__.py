from .weights import Mode, WeightPlan, power_weight, single_interval_bound
from .dp import (
    Sweep,
    VariationResult,
    brute_force_total,
    brute_force_variation,
    max_partition_dp,
    partition_modular,
    run_plan,
    sum_exact,
    sweep,
    tagged_partition_modular,
)
from .refine import VariationTrace, initial_grid, refine_variation, trace_variation, variation_function

__all__ = [
    "Mode",
    "WeightPlan",
    "power_weight",
    "single_interval_bound",
    "Sweep",
    "VariationResult",
    "brute_force_total",
    "brute_force_variation",
    "max_partition_dp",
    "partition_modular",
    "run_plan",
    "sum_exact",
    "sweep",
    "tagged_partition_modular",
    "VariationTrace",
    "initial_grid",
    "refine_variation",
    "trace_variation",
    "variation_function",
]
