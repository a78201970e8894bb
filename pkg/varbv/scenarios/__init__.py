from .report import BoundCheck, ScenarioReport
from .anti_embedding import (
    DivergenceCertificate,
    anti_embedding_exponent,
    anti_embedding_function,
    build_anti_embedding,
    divergence_certificate,
    harmonic_tail,
    proof_partition,
)
from .unbounded import build_unbounded_jump, unbounded_exponent, unbounded_function
from .cantor import build_cantor, cantor_exponent, cantor_function, contiguous_intervals, remainder_pieces
from .additivity import build_additivity_failure, jump_multiplier, verify_superadditivity
from .inclusion import build_bv_inclusion, build_embedding, embedding_pair, random_step_pair
from .base import BaseScenario
from .registry import SCENARIOS, get_scenario, scenario_ids, split_exponent

__all__ = [
    "BoundCheck",
    "ScenarioReport",
    "DivergenceCertificate",
    "anti_embedding_exponent",
    "anti_embedding_function",
    "build_anti_embedding",
    "divergence_certificate",
    "harmonic_tail",
    "proof_partition",
    "build_unbounded_jump",
    "unbounded_exponent",
    "unbounded_function",
    "build_cantor",
    "cantor_exponent",
    "cantor_function",
    "contiguous_intervals",
    "remainder_pieces",
    "build_additivity_failure",
    "jump_multiplier",
    "verify_superadditivity",
    "build_bv_inclusion",
    "build_embedding",
    "embedding_pair",
    "random_step_pair",
    "BaseScenario",
    "SCENARIOS",
    "get_scenario",
    "scenario_ids",
    "split_exponent",
]
