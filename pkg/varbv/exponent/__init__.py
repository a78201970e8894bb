from .prefix import PrefixIntegral, attainable_exponents, mean_exponent, mean_value_witnesses
from .maximal import AdditivityCondition, MaximalProfile, additivity_condition, maximal_profile, p_minus

__all__ = [
    "PrefixIntegral",
    "attainable_exponents",
    "mean_exponent",
    "mean_value_witnesses",
    "AdditivityCondition",
    "MaximalProfile",
    "additivity_condition",
    "maximal_profile",
    "p_minus",
]
