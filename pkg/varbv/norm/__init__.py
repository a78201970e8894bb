from .luxemburg import EmbeddingReport, NormResult, embedding_compare, luxemburg_norm, modular_at_scale

__all__ = ["EmbeddingReport", "NormResult", "embedding_compare", "luxemburg_norm", "modular_at_scale"]
