"""varbv: variable-exponent Wiener variation, Luxemburg norms and counterexample checks."""

__version__ = "1.0.0"
