from .errors import (
    ConditionNotSatisfied,
    DegenerateGap,
    DegenerateInterval,
    GridTooLarge,
    GridTooSmall,
    InvalidModel,
    InvalidTag,
    NoFiniteBracket,
    NonpositiveScale,
    NotPointwiseOrdered,
    OutOfDomain,
    SpecFormatError,
    UnsampledPoint,
    VarbvError,
)
from .model import (
    Grid,
    Interval,
    Partition,
    PointFunction,
    SampledFunction,
    SpikeFunction,
    StepExponent,
    StepFunction,
    TaggedPartition,
    eval_exponent,
    eval_function,
    rational,
    real,
)
from .codec import dump_exponent, dump_function, load_exponent, load_function, parse_exponent, parse_function

__all__ = [
    "ConditionNotSatisfied",
    "DegenerateGap",
    "DegenerateInterval",
    "GridTooLarge",
    "GridTooSmall",
    "InvalidModel",
    "InvalidTag",
    "NoFiniteBracket",
    "NonpositiveScale",
    "NotPointwiseOrdered",
    "OutOfDomain",
    "SpecFormatError",
    "UnsampledPoint",
    "VarbvError",
    "Grid",
    "Interval",
    "Partition",
    "PointFunction",
    "SampledFunction",
    "SpikeFunction",
    "StepExponent",
    "StepFunction",
    "TaggedPartition",
    "eval_exponent",
    "eval_function",
    "rational",
    "real",
    "dump_exponent",
    "dump_function",
    "load_exponent",
    "load_function",
    "parse_exponent",
    "parse_function",
]
