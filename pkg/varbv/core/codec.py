# varbv/core/codec.py
"""
JSON spec-file format for exponents and functions.

Rationals are written as integers or "num/den" strings; decimal literals are
rejected wherever an exact value is required. Function values may also be
JSON floats.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Annotated, Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, PlainSerializer, PlainValidator, TypeAdapter, ValidationError

from varbv.core.errors import SpecFormatError, VarbvError
from varbv.core.model import (
    Interval,
    PointFunction,
    SampledFunction,
    SpikeFunction,
    StepExponent,
    StepFunction,
)

_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


def _parse_rational(value: Any) -> Fraction:
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL_RE.match(value):
        try:
            return Fraction(value.replace(" ", ""))
        except ZeroDivisionError as e:
            raise ValueError("zero denominator") from e
    raise ValueError(f"expected an integer or 'num/den' string, got {value!r}")


def _parse_real(value: Any) -> Union[Fraction, float]:
    if isinstance(value, float):
        return value
    return _parse_rational(value)


def format_rational(value: Fraction) -> Union[int, str]:
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


def _format_real(value: Union[Fraction, float]) -> Union[int, str, float]:
    if isinstance(value, float):
        return value
    return format_rational(value)


Rational = Annotated[Fraction, PlainValidator(_parse_rational), PlainSerializer(format_rational)]
RealValue = Annotated[
    Union[Fraction, float], PlainValidator(_parse_real), PlainSerializer(_format_real)
]


class _Doc(BaseModel):
    model_config = ConfigDict(extra="forbid", arbitrary_types_allowed=True)


class ExponentDoc(_Doc):
    domain: Tuple[Rational, Rational]
    breakpoints: List[Rational]
    values: List[Rational]
    overrides: List[Tuple[Rational, Rational]] = Field(default_factory=list)

    def build(self) -> StepExponent:
        return StepExponent(
            Interval(*self.domain),
            tuple(self.breakpoints),
            tuple(self.values),
            tuple(self.overrides),
        )

    @classmethod
    def from_model(cls, p: StepExponent) -> "ExponentDoc":
        return cls(
            domain=(p.domain.lo, p.domain.hi),
            breakpoints=list(p.breakpoints),
            values=list(p.values),
            overrides=list(p.overrides),
        )


class StepDoc(_Doc):
    kind: Literal["step"] = "step"
    breakpoints: List[Rational]
    pieces: List[RealValue]
    point_values: Optional[List[RealValue]] = None
    anchored: bool = False

    def build(self) -> StepFunction:
        return StepFunction.from_pieces(self.breakpoints, self.pieces, self.point_values, self.anchored)

    @classmethod
    def from_model(cls, f: StepFunction) -> "StepDoc":
        return cls(
            breakpoints=list(f.breakpoints),
            pieces=list(f.pieces),
            point_values=list(f.point_values),
            anchored=f.anchored,
        )


class SpikeDoc(_Doc):
    kind: Literal["spike"] = "spike"
    domain: Tuple[Rational, Rational]
    spikes: List[Tuple[Rational, RealValue]] = Field(default_factory=list)
    base: Optional[StepDoc] = None
    anchored: bool = False

    def build(self) -> SpikeFunction:
        base = self.base.build() if self.base is not None else None
        return SpikeFunction(Interval(*self.domain), tuple(self.spikes), base, self.anchored)

    @classmethod
    def from_model(cls, f: SpikeFunction) -> "SpikeDoc":
        return cls(
            domain=(f.domain.lo, f.domain.hi),
            spikes=list(f.spikes),
            base=StepDoc.from_model(f.base) if f.base is not None else None,
            anchored=f.anchored,
        )


class SampledDoc(_Doc):
    kind: Literal["sampled"] = "sampled"
    points: List[Rational]
    values: List[RealValue]
    anchored: bool = False

    def build(self) -> SampledFunction:
        if not self.points:
            raise SpecFormatError("sampled function needs points", field="points")
        domain = Interval(self.points[0], self.points[-1])
        return SampledFunction(domain, tuple(self.points), tuple(self.values), self.anchored)

    @classmethod
    def from_model(cls, f: SampledFunction) -> "SampledDoc":
        return cls(points=list(f.points), values=list(f.values), anchored=f.anchored)


FunctionDoc = Annotated[Union[StepDoc, SpikeDoc, SampledDoc], Field(discriminator="kind")]
_function_adapter: TypeAdapter = TypeAdapter(FunctionDoc)


def _format_loc(error: ValidationError) -> str:
    first = error.errors()[0]
    return ".".join(str(part) for part in first["loc"]) or "<root>"


def _build(build, data: Any):
    try:
        return build(data)
    except ValidationError as e:
        loc = _format_loc(e)
        raise SpecFormatError(f"{loc}: {e.errors()[0]['msg']}", field=loc) from e
    except VarbvError as e:
        if isinstance(e, SpecFormatError):
            raise
        raise SpecFormatError(str(e), field=e.field) from e


def parse_exponent(data: Dict[str, Any]) -> StepExponent:
    return _build(lambda d: ExponentDoc.model_validate(d).build(), data)


def parse_function(data: Dict[str, Any]) -> PointFunction:
    return _build(lambda d: _function_adapter.validate_python(d).build(), data)


def dump_exponent(p: StepExponent) -> Dict[str, Any]:
    return ExponentDoc.from_model(p).model_dump(mode="json")


def dump_function(f: PointFunction) -> Dict[str, Any]:
    if isinstance(f, StepFunction):
        doc: _Doc = StepDoc.from_model(f)
    elif isinstance(f, SpikeFunction):
        doc = SpikeDoc.from_model(f)
    elif isinstance(f, SampledFunction):
        doc = SampledDoc.from_model(f)
    else:
        raise SpecFormatError(f"cannot serialize {type(f).__name__}", field="kind")
    return doc.model_dump(mode="json")


def _read_json(path: Union[str, Path]) -> Dict[str, Any]:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Spec file not found: {path}")
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise SpecFormatError(f"{path}: invalid JSON ({e.msg})", field=str(path)) from e


def load_exponent(path: Union[str, Path]) -> StepExponent:
    return parse_exponent(_read_json(path))


def load_function(path: Union[str, Path]) -> PointFunction:
    return parse_function(_read_json(path))
