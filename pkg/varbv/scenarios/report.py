# varbv/scenarios/report.py
from __future__ import annotations

import operator
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Literal, Union

Number = Union[int, float, Fraction]
Relation = Literal["<", "<=", "==", ">=", ">"]

_RELATIONS: Dict[str, Callable[[Any, Any], bool]] = {
    "<": operator.lt,
    "<=": operator.le,
    "==": operator.eq,
    ">=": operator.ge,
    ">": operator.gt,
}


@dataclass(frozen=True)
class BoundCheck:
    """One quantitative claim: ``value relation bound``."""

    name: str
    value: Number
    relation: Relation
    bound: Number
    source: str = ""

    @property
    def passed(self) -> bool:
        return _RELATIONS[self.relation](self.value, self.bound)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "value": self.value,
            "relation": self.relation,
            "bound": self.bound,
            "source": self.source,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class ScenarioReport:
    """Verification record of one construction; passes iff every check passes."""

    scenario: str
    parameters: Dict[str, Any]
    values: Dict[str, Any]
    checks: List[BoundCheck]
    narrative: str = ""
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failed_checks(self) -> List[str]:
        return [c.name for c in self.checks if not c.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "scenario": self.scenario,
            "parameters": dict(self.parameters),
            "values": dict(self.values),
            "checks": [c.to_dict() for c in self.checks],
            "passed": self.passed,
            "narrative": self.narrative,
            "diagnostics": dict(self.diagnostics),
        }
