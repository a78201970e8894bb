# varbv/scenarios/registry.py
"""Scenario registry: stable ids consumed by ``varbv verify``."""
from __future__ import annotations

from dataclasses import replace
from fractions import Fraction
from typing import Any, Dict, List, Type

from varbv.config.schema import VarbvConfig
from varbv.core.errors import InvalidModel
from varbv.core.model import StepExponent
from varbv.scenarios.additivity import build_additivity_failure, verify_superadditivity
from varbv.scenarios.anti_embedding import build_anti_embedding, divergence_certificate
from varbv.scenarios.base import BaseScenario
from varbv.scenarios.cantor import build_cantor
from varbv.scenarios.inclusion import build_bv_inclusion, build_embedding
from varbv.scenarios.report import BoundCheck, ScenarioReport
from varbv.scenarios.unbounded import build_unbounded_jump, unbounded_exponent, unbounded_function


def split_exponent() -> StepExponent:
    """10 on [0, ½), 2 on [½, 1]: the standard exponent violating additivity at ½."""
    return StepExponent.from_pieces([0, Fraction(1, 2), 1], [10, 2])


class AntiEmbeddingScenario(BaseScenario):
    scenario_id = "anti-embedding"

    def build(self, params: Dict[str, Any]) -> ScenarioReport:
        _, _, report = build_anti_embedding(params.get("n", 100), self.config.engine)
        m = params.get("m")
        if m is None:
            return report
        cert = divergence_certificate(m)
        return replace(
            report,
            parameters={**report.parameters, "m": m},
            values={**report.values, "divergence_n": cert.n, "divergence_partial_sum": cert.partial_sum},
            checks=[
                *report.checks,
                BoundCheck("divergence_certificate", cert.partial_sum, ">", m, "Σ_{k=2}^N 1/k > M"),
                BoundCheck("divergence_reverified", int(cert.verified), "==", 1, "tagged sum of the construction"),
            ],
        )


class UnboundedJumpScenario(BaseScenario):
    scenario_id = "unbounded-jump"

    def build(self, params: Dict[str, Any]) -> ScenarioReport:
        return build_unbounded_jump(params.get("n", 10), self.config.engine)[2]


class CantorScenario(BaseScenario):
    scenario_id = "cantor"

    def build(self, params: Dict[str, Any]) -> ScenarioReport:
        return build_cantor(params.get("depth", 4), self.config.engine)[2]


class AdditivityFailureScenario(BaseScenario):
    scenario_id = "additivity-failure"

    def build(self, params: Dict[str, Any]) -> ScenarioReport:
        p = params.get("exponent", split_exponent())
        x = params.get("x", p.domain.midpoint)
        _, report = build_additivity_failure(p, x, params.get("c", 2), self.config.engine)
        return report


class SuperadditivityScenario(BaseScenario):
    scenario_id = "superadditivity"

    def build(self, params: Dict[str, Any]) -> ScenarioReport:
        p, f = params.get("exponent"), params.get("function")
        if (p is None) != (f is None):
            raise InvalidModel("superadditivity needs both an exponent and a function", field="function")
        if p is None:
            p, f = unbounded_exponent(10), unbounded_function(10)
        c = params.get("x", p.domain.midpoint)
        return verify_superadditivity(p, f, c, self.config.engine)


class BvInclusionScenario(BaseScenario):
    scenario_id = "bv-inclusion"

    def build(self, params: Dict[str, Any]) -> ScenarioReport:
        return build_bv_inclusion(
            n=params.get("n", 20),
            seed=params.get("seed", 0),
            opts=self.config.engine,
        )


class EmbeddingScenario(BaseScenario):
    scenario_id = "embedding"

    def build(self, params: Dict[str, Any]) -> ScenarioReport:
        return build_embedding(params.get("tol"), self.config.engine, self.config.norm)


SCENARIOS: Dict[str, Type[BaseScenario]] = {
    cls.scenario_id: cls
    for cls in (
        AntiEmbeddingScenario,
        UnboundedJumpScenario,
        CantorScenario,
        AdditivityFailureScenario,
        SuperadditivityScenario,
        BvInclusionScenario,
        EmbeddingScenario,
    )
}


def scenario_ids() -> List[str]:
    return list(SCENARIOS)


def get_scenario(scenario_id: str, config: VarbvConfig) -> BaseScenario:
    try:
        return SCENARIOS[scenario_id](config)
    except KeyError:
        raise InvalidModel(
            f"unknown scenario {scenario_id!r}; choose from {', '.join(SCENARIOS)}",
            field="scenario",
        ) from None
