# varbv/scenarios/base.py
"""
Base class for all varbv scenarios.
- Engine and norm settings come from the injected VarbvConfig
- Model and input errors become error results, never exceptions
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any, Dict

import structlog

from varbv.config.schema import VarbvConfig
from varbv.core.errors import VarbvError
from varbv.scenarios.report import ScenarioReport

logger = structlog.get_logger()


class BaseScenario(ABC):
    """Abstract base for a verifiable construction."""

    scenario_id: str = ""

    def __init__(self, config: VarbvConfig):
        self.config = config
        self.logger = logger.bind(scenario=self.scenario_id)

    @abstractmethod
    def build(self, params: Dict[str, Any]) -> ScenarioReport:
        """Construct the scenario for ``params`` and return its verification report."""
        ...

    def process(self, params: Dict[str, Any]) -> Dict[str, Any]:
        """
        Run the scenario. Always returns a dict with at minimum
        {"status": "success"|"error", ...}
        """
        self.logger.info("Scenario starting", **{k: str(v) for k, v in params.items()})
        try:
            report = self.build(params)
        except VarbvError as e:
            return self._error_result(e)
        return self._success_result(report)

    def _error_result(self, error: VarbvError) -> Dict[str, Any]:
        self.logger.error("Scenario error", error=str(error), field=error.field)
        return {
            "status": "error",
            "scenario": self.scenario_id,
            "error": str(error),
            "error_type": type(error).__name__,
            "field": error.field,
        }

    def _success_result(self, report: ScenarioReport) -> Dict[str, Any]:
        if not report.passed:
            self.logger.warning("Scenario checks failed", failed=report.failed_checks)
        return {"status": "success", "scenario": self.scenario_id, "passed": report.passed, "report": report}
