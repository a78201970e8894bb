# varbv/pipeline.py
"""
Verification pipeline: scenario id → construction → checks → status dict.
"""
from __future__ import annotations

import time
from typing import Any, Dict, Optional

import structlog

from varbv.config.schema import VarbvConfig
from varbv.core.errors import VarbvError
from varbv.scenarios.registry import get_scenario

logger = structlog.get_logger()


class VerificationPipeline:
    """Runs registered scenarios with one shared configuration."""

    def __init__(self, config: Optional[VarbvConfig] = None):
        self.config = config or VarbvConfig()
        self.logger = logger.bind(pipeline="verify")

    def run(self, scenario_id: str, **params: Any) -> Dict[str, Any]:
        """
        Build and verify one scenario.

        Returns:
            {"status": "success", "passed": bool, "report": ScenarioReport, ...}
            or {"status": "error", "error": ..., "field": ...}
        """
        start = time.perf_counter()
        params = {k: v for k, v in params.items() if v is not None}
        try:
            scenario = get_scenario(scenario_id, self.config)
        except VarbvError as e:
            return self._failed(str(e), e.field, start)

        result = scenario.process(params)
        if result["status"] != "success":
            return self._failed(result["error"], result.get("field"), start)
        return self._report(result, start)

    def _report(self, result: Dict[str, Any], start: float) -> Dict[str, Any]:
        report = result["report"]
        self.logger.info(
            "Scenario verified",
            scenario=report.scenario,
            passed=report.passed,
            failed=report.failed_checks,
        )
        return {
            "status": "success",
            "scenario": report.scenario,
            "passed": report.passed,
            "failed_checks": report.failed_checks,
            "report": report,
            "duration_seconds": round(time.perf_counter() - start, 3),
        }

    def _failed(self, error: str, field: Optional[str], start: float) -> Dict[str, Any]:
        self.logger.error("Pipeline failed", error=error, field=field)
        return {
            "status": "error",
            "error": error,
            "field": field,
            "duration_seconds": round(time.perf_counter() - start, 3),
        }
