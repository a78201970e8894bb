"""
CLI tests: report layout, exit codes and input errors.
"""
import json
from pathlib import Path
from unittest.mock import patch

import pytest
import yaml
from click.testing import CliRunner

SPLIT = {"domain": [0, 1], "breakpoints": [0, "1/2", 1], "values": [10, 2]}
CONST2 = {"domain": [0, 1], "breakpoints": [0, 1], "values": [2]}
RAMP = {"domain": [0, 1], "breakpoints": [0, "1/2", 1], "values": [2, 4]}
JUMP = {"kind": "step", "breakpoints": [0, "1/2", 1], "pieces": [0, "3/4"], "point_values": [0, 0, "3/4"]}
SPIKES = {"kind": "spike", "domain": [0, 1], "spikes": [["1/4", "1/2"], ["3/4", "1/2"]], "anchored": True}


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("VARBV_MAX_GRID", raising=False)
    monkeypatch.delenv("VARBV_LOG_LEVEL", raising=False)
    return tmp_path


def write_spec(directory: Path, name: str, doc) -> str:
    path = directory / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


def invoke(*args):
    from varbv.cli.commands import cli

    return CliRunner().invoke(cli, [str(a) for a in args])


class TestInit:
    def test_creates_config_and_env(self, workdir):
        result = invoke("init")
        assert result.exit_code == 0
        assert "[OK]" in result.output
        config = yaml.safe_load((workdir / "varbv.config.yaml").read_text(encoding="utf-8"))
        assert config["engine"]["max_points"] == 4096
        assert (workdir / ".env").exists()

    def test_force_overwrites(self, workdir):
        (workdir / "varbv.config.yaml").write_text("engine: {}\n", encoding="utf-8")
        assert invoke("init", "--force").exit_code == 0
        assert "ladder_base" in (workdir / "varbv.config.yaml").read_text(encoding="utf-8")


class TestMeanExp:
    def test_report_layout(self, workdir):
        p = write_spec(workdir, "p.json", SPLIT)
        result = invoke("mean-exp", "--exponent", p, "--interval", "0", "1")
        assert result.exit_code == 0, result.output
        report = json.loads(result.output)
        assert report["schema"] == 1
        assert report["command"] == "mean-exp"
        assert report["result"] == "10/3"
        assert report["inputs"]["interval"] == [0, 1]
        assert report["details"]["attainable_exponents"] == [2, 10]
        assert report["details"]["witnesses"] == ["3/4", "1/4"]
        assert report["warnings"] == []

    def test_output_is_byte_stable(self, workdir):
        p = write_spec(workdir, "p.json", SPLIT)
        first = invoke("mean-exp", "--exponent", p, "--interval", "1/4", "3/4")
        second = invoke("mean-exp", "--exponent", p, "--interval", "1/4", "3/4")
        assert first.output == second.output

    def test_text_format_is_yaml(self, workdir):
        p = write_spec(workdir, "p.json", SPLIT)
        result = invoke("mean-exp", "--exponent", p, "--interval", "0", "1", "--format", "text")
        assert result.exit_code == 0
        assert yaml.safe_load(result.output)["result"] == "10/3"


class TestInputErrors:
    def test_decimal_breakpoint(self, workdir):
        p = write_spec(workdir, "p.json", {**SPLIT, "breakpoints": [0, "0.5", 1]})
        result = invoke("mean-exp", "--exponent", p, "--interval", "0", "1")
        assert result.exit_code == 2
        assert "breakpoints.1" in result.output

    def test_missing_file(self, workdir):
        result = invoke("mean-exp", "--exponent", workdir / "nope.json", "--interval", "0", "1")
        assert result.exit_code == 2

    def test_grid_cap_below_minimum(self, workdir):
        p = write_spec(workdir, "p.json", CONST2)
        f = write_spec(workdir, "f.json", JUMP)
        result = invoke("variation", "--exponent", p, "--function", f, "--max-points", "1")
        assert result.exit_code == 2

    def test_invalid_env_override(self, workdir):
        p = write_spec(workdir, "p.json", CONST2)
        f = write_spec(workdir, "f.json", JUMP)
        with patch.dict("os.environ", {"VARBV_MAX_GRID": "1"}):
            result = invoke("variation", "--exponent", p, "--function", f)
        assert result.exit_code == 2
        assert "engine.max_points" in result.output

    @pytest.mark.parametrize("text", ["engine: [1, 2\n", "- 1\n- 2\n"], ids=["broken", "not-a-mapping"])
    def test_malformed_config(self, workdir, text):
        p = write_spec(workdir, "p.json", SPLIT)
        (workdir / "bad.yaml").write_text(text, encoding="utf-8")
        result = invoke("mean-exp", "--exponent", p, "--interval", "0", "1", "--config", workdir / "bad.yaml")
        assert result.exit_code == 2
        assert "[X] config:" in result.output


class TestAnalysisCommands:
    def test_variation(self, workdir):
        p = write_spec(workdir, "p.json", CONST2)
        f = write_spec(workdir, "f.json", JUMP)
        report = json.loads(invoke("variation", "--exponent", p, "--function", f).output)
        assert report["result"]["value"] == 0.5625
        assert report["result"]["mode"] == "plain"
        assert report["diagnostics"]["converged"] is True

    def test_norm(self, workdir):
        p = write_spec(workdir, "p.json", CONST2)
        f = write_spec(workdir, "f.json", JUMP)
        report = json.loads(invoke("norm", "--exponent", p, "--function", f).output)
        assert report["result"]["norm"] == pytest.approx(0.75, abs=1e-8)
        lo, hi = report["result"]["bracket"]
        assert lo <= 0.75 <= hi
        assert report["diagnostics"]["evaluations"] > 0

    def test_maximal(self, workdir):
        p = write_spec(workdir, "p.json", SPLIT)
        report = json.loads(invoke("maximal", "--exponent", p, "--x", "1/2").output)
        result = report["result"]
        assert result["p_minus"] == {"full": 2, "left": 10, "right": 2}
        assert result["maximal"]["full"] == "1/2"
        assert result["additivity_condition"] == {"holds": True, "gap": 8, "side": "left"}

    def test_variation_function(self, workdir):
        p = write_spec(workdir, "p.json", CONST2)
        f = write_spec(workdir, "f.json", JUMP)
        result = invoke("variation-function", "--exponent", p, "--function", f, "--xs", "0,1/4,1/2,3/4,1")
        values = json.loads(result.output)["result"]["values"]
        assert values == [0.0, 0.0, 0.0, 0.5625, 0.5625]

    def test_compare_embedding(self, workdir):
        small = write_spec(workdir, "p1.json", CONST2)
        large = write_spec(workdir, "p2.json", RAMP)
        f = write_spec(workdir, "f.json", SPIKES)
        result = invoke("compare-embedding", "--small", small, "--large", large, "--function", f)
        assert result.exit_code == 0, result.output
        report = json.loads(result.output)
        assert report["result"]["holds"] is True
        assert report["result"]["norm_small"] == pytest.approx(1.0, abs=1e-8)


class TestVerify:
    def test_anti_embedding_passes(self, workdir):
        result = invoke("verify", "anti-embedding", "--n", "20", "--max-points", "512")
        assert result.exit_code == 0, result.output
        report = json.loads(result.output)
        assert report["result"]["passed"] is True
        assert report["inputs"]["n"] == 20
        assert report["result"]["values"]["tagged_sum_exact"] == "40315631/15519504"

    def test_divergence_threshold(self, workdir):
        result = invoke("verify", "anti-embedding", "--n", "5", "--m", "4", "--max-points", "256")
        assert result.exit_code == 0, result.output
        assert json.loads(result.output)["result"]["values"]["divergence_n"] == 83

    def test_unknown_scenario(self, workdir):
        result = invoke("verify", "no-such-thing")
        assert result.exit_code == 2
        assert "scenario" in result.output

    def test_bad_parameter(self, workdir):
        result = invoke("verify", "anti-embedding", "--n", "2")
        assert result.exit_code == 2
        assert "n:" in result.output

    def test_tiny_additivity_gap_is_input_error(self, workdir):
        p = write_spec(workdir, "p.json", {"domain": [0, 1], "breakpoints": [0, "1/2", 1], "values": [2, "2001/1000"]})
        result = invoke("verify", "additivity-failure", "--exponent", p, "--x", "1/2", "--c", "10")
        assert result.exit_code == 2
        assert "[X] x:" in result.output
        assert "Traceback" not in result.output

    def test_failed_check_exits_one(self, workdir):
        from varbv.scenarios.report import BoundCheck, ScenarioReport

        failing = ScenarioReport("cantor", {"depth": 1}, {}, [BoundCheck("modular_bound", 3, "<=", 2)])
        # the failed-check warning would land in the captured output
        with patch("varbv.scenarios.registry.build_cantor", return_value=(None, None, failing)), patch.dict(
            "os.environ", {"VARBV_LOG_LEVEL": "ERROR"}
        ):
            result = invoke("verify", "cantor", "--depth", "1")
        assert result.exit_code == 1
        report = json.loads(result.output)
        assert report["result"]["passed"] is False
        assert report["warnings"] == ["check failed: modular_bound"]
