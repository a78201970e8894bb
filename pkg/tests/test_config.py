"""
Tests for configuration loading and environment overrides.
"""
import os
from pathlib import Path
from unittest.mock import patch

import pytest
import yaml


def make_test_config(tmp_path: Path, **sections) -> Path:
    """Write a minimal config file for testing."""
    config = {"engine": {"tol": 1e-6, "max_points": 512}, "logging": {"level": "info"}}
    config.update(sections)
    config_path = tmp_path / "varbv.config.yaml"
    with open(config_path, "w", encoding="utf-8") as f:
        yaml.dump(config, f)
    return config_path


class TestConfig:
    def test_defaults(self):
        from varbv.config.schema import VarbvConfig

        config = VarbvConfig()
        assert config.engine.tol == 1e-9
        assert config.engine.max_points == 4096
        assert config.norm.tol == 1e-8
        assert config.output.format == "json"

    def test_load_valid_config(self, tmp_path):
        from varbv.config.schema import VarbvConfig

        config = VarbvConfig.load(str(make_test_config(tmp_path)))
        assert config.engine.max_points == 512
        assert config.logging.level == "INFO"

    def test_missing_config_file(self):
        from varbv.config.schema import VarbvConfig

        with pytest.raises(FileNotFoundError):
            VarbvConfig.load("nonexistent.yaml")

    def test_top_level_must_be_mapping(self, tmp_path):
        from varbv.config.schema import VarbvConfig

        path = tmp_path / "list.yaml"
        path.write_text("- engine\n", encoding="utf-8")
        with pytest.raises(yaml.YAMLError):
            VarbvConfig.load(str(path))

    def test_no_file_gives_defaults(self, tmp_path, monkeypatch):
        from varbv.config.schema import VarbvConfig

        monkeypatch.delenv("VARBV_MAX_GRID", raising=False)
        monkeypatch.chdir(tmp_path)
        assert VarbvConfig.load().engine.max_points == 4096

    def test_default_file_is_picked_up(self, tmp_path, monkeypatch):
        from varbv.config.schema import VarbvConfig

        make_test_config(tmp_path)
        monkeypatch.chdir(tmp_path)
        assert VarbvConfig.load().engine.tol == 1e-6

    def test_env_overrides(self, tmp_path):
        from varbv.config.schema import VarbvConfig

        path = make_test_config(tmp_path)
        with patch.dict(os.environ, {"VARBV_MAX_GRID": "128", "VARBV_LOG_LEVEL": "debug"}):
            config = VarbvConfig.load(str(path))
        assert config.engine.max_points == 128
        assert config.logging.level == "DEBUG"

    def test_nonpositive_tolerance_rejected(self):
        from pydantic import ValidationError

        from varbv.config.schema import EngineConfig, NormConfig

        with pytest.raises(ValidationError):
            EngineConfig(tol=0)
        with pytest.raises(ValidationError):
            NormConfig(tol=-1e-3)
        with pytest.raises(ValidationError):
            EngineConfig(max_points=1)

    def test_template_is_valid(self, monkeypatch):
        monkeypatch.delenv("VARBV_MAX_GRID", raising=False)
        monkeypatch.delenv("VARBV_LOG_LEVEL", raising=False)
        import varbv.config
        from varbv.config.schema import VarbvConfig

        template = Path(varbv.config.__file__).parent / "varbv.config.yaml.template"
        config = VarbvConfig.load(str(template))
        assert config == VarbvConfig()
