"""Single source of truth for varbv run configuration."""
from __future__ import annotations

import os
from pathlib import Path
from typing import Any, Dict, Literal, Optional

import yaml
from pydantic import BaseModel, Field, field_validator


class EngineConfig(BaseModel):
    """Grid refinement of the variation DP."""
    tol: float = Field(default=1e-9, gt=0.0)
    max_points: int = Field(default=4096, ge=2)
    # ε_r = (b - a)·2^-(r + ladder_base)
    ladder_base: int = Field(default=6, ge=0, le=60)


class NormConfig(BaseModel):
    """Luxemburg norm bisection."""
    tol: float = Field(default=1e-8, gt=0.0)
    scale_cap_log2: int = Field(default=64, ge=1, le=1000)


class LoggingConfig(BaseModel):
    """Logging configuration."""
    level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "WARNING"
    format: Literal["json", "text"] = "text"

    @field_validator("level", mode="before")
    @classmethod
    def upper_level(cls, v: Any) -> Any:
        return v.upper() if isinstance(v, str) else v


class OutputConfig(BaseModel):
    """Report rendering."""
    format: Literal["json", "text"] = "json"


class VarbvConfig(BaseModel):
    """Root configuration model."""
    engine: EngineConfig = EngineConfig()
    norm: NormConfig = NormConfig()
    logging: LoggingConfig = LoggingConfig()
    output: OutputConfig = OutputConfig()

    @classmethod
    def load(cls, config_path: Optional[str] = None) -> "VarbvConfig":
        """
        Load config from YAML with env var overrides.

        An explicit path must exist. Without one, ``varbv.config.yaml`` in the
        working directory is used when present, otherwise the defaults.
        """
        data: Dict[str, Any] = {}
        if config_path is not None:
            path = Path(config_path)
            if not path.exists():
                raise FileNotFoundError(
                    f"Config not found at {config_path}. Run 'varbv init' first."
                )
        else:
            path = cls.default_config_path()
        if path.exists():
            with open(path, encoding="utf-8") as f:
                data = yaml.safe_load(f) or {}
            if not isinstance(data, dict):
                raise yaml.YAMLError(f"{path}: top level must be a mapping")

        if os.environ.get("VARBV_MAX_GRID"):
            data.setdefault("engine", {})["max_points"] = os.environ["VARBV_MAX_GRID"]
        if os.environ.get("VARBV_LOG_LEVEL"):
            data.setdefault("logging", {})["level"] = os.environ["VARBV_LOG_LEVEL"]

        return cls(**data)

    @classmethod
    def default_config_path(cls) -> Path:
        return Path("varbv.config.yaml")
