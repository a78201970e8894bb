from .schema import EngineConfig, LoggingConfig, NormConfig, OutputConfig, VarbvConfig

__all__ = ["EngineConfig", "LoggingConfig", "NormConfig", "OutputConfig", "VarbvConfig"]
