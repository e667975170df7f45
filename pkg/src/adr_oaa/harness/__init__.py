"""Seeded, CSV-producing experiment sweeps and their command-line interface."""

from .config import ConfigError, ExperimentConfig, InitialState, config_from_dict, default_config, load_config
from .experiments import ResultRow, compare_oracle, run, simulate

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "InitialState",
    "ResultRow",
    "compare_oracle",
    "config_from_dict",
    "default_config",
    "load_config",
    "run",
    "simulate",
]
