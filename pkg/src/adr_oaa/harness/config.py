"""Experiment configuration: JSON schema, per-experiment defaults, validation."""

from __future__ import annotations

import json
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any

from ..adr import AdrParams, CflError, scale_time

DEFAULT_T_GRID = (1.0, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1, 0.05, 0.01)
DEFAULT_LOCALIZED_INDEX = 5
ENCODERS = ("lcu", "dilation")
LCU_ALPHA = 4.0


class ConfigError(ValueError):
    """Invalid experiment configuration; the message names the offending field."""


@dataclass(frozen=True)
class InitialState:
    kind: str
    index: int = DEFAULT_LOCALIZED_INDEX
    count: int = 1
    seed: int = 0

    def to_json(self) -> dict[str, Any]:
        if self.kind == "localized":
            return {"kind": "localized", "index": self.index}
        if self.kind == "haar":
            return {"kind": "haar", "count": self.count, "seed": self.seed}
        return {"kind": self.kind}


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    courant: tuple[float, float, float]
    n_qubits: int
    initial_state: InitialState
    k_max: int
    t_scale_grid: tuple[float, ...] = DEFAULT_T_GRID
    encoder: str = "lcu"
    alpha: float = LCU_ALPHA
    output_path: str | None = None

    @property
    def base_params(self) -> AdrParams:
        gd, ga, gr = self.courant
        return AdrParams(gd, ga, gr, self.n_qubits)

    def to_json(self) -> dict[str, Any]:
        return {
            "experiment": self.experiment,
            "courant": list(self.courant),
            "n_qubits": self.n_qubits,
            "initial_state": self.initial_state.to_json(),
            "k_max": self.k_max,
            "t_scale_grid": list(self.t_scale_grid),
            "encoder": self.encoder,
            "alpha": self.alpha,
            "output_path": self.output_path,
        }


BASE_COURANT = (0.01, 0.9, 0.01)
SECOND_STEP_COURANT = (0.005, 0.9, 0.005)

_LOCALIZED = InitialState("localized", DEFAULT_LOCALIZED_INDEX)

REGISTRY: dict[str, tuple[str, ExperimentConfig]] = {
    "success-parabola": (
        "success probability vs gamma_r (gamma_d = gamma_a = 0.1), no amplification",
        ExperimentConfig("success-parabola", (0.1, 0.1, 0.0), 4, InitialState("uniform"), 0, (1.0,)),
    ),
    "pi3-fixedpoint": (
        "pi/3 fixed-point recursion: probability vs k",
        ExperimentConfig("pi3-fixedpoint", (0.01, 0.01, 0.9), 3, _LOCALIZED, 3, (1.0,)),
    ),
    "oaa-probability": (
        "OAA success probability vs eta for k = 0..3, localized state",
        ExperimentConfig("oaa-probability", BASE_COURANT, 4, _LOCALIZED, 3),
    ),
    "oaa-distortion": (
        "OAA Euclidean distance and fidelity vs eta per k, localized state",
        ExperimentConfig("oaa-distortion", BASE_COURANT, 4, _LOCALIZED, 3),
    ),
    "phase-diagram": (
        "(1 - p, D) trajectories over k, one per eta",
        ExperimentConfig("phase-diagram", BASE_COURANT, 4, _LOCALIZED, 3),
    ),
    "haar-ensemble": (
        "OAA distortion over seeded Haar-random initial states",
        ExperimentConfig("haar-ensemble", BASE_COURANT, 4, InitialState("haar", count=100, seed=1234), 3),
    ),
    "approx-vs-oaa": (
        "approximate-reflection amplification vs OAA on the second time step",
        ExperimentConfig("approx-vs-oaa", SECOND_STEP_COURANT, 4, _LOCALIZED, 2),
    ),
    "w-variant": (
        "OAA with U^H replaced by a block encoding of A^-1, compared to OAA",
        ExperimentConfig("w-variant", BASE_COURANT, 4, _LOCALIZED, 3),
    ),
}


def default_config(experiment: str) -> ExperimentConfig:
    try:
        return REGISTRY[experiment][1]
    except KeyError:
        raise ConfigError(f"experiment: unknown experiment {experiment!r}") from None


def _parse_initial_state(raw: Any) -> InitialState:
    if not isinstance(raw, dict):
        raise ConfigError("initial_state: expected an object with a 'kind' key")
    kind = raw.get("kind")
    allowed = {"localized": {"kind", "index"}, "uniform": {"kind"}, "haar": {"kind", "count", "seed"}}
    if kind not in allowed:
        raise ConfigError(f"initial_state.kind: expected one of {sorted(allowed)}, got {kind!r}")
    extra = set(raw) - allowed[kind]
    if extra:
        raise ConfigError(f"initial_state: unknown keys {sorted(extra)} for kind {kind!r}")
    if kind == "localized":
        index = raw.get("index", DEFAULT_LOCALIZED_INDEX)
        if not isinstance(index, int) or isinstance(index, bool) or index < 0:
            raise ConfigError("initial_state.index: expected a non-negative integer")
        return InitialState("localized", index=index)
    if kind == "haar":
        count, seed = raw.get("count", 100), raw.get("seed", 0)
        if not isinstance(count, int) or isinstance(count, bool) or count < 1:
            raise ConfigError("initial_state.count: expected a positive integer")
        if not isinstance(seed, int) or isinstance(seed, bool) or not 0 <= seed < 2**64:
            raise ConfigError("initial_state.seed: expected an unsigned 64-bit integer")
        return InitialState("haar", count=count, seed=seed)
    return InitialState("uniform")


def _number(name: str, value: Any) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{name}: expected a number, got {value!r}")
    return float(value)


def config_from_dict(raw: dict[str, Any], experiment: str | None = None) -> ExperimentConfig:
    """Merge ``raw`` over the registry defaults of its experiment and validate."""
    if not isinstance(raw, dict):
        raise ConfigError("config: expected a JSON object")
    known = {f.name for f in fields(ExperimentConfig)}
    unknown = set(raw) - known
    if unknown:
        raise ConfigError(f"config: unknown keys {sorted(unknown)}")

    name = raw.get("experiment", experiment)
    if experiment is not None and name != experiment:
        raise ConfigError(f"experiment: config names {name!r} but {experiment!r} was requested")
    if name is None:
        raise ConfigError("experiment: missing")
    cfg = default_config(name)

    updates: dict[str, Any] = {}
    if "courant" in raw:
        c = raw["courant"]
        if not isinstance(c, (list, tuple)) or len(c) != 3:
            raise ConfigError("courant: expected [gamma_d, gamma_a, gamma_r]")
        updates["courant"] = tuple(_number(f"courant[{i}]", v) for i, v in enumerate(c))
    if "n_qubits" in raw:
        n = raw["n_qubits"]
        if not isinstance(n, int) or isinstance(n, bool) or not 1 <= n <= 6:
            raise ConfigError("n_qubits: expected an integer in [1, 6]")
        updates["n_qubits"] = n
    if "initial_state" in raw:
        updates["initial_state"] = _parse_initial_state(raw["initial_state"])
    if "k_max" in raw:
        k = raw["k_max"]
        if not isinstance(k, int) or isinstance(k, bool) or not 0 <= k <= 20:
            raise ConfigError("k_max: expected an integer in [0, 20]")
        updates["k_max"] = k
    if "t_scale_grid" in raw:
        g = raw["t_scale_grid"]
        if not isinstance(g, (list, tuple)):
            raise ConfigError("t_scale_grid: expected a list of numbers")
        updates["t_scale_grid"] = tuple(_number("t_scale_grid", v) for v in g)
    if "encoder" in raw:
        updates["encoder"] = raw["encoder"]
    if "alpha" in raw:
        updates["alpha"] = _number("alpha", raw["alpha"])
    if "output_path" in raw:
        out = raw["output_path"]
        if out is not None and not isinstance(out, str):
            raise ConfigError("output_path: expected a string or null")
        updates["output_path"] = out

    return validate(replace(cfg, **updates))


def validate(cfg: ExperimentConfig) -> ExperimentConfig:
    if cfg.experiment not in REGISTRY:
        raise ConfigError(f"experiment: unknown experiment {cfg.experiment!r}")
    if cfg.encoder not in ENCODERS:
        raise ConfigError(f"encoder: expected one of {ENCODERS}, got {cfg.encoder!r}")
    if cfg.encoder == "lcu" and cfg.alpha != LCU_ALPHA:
        raise ConfigError(f"alpha: the lcu encoder fixes alpha = {LCU_ALPHA}, got {cfg.alpha}")
    if not cfg.alpha > 0:
        raise ConfigError("alpha: must be positive")

    grid = cfg.t_scale_grid
    if not grid:
        raise ConfigError("t_scale_grid: must be non-empty")
    if any(not 0.0 < t <= 1.0 for t in grid):
        raise ConfigError("t_scale_grid: every entry must lie in (0, 1]")
    diffs = [b - a for a, b in zip(grid, grid[1:])]
    if not (all(d > 0 for d in diffs) or all(d < 0 for d in diffs)):
        raise ConfigError("t_scale_grid: must be strictly sorted (ascending or descending)")

    try:
        base = cfg.base_params
        for t in grid:
            scale_time(base, t)
    except CflError as exc:
        raise ConfigError(f"courant: {exc}") from None
    except ValueError as exc:
        raise ConfigError(f"courant/n_qubits: {exc}") from None

    st = cfg.initial_state
    if st.kind == "localized" and st.index >= 2**cfg.n_qubits:
        raise ConfigError(
            f"initial_state.index: {st.index} out of range for {2**cfg.n_qubits} grid points"
        )
    return cfg


def load_config(path: str | Path, experiment: str | None = None) -> ExperimentConfig:
    """Read a JSON config file; raises ``ConfigError`` (bad content) or ``OSError`` (I/O)."""
    text = Path(path).read_text()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config: invalid JSON ({exc})") from None
    return config_from_dict(raw, experiment)


def with_overrides(
    cfg: ExperimentConfig,
    seed: int | None = None,
    encoder: str | None = None,
    output_path: str | None = None,
) -> ExperimentConfig:
    updates: dict[str, Any] = {}
    if encoder is not None:
        updates["encoder"] = encoder
    if output_path is not None:
        updates["output_path"] = output_path
    if seed is not None:
        if not 0 <= seed < 2**64:
            raise ConfigError("seed: expected an unsigned 64-bit integer")
        if cfg.initial_state.kind == "haar":
            updates["initial_state"] = replace(cfg.initial_state, seed=seed)
    return validate(replace(cfg, **updates))


__all__ = [
    "ConfigError",
    "DEFAULT_T_GRID",
    "ExperimentConfig",
    "InitialState",
    "REGISTRY",
    "config_from_dict",
    "default_config",
    "load_config",
    "validate",
    "with_overrides",
]
