"""Deterministic serialisation and run configuration.

Every float is written with 17 significant digits in lowercase scientific
notation, which round-trips IEEE doubles exactly and makes repeated runs
byte-identical.  Configuration files are flat JSON objects with a strict,
per-command key schema; parsing then re-serialising then re-parsing yields
an identical configuration.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields
from typing import Optional

import numpy as np

from .ensembles import KINDS, EnsembleSpec
from .search import SearchConfig

TWO_PI = 2.0 * math.pi


class ConfigError(ValueError):
    """Malformed or inconsistent run configuration."""


def format_float(x: float) -> str:
    """17-significant-digit lowercase scientific representation."""
    x = float(x)
    if x == 0.0:
        x = 0.0  # normalise -0.0
    return f"{x:.16e}"


def _dump_value(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if math.isnan(v) or math.isinf(v):
            return "null"
        return format_float(v)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        items = ", ".join(f"{json.dumps(str(k))}: {_dump_value(v)}" for k, v in value.items())
        return "{" + items + "}"
    if isinstance(value, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_dump_value(v) for v in value) + "]"
    raise TypeError(f"cannot serialise {type(value)!r} deterministically")


def dump_json(obj: dict) -> str:
    """Deterministic JSON text (insertion order, fixed float format)."""
    return _dump_value(obj) + "\n"


def complex_pairs(values) -> list:
    """Complex vector as [re, im] pairs for JSON/config transport."""
    return [[float(v.real), float(v.imag)] for v in np.asarray(values)]


def pairs_to_complex(pairs) -> np.ndarray:
    try:
        return np.array([complex(p[0], p[1]) for p in pairs], dtype=np.complex128)
    except (TypeError, IndexError) as exc:
        raise ConfigError(f"coefficients must be [re, im] pairs: {exc}") from None


# keys shared by every subcommand
_COMMON_KEYS = {"length", "grid_points", "hbar", "seed", "resolution", "out", "format"}
_STATE_KEYS = {"kind", "count", "mode_number", "center", "sigma", "band_limit", "coefficients"}
_SEARCH_KEYS = {"band_limit", "restarts", "max_iterations", "tolerance", "denominator_floor"}

ALLOWED_KEYS = {
    "verify": _COMMON_KEYS | _STATE_KEYS | {"nu"},
    "profile": _COMMON_KEYS | _STATE_KEYS,
    "angular": _COMMON_KEYS | _STATE_KEYS | {"eta"},
    "extremal": _COMMON_KEYS | _SEARCH_KEYS | {"oracle_samples"},
}


@dataclass(frozen=True)
class RunConfig:
    """Flat run configuration with defaults materialised."""

    command: str
    length: float = TWO_PI
    grid_points: int = 256
    hbar: float = 1.0
    seed: int = 0
    resolution: Optional[int] = None
    out: Optional[str] = None
    format: Optional[str] = None
    # single-state / ensemble payload
    kind: Optional[str] = None
    count: int = 1
    mode_number: Optional[int] = None
    center: Optional[float] = None
    sigma: Optional[float] = None
    band_limit: Optional[int] = None
    coefficients: Optional[tuple] = None
    nu: float = 0.3
    eta: float = 0.15
    # search payload
    restarts: int = 32
    max_iterations: int = 2000
    tolerance: float = 1e-9
    denominator_floor: float = 1e-4
    oracle_samples: int = 0

    def to_dict(self) -> dict:
        out = {}
        for f in fields(self):
            if f.name == "command":
                continue
            value = getattr(self, f.name)
            if f.name in ALLOWED_KEYS[self.command] and value is not None:
                out[f.name] = value
        return out


def _require_int(key: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{key} must be an integer, got {value!r}")
    return value


def _require_number(key: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key} must be a number, got {value!r}")
    if not math.isfinite(value):
        raise ConfigError(f"{key} must be finite, got {value!r}")
    return float(value)


def parse_config(data: dict, command: str) -> RunConfig:
    """Validate a raw config mapping against the schema of one subcommand."""
    if command not in ALLOWED_KEYS:
        raise ConfigError(f"unknown command {command!r}")
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a JSON object")
    allowed = ALLOWED_KEYS[command]
    unknown = set(data) - allowed
    if unknown:
        raise ConfigError(f"unknown configuration keys for {command}: {sorted(unknown)}")

    kwargs = {"command": command}
    for key, value in data.items():
        if key in ("grid_points", "seed", "count", "mode_number", "band_limit",
                   "resolution", "restarts", "max_iterations", "oracle_samples"):
            kwargs[key] = _require_int(key, value)
        elif key in ("length", "hbar", "center", "sigma", "nu", "eta",
                     "tolerance", "denominator_floor"):
            kwargs[key] = _require_number(key, value)
        elif key == "coefficients":
            kwargs[key] = tuple(tuple(float(x) for x in pair) for pair in value)
        elif key in ("out", "format", "kind"):
            if value is not None and not isinstance(value, str):
                raise ConfigError(f"{key} must be a string, got {value!r}")
            kwargs[key] = value
        else:  # pragma: no cover - schema and branches kept in sync above
            raise ConfigError(f"unhandled key {key}")
    cfg = RunConfig(**kwargs)

    if cfg.format not in (None, "csv", "json"):
        raise ConfigError(f"format must be 'csv' or 'json', got {cfg.format!r}")
    if cfg.grid_points < 8 or cfg.grid_points % 2:
        raise ConfigError(f"grid_points must be an even integer >= 8, got {cfg.grid_points}")
    if cfg.length <= 0:
        raise ConfigError(f"length must be positive, got {cfg.length}")
    if cfg.hbar <= 0:
        raise ConfigError(f"hbar must be positive, got {cfg.hbar}")
    if cfg.resolution is not None and cfg.resolution < cfg.grid_points:
        raise ConfigError(
            f"resolution {cfg.resolution} below grid_points {cfg.grid_points}"
        )
    if command in ("verify", "profile", "angular"):
        if cfg.kind not in KINDS:
            raise ConfigError(f"{command} requires kind, one of {KINDS}")
        if cfg.count < 1:
            raise ConfigError("count must be >= 1")
    if command == "extremal":
        try:
            SearchConfig(
                band_limit=cfg.band_limit if cfg.band_limit is not None else 8,
                restarts=cfg.restarts,
                max_iterations=cfg.max_iterations,
                tolerance=cfg.tolerance,
                denominator_floor=cfg.denominator_floor,
                seed=cfg.seed,
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if cfg.oracle_samples < 0:
            raise ConfigError("oracle_samples must be >= 0")
    return cfg


def load_config(path: str, command: str) -> RunConfig:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None
    return parse_config(data, command)


def config_to_json(cfg: RunConfig) -> str:
    return dump_json(cfg.to_dict())


def ensemble_from_config(cfg: RunConfig) -> EnsembleSpec:
    try:
        return EnsembleSpec(
            kind=cfg.kind,
            count=cfg.count,
            seed=cfg.seed,
            mode_number=cfg.mode_number,
            center=cfg.center,
            sigma=cfg.sigma,
            band_limit=cfg.band_limit,
            coefficients=(
                None if cfg.coefficients is None else pairs_to_complex(cfg.coefficients)
            ),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def search_from_config(cfg: RunConfig) -> SearchConfig:
    return SearchConfig(
        band_limit=cfg.band_limit if cfg.band_limit is not None else 8,
        restarts=cfg.restarts,
        max_iterations=cfg.max_iterations,
        tolerance=cfg.tolerance,
        denominator_floor=cfg.denominator_floor,
        seed=cfg.seed,
    )
