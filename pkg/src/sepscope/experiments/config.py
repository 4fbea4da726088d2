"""Experiment configuration, flat key=value config files and run manifests."""
from __future__ import annotations

import json
import platform
import time
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any

import numpy as np

from ..errors import ConfigError
from .systems import SystemSpec, get_system

DEFAULT_BINS = 50
DEFAULT_CHUNK = 20_000


@dataclass
class ExperimentConfig:
    """Inputs shared by the density-matrix studies.

    ``samples`` is the draw budget for curve and probability studies;
    ``per_class`` is the quota for balanced scatter studies.
    """

    system: str = "two-rebit"
    samples: int = 100_000
    per_class: int = 20_000
    bins: int = DEFAULT_BINS
    seed: int = 0
    chunk_size: int = DEFAULT_CHUNK
    threads: int | None = None
    output_dir: str = "."

    def __post_init__(self):
        get_system(self.system)
        for name in ("samples", "per_class", "bins", "chunk_size"):
            if int(getattr(self, name)) < 1:
                raise ConfigError(f"{name} must be positive")
        if self.seed < 0:
            raise ConfigError("seed must be nonnegative")
        if self.threads is not None and self.threads < 1:
            raise ConfigError("threads must be positive")

    @property
    def spec(self) -> SystemSpec:
        return get_system(self.system)

    @property
    def bin_edges(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.bins + 1)

    @classmethod
    def from_mapping(cls, values: dict[str, Any]) -> "ExperimentConfig":
        known = {f.name: f for f in fields(cls)}
        kwargs = {}
        for key, raw in values.items():
            name = key.replace("-", "_")
            if name not in known:
                raise ConfigError(f"unknown config key {key!r}")
            if raw is None:
                continue
            kwargs[name] = _coerce(name, raw)
        return cls(**kwargs)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


_INT_KEYS = {"samples", "per_class", "bins", "seed", "chunk_size", "threads"}


def _coerce(name: str, raw):
    if name in _INT_KEYS and isinstance(raw, str):
        try:
            return int(float(raw)) if ("e" in raw.lower() or "." in raw) else int(raw)
        except ValueError:
            raise ConfigError(f"{name} must be an integer, got {raw!r}") from None
    return raw


def parse_config_text(text: str) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment, blank lines are skipped."""
    out: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        if key in out:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        out[key] = value
    return out


def load_config_file(path) -> dict[str, str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_config_text(text)


def _jsonable(x):
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, Path):
        return str(x)
    raise TypeError(f"not JSON serialisable: {type(x)}")


@dataclass
class RunManifest:
    """Everything needed to rerun a command and reproduce its counts."""

    command: str
    arguments: dict[str, Any]
    seed: int
    chunk_size: int | None = None
    n_chunks: int | None = None
    counts: dict[str, Any] = field(default_factory=dict)
    rejected: dict[str, int] = field(default_factory=dict)
    outputs: list[str] = field(default_factory=list)
    wall_time: float = 0.0
    version: str = ""
    python: str = field(default_factory=platform.python_version)
    numpy: str = field(default_factory=lambda: np.__version__)
    started: str = field(default_factory=lambda: time.strftime("%Y-%m-%dT%H:%M:%S%z"))

    def __post_init__(self):
        if not self.version:
            from .. import __version__

            self.version = __version__

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True, default=_jsonable)

    def write(self, path) -> Path:
        path = Path(path)
        path.write_text(self.to_json() + "\n", encoding="utf-8")
        return path

    @classmethod
    def read(cls, path) -> "RunManifest":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read manifest {path}: {exc}") from None
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown or "command" not in data:
            raise ConfigError(f"malformed manifest {path}")
        return cls(**data)


def write_rows_csv(path, rows, columns) -> Path:
    """RFC-4180 style CSV (``\\r\\n`` line ends, minimal quoting)."""
    import csv

    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=list(columns))
        w.writeheader()
        w.writerows(rows)
    return path
