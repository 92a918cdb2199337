"""Run configuration shared by the checker and the command line."""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

DEFAULT_X_GRID = (0.001, 0.005, 0.01, 0.05, 0.1, 0.2, 0.4)
DEFAULT_R_GRID = (0.1, 0.5, 1.0)


@dataclass
class Config:
    K: int = 50
    tol: float = 1e-12
    bisect_tol: float = 1e-12
    seed: int = 42
    box: float = 10.0
    window: float = 5.0
    n_samples: int = 500
    x_grid: tuple[float, ...] = DEFAULT_X_GRID
    r_grid: tuple[float, ...] = DEFAULT_R_GRID
    output: Optional[str] = None
    format: str = "json"

    def validate(self) -> None:
        if self.K < 2:
            raise ValueError(f"K must be >= 2, got {self.K}")
        if self.tol <= 0 or self.bisect_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.box <= 0 or self.window <= 0:
            raise ValueError("sampling box and window must be positive")
        if self.n_samples < 1:
            raise ValueError("n_samples must be >= 1")
        if not self.x_grid:
            raise ValueError("x_grid must not be empty")
        if any(not 0 < x <= 1 for x in self.x_grid):
            raise ValueError("x_grid values must lie in (0, 1]")
        if not self.r_grid or any(r <= 0 for r in self.r_grid):
            raise ValueError("r_grid must be nonempty and positive")
        if self.format not in ("json", "csv"):
            raise ValueError(f"format must be json or csv, got {self.format!r}")

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["x_grid"] = list(self.x_grid)
        d["r_grid"] = list(self.r_grid)
        return d

    def replace(self, **changes) -> "Config":
        return dataclasses.replace(self, **changes)


def parse_float_list(text: str) -> tuple[float, ...]:
    return tuple(float(v) for v in text.replace(" ", "").split(",") if v)


def _coerce(name: str, raw: str):
    kind = {f.name: f.type for f in dataclasses.fields(Config)}[name]
    if name in ("x_grid", "r_grid"):
        return parse_float_list(raw)
    if kind == "int":
        return int(raw)
    if kind == "float":
        return float(raw)
    if name == "output":
        return raw or None
    return raw


def load_config(path: str | Path, base: Optional[Config] = None) -> Config:
    """Read a flat ``key = value`` file; ``#`` starts a comment."""
    known = {f.name for f in dataclasses.fields(Config)}
    changes = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value")
        key, raw = (s.strip() for s in line.split("=", 1))
        if key not in known:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        changes[key] = _coerce(key, raw)
    return (base or Config()).replace(**changes)
