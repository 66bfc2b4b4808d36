"""Run configuration: one JSON-serializable record drives every command.

The default configuration is the cubic benchmark system (a = (0, 0, 2, -0.2),
unit frame, states 0-3).  Flags override file values field by field, and the
effective configuration is written back into every output directory so a run
can always be reproduced from its artifacts alone.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields, replace
from pathlib import Path


class ConfigError(ValueError):
    """Invalid configuration file or flag value."""


def _pair(value, name: str) -> tuple[float, float]:
    try:
        lo, hi = (float(v) for v in value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{name}: expected two numbers, got {value!r}") from exc
    if not hi > lo:
        raise ConfigError(f"{name}: window must satisfy lo < hi, got {value!r}")
    return (lo, hi)


@dataclass(frozen=True)
class RunConfig:
    """Everything a command needs: frame, system, grids, outputs, tolerances."""

    mass: float = 1.0
    omega: float = 1.0
    hbar: float = 1.0
    potential: tuple[float, ...] = (0.0, 0.0, 2.0, -0.2)
    basis_size: int = 40
    states: tuple[int, ...] = (0, 1, 2, 3)
    # axis windows for profiles, slices, pole search
    x_window: tuple[float, float] = (-3.0, 5.0)
    p_window: tuple[float, float] = (-4.0, 4.0)
    axis_samples: int = 2001
    # phase-space grid for the full Wigner field
    grid_x_window: tuple[float, float] = (-4.0, 6.0)
    grid_p_window: tuple[float, float] = (-5.0, 5.0)
    grid_x_size: int = 400
    grid_p_size: int = 400
    out_dir: str = "out"
    formats: tuple[str, ...] = ("csv", "json", "svg")
    denom_rel_tol: float = 1e-9
    negativity_tol: float | None = None  # None -> 1e-9 of the global bound 1/(pi hbar)

    def validate(self) -> "RunConfig":
        if not (self.mass > 0.0 and self.omega > 0.0 and self.hbar > 0.0):
            raise ConfigError("frame parameters mass, omega, hbar must all be > 0")
        if len(self.potential) == 0:
            raise ConfigError("potential needs at least one coefficient")
        if not all(isinstance(c, (int, float)) and not isinstance(c, bool)
                   for c in self.potential):
            raise ConfigError("potential coefficients must be numbers")
        if self.basis_size < max(2, len(self.potential) - 1 + 2):
            raise ConfigError(
                f"basis_size {self.basis_size} too small for a degree-"
                f"{len(self.potential) - 1} potential")
        if any((not isinstance(s, int)) or s < 0 for s in self.states):
            raise ConfigError("states must be non-negative integers")
        if self.states and max(self.states) >= self.basis_size:
            raise ConfigError("every requested state index must be < basis_size")
        _pair(self.x_window, "x_window")
        _pair(self.p_window, "p_window")
        _pair(self.grid_x_window, "grid_x_window")
        _pair(self.grid_p_window, "grid_p_window")
        if self.axis_samples < 101:
            raise ConfigError("axis_samples must be >= 101")
        if self.grid_x_size < 2 or self.grid_p_size < 2:
            raise ConfigError("grid sizes must be >= 2")
        unknown = [f for f in self.formats if f not in ("csv", "json", "svg")]
        if unknown:
            raise ConfigError(f"unknown output formats: {unknown}")
        if not self.formats:
            raise ConfigError("at least one output format is required")
        if not self.denom_rel_tol > 0.0:
            raise ConfigError("denom_rel_tol must be > 0")
        if self.negativity_tol is not None and not self.negativity_tol > 0.0:
            raise ConfigError("negativity_tol must be > 0 (or null for the default)")
        return self

    def to_dict(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            out[f.name] = list(v) if isinstance(v, tuple) else v
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        if not isinstance(data, dict):
            raise ConfigError("configuration root must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown configuration keys: {unknown}")
        kw = dict(data)
        for key in ("potential", "formats"):
            if key in kw:
                kw[key] = tuple(kw[key])
        if "states" in kw:
            try:
                kw["states"] = tuple(int(s) for s in kw["states"])
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"states: expected integers, got {kw['states']!r}") from exc
        for key in ("x_window", "p_window", "grid_x_window", "grid_p_window"):
            if key in kw:
                kw[key] = _pair(kw[key], key)
        if "potential" in kw:
            try:
                kw["potential"] = tuple(float(c) for c in kw["potential"])
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"potential: expected numbers, got {kw['potential']!r}") from exc
        for key in ("mass", "omega", "hbar", "denom_rel_tol"):
            if key in kw:
                try:
                    kw[key] = float(kw[key])
                except (TypeError, ValueError) as exc:
                    raise ConfigError(f"{key}: expected a number") from exc
        try:
            cfg = cls(**kw)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc
        return cfg.validate()


def load_config(path: str | Path) -> RunConfig:
    """Read and validate a JSON configuration file."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read configuration file {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"configuration file {path} is not valid JSON: {exc}") from exc
    return RunConfig.from_dict(data)


def apply_overrides(cfg: RunConfig, *, states: tuple[int, ...] | None = None,
                    out_dir: str | None = None, formats: tuple[str, ...] | None = None,
                    frame: tuple[float, float, float] | None = None,
                    potential: tuple[float, ...] | None = None) -> RunConfig:
    """Field-by-field flag overrides on top of a base configuration."""
    kw: dict = {}
    if states is not None:
        kw["states"] = states
    if out_dir is not None:
        kw["out_dir"] = out_dir
    if formats is not None:
        kw["formats"] = formats
    if frame is not None:
        kw["mass"], kw["omega"], kw["hbar"] = frame
    if potential is not None:
        kw["potential"] = potential
    return replace(cfg, **kw).validate() if kw else cfg.validate()
