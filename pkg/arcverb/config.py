"""
Run configuration.

A run is described by a YAML parameter file with the sections

    run:        command, seed, fit_samples
    input:      arcs, divisor                 (JSON files)
    schur:      N, radius, grid
    measure:    level
    onearc:     r (number or list), samples
    sweep:      per_gap, sheets
    output:     directory, emit, report, plot, format
    tolerances: any key of DEFAULT_TOLERANCES

The hierarchy is flattened into one parameter dict. Relative paths resolve
against the repository root, the parent of the directory that holds the
parameter file. Command-line values override the file.
"""

import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from .errors import ConfigError
from .quadrature import MAX_LEVEL, MIN_LEVEL
from .schur import DEFAULT_GRID, DEFAULT_RADIUS, MAX_PARAMS

logger = logging.getLogger(__name__)

COMMANDS = ("verify-onearc", "mfunc", "measure", "verblunsky", "pipeline", "sweep")
PLOT_FORMATS = (".png", ".pdf", ".svg")

DEFAULT_TOLERANCES = {
    "identity": 1e-9,
    "normalization": 1e-10,
    "structure": 1e-8,
    "mass": 1e-7,
    "moments": 1e-6,
    "roundtrip": 1e-7,
    "dual_path": 1e-5,
    "precision": 1e-5,
    "closure": 1e-6,
}

DEFAULTS = {
    "command": "pipeline",
    "seed": 42,
    "fit_samples": 64,
    "arcs": None,
    "divisor": None,
    "N": 20,
    "radius": DEFAULT_RADIUS,
    "grid": DEFAULT_GRID,
    "level": 8,
    "r": [0.5],
    "samples": 500,
    "per_gap": 5,
    "sheets": [1, -1],
    "output_dir": "./output",
    "emit": None,
    "report": None,
    "plot": False,
    "format": ".svg",
}

# (section, yaml key) -> flat parameter name
YAML_KEYS = {
    ("run", "command"): "command",
    ("run", "seed"): "seed",
    ("run", "fit_samples"): "fit_samples",
    ("input", "arcs"): "arcs",
    ("input", "divisor"): "divisor",
    ("schur", "N"): "N",
    ("schur", "radius"): "radius",
    ("schur", "grid"): "grid",
    ("measure", "level"): "level",
    ("onearc", "r"): "r",
    ("onearc", "samples"): "samples",
    ("sweep", "per_gap"): "per_gap",
    ("sweep", "sheets"): "sheets",
    ("output", "directory"): "output_dir",
    ("output", "emit"): "emit",
    ("output", "report"): "report",
    ("output", "plot"): "plot",
    ("output", "format"): "format",
}

PATH_KEYS = ("arcs", "divisor", "output_dir", "emit", "report")

# Commands that need an arc file, and those that also need a divisor
NEEDS_ARCS = ("mfunc", "measure", "verblunsky", "pipeline", "sweep")
NEEDS_DIVISOR = ("mfunc", "measure", "verblunsky", "pipeline")


def resolve_relative_path(path, param_file_path):
    """
    Resolve a path relative to the repository root (parent of the parameter
    file directory). Absolute paths are returned unchanged.
    """
    if path is None or os.path.isabs(path):
        return path
    param_dir = os.path.dirname(os.path.abspath(param_file_path))
    root_dir = os.path.dirname(param_dir)
    if path.startswith("./"):
        path = path[2:]
    return os.path.abspath(os.path.join(root_dir, path))


class RunConfig:
    """Flattened run parameters with YAML loading, overrides and validation."""

    def __init__(self, param_file: Optional[str] = None,
                 overrides: Optional[Dict[str, Any]] = None):
        self.param_file = os.path.abspath(param_file) if param_file else None
        self.params: Dict[str, Any] = dict(DEFAULTS)
        self.tolerances: Dict[str, float] = dict(DEFAULT_TOLERANCES)
        if self.param_file:
            self.parse_yaml_file()
        if overrides:
            self.apply_overrides(overrides)

    def parse_yaml_file(self):
        """Parse and flatten the YAML parameter file."""
        if not os.path.exists(self.param_file):
            raise ConfigError(f"parameter file not found: {self.param_file}")
        try:
            with open(self.param_file, "r") as f:
                config = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ConfigError(f"parameter file is not valid YAML: {e}")
        if not isinstance(config, dict):
            raise ConfigError("parameter file must hold a mapping of sections")

        for (section, key), name in YAML_KEYS.items():
            block = config.get(section)
            if isinstance(block, dict) and key in block:
                self.params[name] = block[key]

        unknown = set(config) - {s for s, _ in YAML_KEYS} - {"tolerances"}
        if unknown:
            logger.warning("ignoring unknown sections: %s", ", ".join(sorted(unknown)))

        for key, value in (config.get("tolerances") or {}).items():
            if key not in DEFAULT_TOLERANCES:
                raise ConfigError(f"unknown tolerance '{key}'",
                                  {"known": sorted(DEFAULT_TOLERANCES)})
            self.tolerances[key] = float(value)

        for name in PATH_KEYS:
            self.params[name] = resolve_relative_path(self.params[name], self.param_file)

    def apply_overrides(self, overrides: Dict[str, Any]):
        """Command-line values win over the file; None means not given."""
        for name, value in overrides.items():
            if value is None:
                continue
            if name not in self.params:
                raise ConfigError(f"unknown parameter '{name}'")
            self.params[name] = value

    @property
    def r_values(self):
        r = self.params["r"]
        return [float(v) for v in (r if isinstance(r, (list, tuple)) else [r])]

    def validate(self) -> "RunConfig":
        """
        Check every field against the ranges of the modules that consume it.

        Raises:
            ConfigError: on the first violation
        """
        p = self.params
        if p["command"] not in COMMANDS:
            raise ConfigError(f"unknown command '{p['command']}'", {"commands": list(COMMANDS)})
        try:
            for name in ("seed", "fit_samples", "N", "grid", "level", "samples", "per_gap"):
                p[name] = int(p[name])
            p["radius"] = float(p["radius"])
            r_values = self.r_values
        except (TypeError, ValueError) as e:
            raise ConfigError(f"non-numeric parameter: {e}")

        if not 1 <= p["N"] <= MAX_PARAMS:
            raise ConfigError(f"N must lie in [1, {MAX_PARAMS}]", {"N": p["N"]})
        if not MIN_LEVEL <= p["level"] <= MAX_LEVEL:
            raise ConfigError(f"level must lie in [{MIN_LEVEL}, {MAX_LEVEL}]", {"level": p["level"]})
        if not 0.1 < p["radius"] < 0.9:
            raise ConfigError("radius must lie in (0.1, 0.9)", {"radius": p["radius"]})
        grid = p["grid"]
        if grid < 256 or grid & (grid - 1):
            raise ConfigError("grid must be a power of two ≥ 256", {"grid": grid})
        if p["samples"] < 1:
            raise ConfigError("samples must be positive", {"samples": p["samples"]})
        if p["fit_samples"] < 16:
            raise ConfigError("fit_samples must be at least 16", {"fit_samples": p["fit_samples"]})
        if not r_values or not all(0.0 < r < 1.0 for r in r_values):
            raise ConfigError("every r must lie in (0, 1)", {"r": r_values})
        if p["per_gap"] < 1:
            raise ConfigError("per_gap must be positive", {"per_gap": p["per_gap"]})
        if not p["sheets"] or not set(p["sheets"]) <= {1, -1}:
            raise ConfigError("sheets must be drawn from {1, -1}", {"sheets": p["sheets"]})
        if p["format"] not in PLOT_FORMATS:
            raise ConfigError(f"plot format must be one of {', '.join(PLOT_FORMATS)}",
                              {"format": p["format"]})
        if any(not value > 0.0 for value in self.tolerances.values()):
            raise ConfigError("tolerances must be positive", {"tolerances": self.tolerances})

        if p["command"] in NEEDS_ARCS and not p["arcs"]:
            raise ConfigError(f"command '{p['command']}' needs an arc file (--arcs)")
        if p["command"] in NEEDS_DIVISOR and not p["divisor"]:
            raise ConfigError(f"command '{p['command']}' needs a divisor file (--divisor)")
        return self

    def output_path(self, name: str) -> Path:
        return Path(self.params["output_dir"]) / name

    def to_dict(self) -> Dict[str, Any]:
        """Effective parameters and tolerances, echoed into reports."""
        return {"parameters": dict(self.params), "tolerances": dict(self.tolerances),
                "param_file": self.param_file}

    def get(self, key, default=None):
        return self.params.get(key, default)

    def __getitem__(self, key):
        return self.params[key]

    def __contains__(self, key):
        return key in self.params
