"""
Configuration manager for the Dunkl-Hermite toolkit.

Defaults live in config.json next to this module. A user JSON file (argument, --config
flag or $DUNKL_HERMITE_CONFIG) is merged over them; command-line flags win over both.
"""

from __future__ import annotations

import argparse
import copy
import math
import os
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, NoReturn

import numpy as np
from loguru import logger

from ..numerics.errors import ConfigError
from ..numerics.quadrature import QuadratureSettings
from ..numerics.special_functions import DunklParameter
from ..utils.json_helpers import load_json_file, save_json_file

CONFIG_ENV = "DUNKL_HERMITE_CONFIG"
COMMANDS = (
    "basis",
    "kernel",
    "heat",
    "poisson",
    "hilbert",
    "conjugate",
    "expand",
    "verify",
    "bench",
)
FORMATS = ("csv", "json")


def load_default_config() -> dict[str, Any]:
    """Load default configuration from config.json in the same directory."""
    config_path = Path(__file__).parent / "config.json"
    return load_json_file(config_path, default={})


DEFAULT_CONFIG = load_default_config()


def _merge(base: dict[str, Any], updates: Mapping[str, Any], where: str = "") -> None:
    """Recursive merge that rejects keys absent from `base`."""
    for key, value in updates.items():
        if key not in base:
            raise ConfigError(f"unknown configuration key {where}{key!r}")
        if isinstance(base[key], dict):
            if not isinstance(value, Mapping):
                raise ConfigError(f"configuration key {where}{key!r} must be an object")
            _merge(base[key], value, f"{where}{key}.")
        else:
            base[key] = value


class ConfigManager:
    """
    Holds the merged configuration dictionary.
    Supports attribute-style access (`cfg.K`, `cfg.TOLERANCES`) like a settings object.
    """

    def __init__(self, config_file: str | Path | None = None):
        self.log = logger.bind(name="DunklHermite.Config")
        if config_file is None and os.environ.get(CONFIG_ENV):
            config_file = os.environ[CONFIG_ENV]
        self._config_file = Path(config_file) if config_file is not None else None
        self._config: dict[str, Any] = copy.deepcopy(DEFAULT_CONFIG)
        self.load()

    @property
    def config_file(self) -> Path | None:
        return self._config_file

    def load(self) -> None:
        """Merge the user configuration file, if any, over the defaults."""
        if self._config_file is None:
            return
        if not self._config_file.exists():
            self.log.info(f"No configuration file found at {self._config_file}, using defaults")
            return
        try:
            saved_config = load_json_file(self._config_file, default={})
        except ValueError as e:
            raise ConfigError(str(e)) from e
        if not isinstance(saved_config, Mapping):
            raise ConfigError(f"{self._config_file} must hold a JSON object")
        _merge(self._config, saved_config)
        self.log.info(f"Configuration loaded from {self._config_file}")

    def save(self, path: str | Path | None = None) -> Path:
        """Save the merged configuration to `path` (default: the attached file)."""
        target = Path(path) if path is not None else self._config_file
        if target is None:
            raise ConfigError("no configuration file to save to")
        save_json_file(target, self._config)
        self.log.info(f"Configuration saved to {target}")
        return target

    def as_dict(self) -> dict[str, Any]:
        return copy.deepcopy(self._config)

    def get(self, key: str, default: Any = None) -> Any:
        """Get a configuration value."""
        return self._config.get(key, default)

    def set(self, key: str, value: Any) -> None:
        """Set a configuration value; persisted when a configuration file is attached."""
        if key not in self._config:
            raise ConfigError(f"unknown configuration key {key!r}")
        self._config[key] = value
        if self._config_file is not None:
            self.save()

    def _key(self, name: str) -> str | None:
        for key in (name, name.lower()):
            if key in self._config:
                return key
        return None

    def __getattr__(self, name: str) -> Any:
        """
        Attribute-style access to configuration keys (uppercase).
        Example: config.K -> config.get('k'), config.N -> config.get('N')
        """
        if name.startswith("_"):
            raise AttributeError(name)
        key = self._key(name)
        if key is not None:
            return self._config[key]
        raise AttributeError(f"'ConfigManager' object has no attribute '{name}'")

    def __setattr__(self, name: str, value: Any) -> None:
        """
        Attribute-style assignment for configuration keys (uppercase).
        Example: config.K = 1.5 -> config.set('k', 1.5)
        """
        if name.startswith("_") or name == "log":
            super().__setattr__(name, value)
            return
        key = self._key(name)
        if key is not None:
            self.set(key, value)
        else:
            super().__setattr__(name, value)


@dataclass(frozen=True)
class GridSpec:
    min: float
    max: float
    count: int

    def points(self) -> np.ndarray:
        return np.linspace(self.min, self.max, self.count)


@dataclass(frozen=True)
class OutputSpec:
    format: str = "csv"
    path: Path | None = None
    precision: int = 17


@dataclass(frozen=True)
class RunConfig:
    """Validated, immutable configuration of one CLI run."""

    command: str | None
    k: float
    N: int
    quad_order: int
    tolerances: dict[str, float]
    quadrature: dict[str, float]
    grid: GridSpec
    seed: int
    output: OutputSpec
    n: int = 4
    t: float = 0.5
    fn: str = "gaussian"
    sign: str = "+"
    kernel: str = "heat"
    x: float = 0.5
    r: float = 0.5
    s: float = 0.5
    workers: int = 1
    timings: bool = False
    checks: dict[str, float] = field(default_factory=dict)
    debug: bool = False
    log_file: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if not (math.isfinite(self.k) and self.k >= 0):
            raise ConfigError(f"k must be nonnegative, got {self.k!r}")
        if self.N < 0:
            raise ConfigError(f"N must be nonnegative, got {self.N}")
        if self.quad_order < 1:
            raise ConfigError(f"quad_order must be positive, got {self.quad_order}")
        if self.grid.count < 2:
            raise ConfigError(f"grid count must be >= 2, got {self.grid.count}")
        if not self.grid.min < self.grid.max:
            raise ConfigError(
                f"grid min must be below grid max, got [{self.grid.min}, {self.grid.max}]"
            )
        if not 6 <= self.output.precision <= 17:
            raise ConfigError(f"precision must lie in [6, 17], got {self.output.precision}")
        if self.output.format not in FORMATS:
            raise ConfigError(f"output format must be csv or json, got {self.output.format!r}")
        path = self.output.path
        if path is not None and path.suffix and path.suffix.lstrip(".") != self.output.format:
            raise ConfigError(
                f"output path {path} contradicts --format {self.output.format}"
            )
        for name, value in (*self.tolerances.items(), *self.checks.items()):
            if not (isinstance(value, (int, float)) and value > 0):
                raise ConfigError(f"tolerance {name} must be positive, got {value!r}")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")
        if self.sign not in {"+", "-"}:
            raise ConfigError(f"sign must be + or -, got {self.sign!r}")

    def parameter(self) -> DunklParameter:
        return DunklParameter(self.k)

    def settings(self) -> QuadratureSettings:
        """Quadrature settings from the tolerance map, the quadrature block and quad_order."""
        values: dict[str, Any] = {**self.quadrature, **self.tolerances}
        values["gauss_order"] = self.quad_order
        try:
            return QuadratureSettings.from_mapping(values)
        except ValueError as e:
            raise ConfigError(str(e)) from e

    def tolerance(self, name: str, default: float) -> float:
        return float(self.tolerances.get(name, default))

    def echo(self) -> dict[str, Any]:
        """Ordered view of every setting that influences artifact contents."""
        return {
            "command": self.command,
            "k": self.k,
            "N": self.N,
            "quad_order": self.quad_order,
            "seed": self.seed,
            "grid": {"min": self.grid.min, "max": self.grid.max, "count": self.grid.count},
            "tolerances": dict(sorted(self.tolerances.items())),
            "quadrature": dict(sorted(self.quadrature.items())),
            "checks": dict(self.checks),
            "output": {"format": self.output.format, "precision": self.output.precision},
            "n": self.n,
            "t": self.t,
            "fn": self.fn,
            "sign": self.sign,
            "kernel": self.kernel,
            "x": self.x,
            "r": self.r,
            "s": self.s,
            "timings": self.timings,
        }

    def header_lines(self) -> list[str]:
        """Config echo as `key=value` lines for CSV headers."""
        lines = []
        for key, value in self.echo().items():
            if isinstance(value, dict):
                lines.extend(f"{key}.{sub}={inner!r}" for sub, inner in value.items())
            else:
                lines.append(f"{key}={value!r}")
        return lines


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises ConfigError instead of exiting."""

    def error(self, message: str) -> NoReturn:
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="dunkl-hermite",
        description="Dunkl-Hermite harmonic analysis toolkit",
        argument_default=argparse.SUPPRESS,
    )
    parser.add_argument("command", nargs="?", choices=COMMANDS, help="Command to run")
    parser.add_argument("--config", type=str, help="JSON configuration file")
    parser.add_argument("--debug", action="store_true", help="Enable debug mode")
    parser.add_argument("--log-file", type=str, help="Custom log filename")
    parser.add_argument("--k", type=float, help="Multiplicity parameter k >= 0")
    parser.add_argument("--N", type=int, dest="N", help="Expansion degree")
    parser.add_argument("--quad-order", type=int, help="Generalized Gauss-Hermite order")
    parser.add_argument(
        "--tol", action="append", metavar="NAME=VALUE", help="Override one tolerance"
    )
    parser.add_argument("--grid-min", type=float)
    parser.add_argument("--grid-max", type=float)
    parser.add_argument("--grid-count", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--format", choices=FORMATS)
    parser.add_argument("--output", type=str, help="Artifact path")
    parser.add_argument("--precision", type=int, help="Significant digits in artifacts")
    parser.add_argument("--n", type=int, dest="n", help="Basis index")
    parser.add_argument("--t", type=float, help="Time parameter")
    parser.add_argument("--fn", type=str, help="Test function name")
    parser.add_argument("--sign", choices=("+", "-"))
    parser.add_argument("--kernel", type=str, help="Kernel name")
    parser.add_argument("--x", type=float, help="Fixed x for kernel grids")
    parser.add_argument("--r", type=float, help="Mehler parameter r in (0, 1)")
    parser.add_argument("--s", type=float, help="K_s parameter s in (0, 1)")
    parser.add_argument("--workers", type=int, help="Concurrent verification workers")
    parser.add_argument("--timings", action="store_true", help="Keep runtime_ms in artifacts")
    return parser


def _tolerance_overrides(items: Sequence[str]) -> dict[str, float]:
    out = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep or not name:
            raise ConfigError(f"--tol expects NAME=VALUE, got {item!r}")
        try:
            out[name.strip()] = float(value)
        except ValueError as e:
            raise ConfigError(f"malformed tolerance value in {item!r}") from e
    return out


def parse_config(args: Sequence[str], file: str | Path | None = None) -> RunConfig:
    """
    Flags override file values, which override defaults.
    Unknown keys, malformed numbers and contradictory flags raise ConfigError.
    """
    ns = vars(build_parser().parse_args(list(args)))
    manager = ConfigManager(ns.get("config", file))
    data = manager.as_dict()

    for key in ("k", "N", "seed"):
        if key in ns:
            data[key] = ns[key]
    if "quad_order" in ns:
        data["quad_order"] = ns["quad_order"]
    if "tol" in ns:
        overrides = _tolerance_overrides(ns["tol"])
        sections = ("tolerances", "quadrature", "checks")
        for name, value in overrides.items():
            section = next((s for s in sections if name in data[s]), None)
            if section is None:
                raise ConfigError(f"unknown tolerance {name!r}")
            data[section][name] = value
    for flag, key in (("grid_min", "min"), ("grid_max", "max"), ("grid_count", "count")):
        if flag in ns:
            data["grid"][key] = ns[flag]
    for flag, key in (("format", "format"), ("output", "path"), ("precision", "precision")):
        if flag in ns:
            data["output"][key] = ns[flag]
    for key in data["command"]:
        if key in ns:
            data["command"][key] = ns[key]

    output = data["output"]
    try:
        return RunConfig(
            command=ns.get("command"),
            k=float(data["k"]),
            N=int(data["N"]),
            quad_order=int(data["quad_order"]),
            tolerances={name: float(v) for name, v in data["tolerances"].items()},
            quadrature=dict(data["quadrature"]),
            checks={name: float(v) for name, v in data["checks"].items()},
            grid=GridSpec(
                float(data["grid"]["min"]), float(data["grid"]["max"]), int(data["grid"]["count"])
            ),
            seed=int(data["seed"]),
            output=OutputSpec(
                str(output["format"]),
                Path(output["path"]) if output["path"] else None,
                int(output["precision"]),
            ),
            debug=bool(ns.get("debug", False)),
            log_file=ns.get("log_file"),
            **{key: value for key, value in data["command"].items()},
        )
    except (TypeError, ValueError) as e:
        if isinstance(e, ConfigError):
            raise
        raise ConfigError(f"malformed configuration value: {e}") from e
