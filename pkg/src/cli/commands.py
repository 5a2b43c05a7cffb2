"""
CLI commands. Each command evaluates onto the configured grid and writes one artifact
(two for verify); every artifact carries the configuration echo.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
from loguru import logger

from src.core.config.manager import RunConfig
from src.core.numerics.errors import DomainError
from src.core.numerics.kernels import KERNEL_NAMES, evaluate_kernel
from src.core.numerics.samples import function_from_name
from src.core.numerics.spectral import analyze
from src.core.numerics.special_functions import dunkl_hermite_fn
from src.core.numerics.transforms import (
    KERNEL_MIN_TIME,
    EvaluationPath,
    Method,
    compare_paths,
    conjugate_apply,
    heat_apply,
    hilbert_apply,
    poisson_apply,
)
from src.core.services.verification import SuiteContext, VerificationSuite
from src.core.utils.csv_helpers import format_number, write_csv
from src.core.utils.json_helpers import save_json_file
from src.core.utils.paths import get_artifacts_dir

from .bench import run_benchmarks

HILBERT_PATH_THRESHOLD = 1e-4

log = logger.bind(name="DunklHermite.CLI")


@dataclass
class Table:
    columns: list[str]
    rows: list[list[Any]]
    meta: dict[str, Any] = field(default_factory=dict)


class Artifacts:
    """
    Paths written by one run; removed together when the run fails.
    A path is registered only after its atomic write lands; files of earlier runs stay.
    """

    def __init__(self) -> None:
        self.paths: list[Path] = []

    def add(self, path: Path) -> Path:
        self.paths.append(path)
        return path

    def discard(self) -> None:
        for path in self.paths:
            if path.exists():
                path.unlink()
                log.warning(f"Removed artifact {path} of the failed run")
        self.paths.clear()


def artifact_path(cfg: RunConfig, stem: str, suffix: str | None = None) -> Path:
    """--output when given, else artifacts/<stem>.<format>; `suffix` swaps the extension."""
    path = cfg.output.path or get_artifacts_dir() / f"{stem}.{cfg.output.format}"
    return path.with_suffix(f".{suffix}") if suffix else path


def _json_value(value: Any, precision: int) -> Any:
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, str):
        return value
    x = float(value)
    if not math.isfinite(x):
        return format_number(x)
    return float(format_number(x, precision))


def write_table(cfg: RunConfig, stem: str, table: Table, artifacts: Artifacts) -> Path:
    path = artifact_path(cfg, stem)
    precision = cfg.output.precision
    if cfg.output.format == "json":
        data = {
            "config": cfg.echo(),
            "meta": {key: _json_value(v, precision) for key, v in table.meta.items()},
            "columns": table.columns,
            "rows": [[_json_value(v, precision) for v in row] for row in table.rows],
        }
        save_json_file(path, data)
    else:
        header = cfg.header_lines()
        header += [f"{key}={format_number(v, precision)}" for key, v in table.meta.items()]
        write_csv(path, table.columns, table.rows, header, precision)
    artifacts.add(path)
    log.info(f"Wrote {len(table.rows)} rows to {path}")
    return path


def _columns(x: Any, *columns: Any) -> list[list[Any]]:
    arrays = [np.asarray(c, dtype=float).ravel() for c in (x, *columns)]
    return [list(row) for row in zip(*arrays, strict=True)]


def _parallel_map(cfg: RunConfig, func: Callable[[float], float], xs: Any) -> list[float]:
    points = [float(v) for v in np.asarray(xs).ravel()]
    if cfg.workers == 1:
        return [func(v) for v in points]
    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        return list(pool.map(func, points))


def basis_command(cfg: RunConfig, artifacts: Artifacts) -> int:
    """h_n^k over the grid."""
    if cfg.n < 0:
        raise DomainError(f"basis index n must be nonnegative, got {cfg.n}")
    p, x = cfg.parameter(), cfg.grid.points()
    values = dunkl_hermite_fn(p, cfg.n, x)
    write_table(cfg, "basis", Table(["x", f"h_{cfg.n}"], _columns(x, values)), artifacts)
    return 0


def kernel_command(cfg: RunConfig, artifacts: Artifacts) -> int:
    """A kernel over grid x grid; the Hilbert kernel diagonal is written as nan."""
    if cfg.kernel not in KERNEL_NAMES:
        names = ", ".join(KERNEL_NAMES)
        raise DomainError(f"unknown kernel {cfg.kernel!r}; expected one of {names}")
    p, settings = cfg.parameter(), cfg.settings()
    x, y = np.meshgrid(cfg.grid.points(), cfg.grid.points(), indexing="ij")
    x, y = x.ravel(), y.ravel()
    values = np.full(x.shape, np.nan)
    live = np.ones(x.shape, dtype=bool)
    if cfg.kernel == "hilbert":
        live = np.abs(x - y) >= 1e-8
    values[live] = evaluate_kernel(
        cfg.kernel,
        p,
        x[live],
        y[live],
        t=cfg.t,
        r=cfg.r,
        s=cfg.s,
        sign=cfg.sign,
        settings=settings,
    )
    meta = {"kernel": cfg.kernel}
    table = Table(["x", "y", "value"], _columns(x, y, values), meta)
    write_table(cfg, f"kernel_{cfg.kernel}", table, artifacts)
    return 0


def _two_paths(
    cfg: RunConfig,
    stem: str,
    spectral: Callable[[], Any],
    kernel: Callable[[], Any],
    artifacts: Artifacts,
) -> int:
    x = cfg.grid.points()
    if cfg.t < KERNEL_MIN_TIME:
        log.warning(f"t={cfg.t:g} is below {KERNEL_MIN_TIME}: kernel column left empty")
        values = np.asarray(spectral(), dtype=float)
        table = Table(
            ["x", "spectral", "kernel", "disagreement"],
            _columns(x, values, np.full_like(values, np.nan), np.full_like(values, np.nan)),
        )
    else:
        threshold = cfg.tolerance("path_disagreement", 1e-5)
        comparison = compare_paths(spectral, kernel, x, stem, threshold)
        table = Table(
            ["x", "spectral", "kernel", "disagreement"],
            _columns(x, comparison.spectral, comparison.kernel, comparison.disagreement),
            {"max_disagreement": comparison.max_disagreement},
        )
    write_table(cfg, stem, table, artifacts)
    return 0


def heat_command(cfg: RunConfig, artifacts: Artifacts) -> int:
    p, settings = cfg.parameter(), cfg.settings()
    f, x = function_from_name(cfg.fn, p, cfg.seed), cfg.grid.points()
    return _two_paths(
        cfg,
        "heat",
        lambda: heat_apply(f, p, cfg.t, x, N=cfg.N, settings=settings),
        lambda: heat_apply(f, p, cfg.t, x, EvaluationPath.KERNEL, settings=settings),
        artifacts,
    )


def poisson_command(cfg: RunConfig, artifacts: Artifacts) -> int:
    p, settings = cfg.parameter(), cfg.settings()
    f, x = function_from_name(cfg.fn, p, cfg.seed), cfg.grid.points()
    return _two_paths(
        cfg,
        "poisson",
        lambda: poisson_apply(f, p, cfg.t, x, N=cfg.N, settings=settings),
        lambda: poisson_apply(f, p, cfg.t, x, EvaluationPath.KERNEL, settings=settings),
        artifacts,
    )


def conjugate_command(cfg: RunConfig, artifacts: Artifacts) -> int:
    p, settings = cfg.parameter(), cfg.settings()
    f, x = function_from_name(cfg.fn, p, cfg.seed), cfg.grid.points()
    return _two_paths(
        cfg,
        "conjugate",
        lambda: conjugate_apply(f, p, cfg.t, cfg.sign, x, N=cfg.N, settings=settings),
        lambda: conjugate_apply(
            f, p, cfg.t, cfg.sign, x, EvaluationPath.KERNEL, settings=settings
        ),
        artifacts,
    )


def hilbert_command(cfg: RunConfig, artifacts: Artifacts) -> int:
    """H_k^+- f by coefficient shift and by principal value, point by point."""
    p, settings = cfg.parameter(), cfg.settings()
    f, x = function_from_name(cfg.fn, p, cfg.seed), cfg.grid.points()

    def pv(x0: float) -> float:
        return float(hilbert_apply(f, p, cfg.sign, x0, Method.PV, settings=settings))

    comparison = compare_paths(
        lambda: hilbert_apply(f, p, cfg.sign, x, N=cfg.N, settings=settings),
        lambda: _parallel_map(cfg, pv, x),
        x,
        "hilbert",
        max(HILBERT_PATH_THRESHOLD, cfg.tolerance("path_disagreement", 1e-5)),
    )
    table = Table(
        ["x", "spectral", "pv", "disagreement"],
        _columns(x, comparison.spectral, comparison.kernel, comparison.disagreement),
        {"max_disagreement": comparison.max_disagreement},
    )
    write_table(cfg, "hilbert", table, artifacts)
    return 0


def expand_command(cfg: RunConfig, artifacts: Artifacts) -> int:
    """Coefficients a_0..a_N of the chosen function, tail energy in the header."""
    p = cfg.parameter()
    f = function_from_name(cfg.fn, p, cfg.seed)
    c = analyze(f, p, cfg.N, settings=cfg.settings())
    tail = c.tail_energy()
    if tail > 1e-10:
        log.warning(f"tail energy {tail:.2e}: N={cfg.N} does not resolve {cfg.fn}")
    rows = [[n, a] for n, a in enumerate(c.a.tolist())]
    meta = {"fn": cfg.fn, "tail_energy": tail}
    write_table(cfg, "expand", Table(["n", "a_n"], rows, meta), artifacts)
    return 0


def verify_command(cfg: RunConfig, artifacts: Artifacts) -> int:
    """Full verification suite; exit 1 when any check fails."""
    context = SuiteContext(
        cfg.parameter(), cfg.settings(), cfg.N, cfg.seed, cfg.grid.points(), cfg.checks
    )
    suite = VerificationSuite(context, workers=cfg.workers, header=cfg.echo())
    report = suite.run()
    json_path = artifacts.add(
        report.save_json(artifact_path(cfg, "verification", "json"), timings=cfg.timings)
    )
    csv_path = artifact_path(cfg, "verification", "csv")
    report.save_csv(csv_path, cfg.header_lines(), cfg.output.precision, timings=cfg.timings)
    artifacts.add(csv_path)
    for record in report.failures:
        log.error(f"Check failed: {record.name} ({record.anchor}) {record.detail}")
    log.info(f"{report.summary()} - report in {json_path} and {csv_path}")
    return 0 if report.passed else 1


def bench_command(cfg: RunConfig, artifacts: Artifacts) -> int:
    rows = run_benchmarks(cfg)
    columns = ["strategy", "reference", "cost", "max_error"]
    if cfg.timings:
        columns.append("seconds")
    table = Table(columns, [row.as_list(cfg.timings) for row in rows])
    write_table(cfg, "bench", table, artifacts)
    return 0


COMMAND_HANDLERS: dict[str, Callable[[RunConfig, Artifacts], int]] = {
    "basis": basis_command,
    "kernel": kernel_command,
    "heat": heat_command,
    "poisson": poisson_command,
    "hilbert": hilbert_command,
    "conjugate": conjugate_command,
    "expand": expand_command,
    "verify": verify_command,
    "bench": bench_command,
}
