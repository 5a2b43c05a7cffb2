"""
Accuracy against cost for the kernel evaluation strategies: Mehler closed form against
truncated series, the two Poisson kernel paths at several tolerances, and principal
value epsilon schedules.
"""

from __future__ import annotations

import math
import time
from collections.abc import Callable
from dataclasses import dataclass, replace
from typing import Any

import numpy as np
from loguru import logger

from src.core.config.manager import RunConfig
from src.core.numerics.kernels import (
    mehler_kernel,
    mehler_series,
    mehler_series_degree,
    poisson_kernel,
    poisson_kernel_u,
)
from src.core.numerics.quadrature import truncation_exponents
from src.core.numerics.samples import function_from_name
from src.core.numerics.transforms import Method, hilbert_apply, hilbert_pv

SERIES_DEGREES = (30, 60, 120)
UNIT_INTERVAL_TOLERANCES = (1e-6, 1e-8, 1e-10)
PV_LEVELS = (4, 5, 6, 7, 8)
PV_STARTS = (0.2, 0.1)

log = logger.bind(name="DunklHermite.Bench")


@dataclass(frozen=True)
class BenchRow:
    strategy: str
    reference: str
    cost: str
    max_error: float
    seconds: float

    def as_list(self, timings: bool) -> list[Any]:
        row: list[Any] = [self.strategy, self.reference, self.cost, self.max_error]
        if timings:
            row.append(self.seconds)
        return row


def _timed(func: Callable[[], Any]) -> tuple[Any, float]:
    start = time.perf_counter()
    value = func()
    return value, time.perf_counter() - start


def _error(value: Any, reference: Any) -> float:
    return float(np.max(np.abs(np.asarray(value, dtype=float) - np.asarray(reference))))


def mehler_rows(cfg: RunConfig) -> list[BenchRow]:
    p, r = cfg.parameter(), cfg.r
    y = cfg.grid.points()
    closed, seconds = _timed(lambda: mehler_kernel(p, r, y, cfg.x))
    rows = [BenchRow("mehler_closed_form", "closed form", "1 evaluation", 0.0, seconds)]
    for degree in (*SERIES_DEGREES, mehler_series_degree(r)):
        series, seconds = _timed(lambda degree=degree: mehler_series(p, r, y, cfg.x, degree))
        rows.append(
            BenchRow("mehler_series", "closed form", f"N={degree}", _error(series, closed), seconds)
        )
    return rows


def poisson_rows(cfg: RunConfig) -> list[BenchRow]:
    p, settings = cfg.parameter(), cfg.settings()
    y = cfg.grid.points()
    reference, seconds = _timed(
        lambda: poisson_kernel_u(p, cfg.t, cfg.x, y, settings=settings)
    )
    rows = [BenchRow("poisson_u_form", "u form", f"tol={settings.halfline_tol:g}", 0.0, seconds)]
    for tol in UNIT_INTERVAL_TOLERANCES:
        tuned = replace(settings, unit_interval_tol=tol)
        value, seconds = _timed(
            lambda tuned=tuned: poisson_kernel(p, cfg.t, cfg.x, y, settings=tuned)
        )
        rows.append(
            BenchRow("poisson_r_form", "u form", f"tol={tol:g}", _error(value, reference), seconds)
        )
    return rows


def pv_rows(cfg: RunConfig) -> list[BenchRow]:
    p, settings = cfg.parameter(), cfg.settings()
    f = function_from_name(cfg.fn, p, cfg.seed)
    log.debug(f"PV fit exponents at x={cfg.x:g}: {truncation_exponents(p, cfg.x)}")
    reference = float(hilbert_apply(f, p, cfg.sign, cfg.x, Method.SPECTRAL, N=cfg.N))
    rows = []
    for start in PV_STARTS:
        for levels in PV_LEVELS:
            tuned = replace(settings, pv_start=start, pv_levels=levels)
            result, seconds = _timed(
                lambda tuned=tuned: hilbert_pv(f, p, cfg.sign, cfg.x, settings=tuned)
            )
            rows.append(
                BenchRow(
                    "pv_schedule",
                    "spectral shift",
                    f"start={start:g} levels={levels}",
                    abs(result.value - reference),
                    seconds,
                )
            )
    return rows


def run_benchmarks(cfg: RunConfig) -> list[BenchRow]:
    rows = [*mehler_rows(cfg), *poisson_rows(cfg), *pv_rows(cfg)]
    for row in rows:
        log.debug(f"{row.strategy} [{row.cost}]: error {row.max_error:.2e} in {row.seconds:.3f}s")
    if any(not math.isfinite(row.max_error) for row in rows):
        log.warning("Some strategies returned non-finite errors")
    return rows
