"""
Verification report: an append-only, thread-safe record of identity checks.
"""

from __future__ import annotations

import math
import threading
from collections.abc import Iterator
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any

from loguru import logger

from ..utils.csv_helpers import write_csv
from ..utils.json_helpers import save_json_file


@dataclass(frozen=True)
class CheckRecord:
    """One check: `passed` is true exactly when residual <= tolerance."""

    name: str
    anchor: str
    residual: float
    tolerance: float
    passed: bool
    runtime_ms: float | None = None
    index: int = 0
    detail: str = ""

    @classmethod
    def measured(
        cls,
        name: str,
        anchor: str,
        residual: float,
        tolerance: float,
        *,
        runtime_ms: float | None = None,
        index: int = 0,
        detail: str = "",
    ) -> CheckRecord:
        residual = float(residual)
        passed = math.isfinite(residual) and residual <= tolerance
        return cls(name, anchor, residual, float(tolerance), passed, runtime_ms, index, detail)

    @classmethod
    def failed(
        cls,
        name: str,
        anchor: str,
        tolerance: float,
        error: BaseException,
        *,
        runtime_ms: float | None = None,
        index: int = 0,
    ) -> CheckRecord:
        """A check that raised: residual inf, the error in `detail`."""
        detail = f"{type(error).__name__}: {error}"
        return cls(name, anchor, math.inf, float(tolerance), False, runtime_ms, index, detail)

    def to_dict(self, timings: bool = True) -> dict[str, Any]:
        data = asdict(self)
        data["residual"] = self.residual if math.isfinite(self.residual) else "inf"
        if not timings:
            data.pop("runtime_ms")
        return data


class VerificationReport:
    """
    Collects CheckRecords from concurrent workers.
    Records can only be appended; exports are ordered by check index.
    """

    def __init__(self, header: dict[str, Any] | None = None):
        self.log = logger.bind(name="DunklHermite.Report")
        self._records: list[CheckRecord] = []
        self._lock = threading.Lock()
        self.header = dict(header or {})

    def append(self, record: CheckRecord) -> None:
        with self._lock:
            if any(r.name == record.name for r in self._records):
                raise ValueError(f"check {record.name!r} is already recorded")
            self._records.append(record)
        status = "PASS" if record.passed else "FAIL"
        self.log.info(
            f"{status} {record.name}: residual {record.residual:.3e} "
            f"(tolerance {record.tolerance:.1e})"
            + (f" - {record.detail}" if record.detail and not record.passed else "")
        )

    @property
    def records(self) -> tuple[CheckRecord, ...]:
        with self._lock:
            return tuple(sorted(self._records, key=lambda r: (r.index, r.name)))

    def __iter__(self) -> Iterator[CheckRecord]:
        return iter(self.records)

    def __len__(self) -> int:
        with self._lock:
            return len(self._records)

    @property
    def passed(self) -> bool:
        """True when every recorded check passed (and at least one was recorded)."""
        records = self.records
        return bool(records) and all(r.passed for r in records)

    @property
    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if not r.passed]

    def summary(self) -> str:
        records = self.records
        good = sum(r.passed for r in records)
        return f"{good}/{len(records)} checks passed"

    def to_dict(self, timings: bool = False) -> dict[str, Any]:
        return {
            "config": self.header,
            "passed": self.passed,
            "checks": [r.to_dict(timings) for r in self.records],
        }

    def save_json(self, path: Path, timings: bool = False) -> Path:
        return save_json_file(Path(path), self.to_dict(timings))

    def save_csv(
        self,
        path: Path,
        header_lines: list[str] | None = None,
        precision: int = 17,
        timings: bool = False,
    ) -> Path:
        """Flat CSV: check, anchor, residual, tolerance, passed (and runtime_ms)."""
        columns = ["check", "anchor", "residual", "tolerance", "passed"]
        if timings:
            columns.append("runtime_ms")
        rows = []
        for r in self.records:
            row: list[Any] = [r.name, r.anchor, r.residual, r.tolerance, r.passed]
            if timings:
                row.append(r.runtime_ms if r.runtime_ms is not None else math.nan)
            rows.append(row)
        return write_csv(Path(path), columns, rows, header_lines or [], precision)
