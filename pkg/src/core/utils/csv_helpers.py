"""
CSV artifact helpers.
Numeric columns are written as shortest round-trip decimals at a configured number of
significant digits; header lines start with '#'.
"""

from __future__ import annotations

import csv
import os
from collections.abc import Iterable, Iterator, Sequence
from contextlib import contextmanager
from pathlib import Path
from typing import Any

import numpy as np
from loguru import logger


def format_number(value: Any, precision: int = 17) -> str:
    """Shortest decimal that round-trips at `precision` significant digits."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    x = float(value)
    if not np.isfinite(x):
        return "nan" if np.isnan(x) else ("inf" if x > 0 else "-inf")
    if x == 0.0:
        return "0"
    if 1e-4 <= abs(x) < 1e16:
        return np.format_float_positional(
            x, precision=precision, unique=True, fractional=False, trim="-"
        )
    return np.format_float_scientific(x, precision=precision - 1, unique=True, trim="-")


@contextmanager
def atomic_artifact(path: Path) -> Iterator[Path]:
    """
    Yield a temporary sibling of `path`; rename it over `path` on success.
    On any exception the temporary file is removed and the exception re-raised.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(f".{path.name}.partial")
    try:
        yield tmp
        os.replace(tmp, path)
    except BaseException:
        if tmp.exists():
            tmp.unlink()
            logger.warning(f"Removed partial artifact {tmp}")
        raise


def write_csv(
    path: Path,
    columns: Sequence[str],
    rows: Iterable[Sequence[Any]],
    header_lines: Sequence[str] = (),
    precision: int = 17,
) -> Path:
    """Write a CSV artifact atomically. Header lines are prefixed with '# '."""
    path = Path(path)
    with atomic_artifact(path) as tmp:
        with open(tmp, "w", encoding="utf-8", newline="") as f:
            for line in header_lines:
                f.write(f"# {line}\n")
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([format_number(v, precision) for v in row])
    logger.debug(f"CSV written to {path}")
    return path


def read_csv(path: Path) -> tuple[list[str], list[str], list[list[str]]]:
    """Return (header lines without '# ', column names, raw string rows)."""
    header: list[str] = []
    with open(path, encoding="utf-8", newline="") as f:
        lines = f.read().splitlines()
    body = []
    for line in lines:
        if line.startswith("#") and not body:
            header.append(line[1:].strip())
        else:
            body.append(line)
    reader = list(csv.reader(body))
    if not reader:
        return header, [], []
    return header, reader[0], reader[1:]
