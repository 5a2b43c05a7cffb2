"""
JSON helpers for configuration files and artifacts.
Artifacts are written with sorted keys so identical data gives identical bytes.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from loguru import logger

from .csv_helpers import atomic_artifact


def load_json_file(path: Path, default: Any = None) -> Any:
    """
    Load data from a JSON file.

    Args:
        path: Path to the JSON file
        default: Value returned when the file does not exist

    Returns:
        Loaded data or default value

    Raises:
        ValueError: if the file exists but is not valid JSON
    """
    path = Path(path)
    if not path.exists():
        return default

    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        logger.error(f"Failed to load JSON from {path}: {e}")
        raise ValueError(f"{path} is not valid JSON: {e}") from e


def dumps_stable(data: Any) -> str:
    """Deterministic JSON text: sorted keys, 2-space indent, trailing newline."""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False, allow_nan=True) + "\n"


def save_json_file(path: Path, data: Any) -> Path:
    """
    Save data to a JSON file atomically.
    Creates parent directories if they don't exist.

    Args:
        path: Path to the JSON file
        data: Data to save
    """
    path = Path(path)
    with atomic_artifact(path) as tmp:
        tmp.write_text(dumps_stable(data), encoding="utf-8")
    logger.debug(f"JSON written to {path}")
    return path
