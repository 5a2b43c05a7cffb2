"""
Path utilities for the Dunkl-Hermite toolkit.
Resolves the logs and artifacts directories.
"""

from __future__ import annotations

import os
from pathlib import Path

LOGS_DIR_ENV = "DUNKL_HERMITE_LOGS"


def get_logs_dir() -> Path:
    """Directory for log files: $DUNKL_HERMITE_LOGS, else `logs/` under the working directory."""
    override = os.environ.get(LOGS_DIR_ENV)
    return Path(override) if override else Path("logs")


def get_artifacts_dir() -> Path:
    """Default directory for CSV / JSON artifacts, `artifacts/` under the working directory."""
    return Path("artifacts")
