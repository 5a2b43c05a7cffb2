"""
Command-line front end of the Dunkl-Hermite toolkit.
"""

from __future__ import annotations

from .app import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, main, run

__all__ = ["EXIT_FAILURE", "EXIT_OK", "EXIT_USAGE", "main", "run"]
