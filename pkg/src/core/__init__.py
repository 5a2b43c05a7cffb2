"""
Core modules for the Dunkl-Hermite toolkit

This package contains:
- numerics: special functions, quadrature, kernels, spectral calculus, transforms
- config: run configuration and command line argument parsing
- services: logging, verification suite and reports
- utils: JSON/CSV artifact helpers and paths
"""

from __future__ import annotations

# Import config system
from .config.manager import ConfigManager, RunConfig, parse_config

# Import logger system
from .services.logger import setup_exception_handler, setup_root_logger

__all__ = [
    # Logger system
    "setup_root_logger",
    "setup_exception_handler",
    # Config system
    "parse_config",
    "ConfigManager",
    "RunConfig",
]
