"""
Configuration package for the Dunkl-Hermite toolkit
"""

from __future__ import annotations

from .manager import ConfigManager, RunConfig, build_parser, parse_config

__all__ = ["ConfigManager", "RunConfig", "build_parser", "parse_config"]
