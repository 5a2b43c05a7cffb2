"""
Services package for the Dunkl-Hermite toolkit
"""

from __future__ import annotations

__all__ = []
