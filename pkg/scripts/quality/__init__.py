#!/usr/bin/env python3
"""
Quality scripts package
"""

from __future__ import annotations

__all__ = []
