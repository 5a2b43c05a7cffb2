"""
Dunkl-Hermite Toolkit - Main Source Package

Numerical harmonic analysis for the rank-one Dunkl harmonic oscillator: basis
functions, kernels, semigroups, conjugate functions and Riesz transforms.
"""

from __future__ import annotations

from .version import __version__

__author__ = "Dunkl-Hermite Toolkit Team"
