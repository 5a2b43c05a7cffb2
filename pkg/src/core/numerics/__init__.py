"""
Numerics for the rank-one Dunkl harmonic oscillator.

Modules are layered bottom-up: special_functions, samples, quadrature, spectral,
kernels, transforms. Each module only imports from the ones before it.
"""

from __future__ import annotations

from .errors import (
    ConfigError,
    ConvergenceError,
    DecayClassError,
    DomainError,
    DunklHermiteError,
    EvaluationError,
    PathDisagreementError,
    PrincipalValueError,
    QuadratureError,
)
from .special_functions import DunklParameter, Sign

__all__ = [
    "ConfigError",
    "ConvergenceError",
    "DecayClassError",
    "DomainError",
    "DunklHermiteError",
    "DunklParameter",
    "EvaluationError",
    "PathDisagreementError",
    "PrincipalValueError",
    "QuadratureError",
    "Sign",
]
