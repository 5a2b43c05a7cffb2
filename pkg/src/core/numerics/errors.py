"""
Exception hierarchy for the Dunkl-Hermite numerics.
Library code raises these; only the CLI layer turns them into exit codes.
"""

from __future__ import annotations


class DunklHermiteError(Exception):
    """Base class for every error raised by the toolkit."""


class DomainError(DunklHermiteError, ValueError):
    """An argument lies outside the domain of the operation."""


class ConvergenceError(DunklHermiteError, ArithmeticError):
    """A series, fit or iteration did not reach its stopping criterion."""


class QuadratureError(ConvergenceError):
    """A quadrature did not reach tolerance or produced non-finite values."""


class PrincipalValueError(ConvergenceError):
    """The truncated integrals I(eps_j) do not form a Cauchy sequence."""


class DecayClassError(DunklHermiteError, ValueError):
    """The chosen scheme does not match the decay class of the integrand."""


class EvaluationError(DunklHermiteError):
    """A user function could not be evaluated (non-finite values)."""


class PathDisagreementError(DunklHermiteError):
    """Two evaluation paths of the same quantity disagree beyond the threshold."""

    def __init__(self, what: str, first: float, second: float, threshold: float):
        self.what = what
        self.first = first
        self.second = second
        self.threshold = threshold
        super().__init__(
            f"{what}: paths disagree by {abs(first - second):.3e} "
            f"(threshold {threshold:.1e}; {first!r} vs {second!r})"
        )


class ConfigError(DunklHermiteError, ValueError):
    """Malformed configuration, unknown keys or contradictory flags."""
