"""
Sampled functions and the built-in test functions fed to the integral operators.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any

import numpy as np
from numpy.typing import ArrayLike
from scipy.interpolate import CubicSpline

from .errors import DomainError
from .special_functions import (
    DunklParameter,
    FloatArray,
    dunkl_hermite_fn,
    dunkl_hermite_functions,
)

BAND_LIMITED_DEGREE = 16
BAND_LIMITED_SEED = 20240601


class DecayClass(StrEnum):
    GAUSSIAN = "gaussian"
    COMPACT = "compact"
    GENERIC = "generic"


class Parity(StrEnum):
    EVEN = "even"
    ODD = "odd"
    NONE = "none"


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """
    A function on the line given by grid values plus metadata.

    When `evaluator` is set it is the exact (vectorized) function and calls go through
    it; otherwise calls interpolate the samples with a cubic spline, zero outside the
    grid for the gaussian and compact decay classes.
    """

    name: str
    grid: FloatArray
    values: FloatArray
    decay_class: DecayClass = DecayClass.GENERIC
    support: tuple[float, float] | None = None
    parity: Parity = Parity.NONE
    evaluator: Callable[[FloatArray], Any] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        grid = np.array(self.grid, dtype=float)
        values = np.array(self.values, dtype=float)
        if grid.ndim != 1 or grid.shape != values.shape:
            raise DomainError(
                f"{self.name}: grid and values must be 1-d of equal length "
                f"({grid.shape} vs {values.shape})"
            )
        if grid.size >= 2 and np.any(np.diff(grid) <= 0):
            raise DomainError(f"{self.name}: grid must be strictly increasing")
        if self.decay_class is DecayClass.COMPACT and self.support is None:
            raise DomainError(f"{self.name}: compact decay class requires a declared support")
        if self.support is not None and not self.support[0] < self.support[1]:
            raise DomainError(f"{self.name}: empty support {self.support}")
        grid.flags.writeable = False
        values.flags.writeable = False
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_callable(
        cls,
        name: str,
        func: Callable[[FloatArray], Any],
        grid: ArrayLike,
        decay_class: DecayClass = DecayClass.GAUSSIAN,
        support: tuple[float, float] | None = None,
        parity: Parity = Parity.NONE,
    ) -> SampledFunction:
        grid = np.asarray(grid, dtype=float)
        values = np.broadcast_to(np.asarray(func(grid), dtype=float), grid.shape)
        return cls(name, grid, values, decay_class, support, parity, func)

    def __call__(self, x: ArrayLike) -> Any:
        xs = np.asarray(x, dtype=float)
        if self.evaluator is not None:
            out = np.broadcast_to(np.asarray(self.evaluator(xs), dtype=float), xs.shape)
        else:
            out = self._spline(xs)
        if self.support is not None:
            out = np.where((xs < self.support[0]) | (xs > self.support[1]), 0.0, out)
        return float(out) if np.ndim(x) == 0 else np.array(out)

    def _spline(self, xs: FloatArray) -> FloatArray:
        spline = CubicSpline(self.grid, self.values, extrapolate=False)
        out = spline(xs)
        if self.decay_class is DecayClass.GENERIC:
            out = np.where(xs < self.grid[0], self.values[0], out)
            out = np.where(xs > self.grid[-1], self.values[-1], out)
        return np.nan_to_num(out, nan=0.0)


def default_grid(lo: float = -10.0, hi: float = 10.0, count: int = 2001) -> FloatArray:
    return np.linspace(lo, hi, count)


def smooth_step(s: ArrayLike) -> Any:
    """C-infinity step: 0 for s <= 0, 1 for s >= 1."""
    s = np.clip(np.asarray(s, dtype=float), 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore"):
        left = np.where(s > 0, np.exp(-1.0 / np.where(s > 0, s, 1.0)), 0.0)
        right = np.where(s < 1, np.exp(-1.0 / np.where(s < 1, 1.0 - s, 1.0)), 0.0)
    return left / (left + right)


def gaussian(scale: float = 1.0, center: float = 0.0) -> SampledFunction:
    """e^{-((x - center)/scale)^2}."""

    def func(x: FloatArray) -> FloatArray:
        return np.exp(-(((x - center) / scale) ** 2))

    parity = Parity.EVEN if center == 0.0 else Parity.NONE
    name = "gaussian" if (scale, center) == (1.0, 0.0) else f"gaussian(s={scale:g},c={center:g})"
    return SampledFunction.from_callable(
        name, func, default_grid(), DecayClass.GAUSSIAN, None, parity
    )


def bump(center: float = 0.0, width: float = 1.0) -> SampledFunction:
    """exp(-1 / (1 - u^2)) with u = (x - center) / width, supported on [c - w, c + w]."""

    def func(x: FloatArray) -> FloatArray:
        u = (np.asarray(x, dtype=float) - center) / width
        inside = np.abs(u) < 1.0
        safe = np.where(inside, 1.0 - u * u, 1.0)
        return np.where(inside, np.exp(-1.0 / safe), 0.0)

    grid = np.linspace(center - width, center + width, 401)
    return SampledFunction.from_callable(
        f"bump(c={center:g},w={width:g})",
        func,
        grid,
        DecayClass.COMPACT,
        (center - width, center + width),
        Parity.EVEN if center == 0.0 else Parity.NONE,
    )


def tapered_gaussian(
    center: float = 0.0, scale: float = 1.0, radius: float = 4.0
) -> SampledFunction:
    """
    Gaussian core e^{-((x-c)/scale)^2} cut off smoothly between radius/2 and radius.

    The result is C-infinity with compact support [c - radius, c + radius].
    """

    def func(x: FloatArray) -> FloatArray:
        d = np.abs(np.asarray(x, dtype=float) - center)
        cutoff = 1.0 - smooth_step(2.0 * d / radius - 1.0)
        return np.exp(-((d / scale) ** 2)) * cutoff

    grid = np.linspace(center - radius, center + radius, 801)
    return SampledFunction.from_callable(
        f"tapered(c={center:g},s={scale:g},R={radius:g})",
        func,
        grid,
        DecayClass.COMPACT,
        (center - radius, center + radius),
        Parity.EVEN if center == 0.0 else Parity.NONE,
    )


def hermite_element(p: DunklParameter, n: int) -> SampledFunction:
    """The basis function h_n^k."""

    def func(x: FloatArray) -> FloatArray:
        return np.asarray(dunkl_hermite_fn(p, n, x), dtype=float)

    return SampledFunction.from_callable(
        f"h{n}",
        func,
        default_grid(),
        DecayClass.GAUSSIAN,
        None,
        Parity.EVEN if n % 2 == 0 else Parity.ODD,
    )


def band_limited_coefficients(
    seed: int = BAND_LIMITED_SEED, degree: int = BAND_LIMITED_DEGREE, member: int = 0
) -> FloatArray:
    """Unit-norm coefficients of member `member` of the seeded band-limited family."""
    rng = np.random.default_rng([seed, member])
    coefficients = rng.standard_normal(degree + 1)
    return coefficients / np.linalg.norm(coefficients)


def band_limited(
    p: DunklParameter,
    seed: int = BAND_LIMITED_SEED,
    degree: int = BAND_LIMITED_DEGREE,
    member: int = 0,
) -> SampledFunction:
    """sum_{n <= degree} a_n h_n^k with seeded random unit-norm coefficients."""
    coefficients = band_limited_coefficients(seed, degree, member)

    def func(x: FloatArray) -> FloatArray:
        xs = np.asarray(x, dtype=float)
        return np.tensordot(coefficients, dunkl_hermite_functions(p, degree, xs), axes=1)

    return SampledFunction.from_callable(
        f"bandlimited(seed={seed},member={member})", func, default_grid(), DecayClass.GAUSSIAN
    )


def band_limited_family(
    p: DunklParameter, size: int = 20, seed: int = BAND_LIMITED_SEED
) -> list[SampledFunction]:
    return [band_limited(p, seed, BAND_LIMITED_DEGREE, member) for member in range(size)]


def schwartz_family(p: DunklParameter) -> list[SampledFunction]:
    """Five smooth rapidly decaying functions used by the Hilbert cross-checks."""
    return [
        gaussian(),
        gaussian(scale=1.2, center=0.5),
        hermite_element(p, 1),
        hermite_element(p, 2),
        band_limited(p),
    ]


def zero_function() -> SampledFunction:
    def func(x: FloatArray) -> FloatArray:
        return np.zeros_like(np.asarray(x, dtype=float))

    return SampledFunction.from_callable("zero", func, default_grid(), DecayClass.GAUSSIAN)


def function_from_name(
    name: str, p: DunklParameter, seed: int = BAND_LIMITED_SEED
) -> SampledFunction:
    """
    Resolve a CLI test-function name: gaussian, bump, tapered, bandlimited, zero or hN.
    """
    key = name.strip().lower()
    if key == "gaussian":
        return gaussian()
    if key == "bump":
        return bump()
    if key == "tapered":
        return tapered_gaussian()
    if key == "bandlimited":
        return band_limited(p, seed)
    if key == "zero":
        return zero_function()
    if key.startswith("h") and key[1:].isdigit():
        return hermite_element(p, int(key[1:]))
    raise DomainError(
        f"unknown test function {name!r} (expected gaussian, bump, tapered, bandlimited, zero, hN)"
    )
