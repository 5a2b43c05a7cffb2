"""
Integral kernels of the Dunkl-Hermite semigroups and singular integrals.

Mehler U_k, heat P_k, Poisson A_k (r-form and u-form), the Hilbert kernels
R_{k,1}, R_{k,2}, R_k^+- with K_s and beta(s), the subordination weight L(t, r) and the
conjugate Poisson kernels Q_k, M_k. Every closed form is assembled in log space and
exponentiated once; E_k enters through its scaled logarithm log E_k - |w|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import ArrayLike

from .errors import DomainError, PathDisagreementError
from .quadrature import (
    DEFAULT_SETTINGS,
    HalflineDecay,
    QuadratureSettings,
    SingularitySpec,
    Substitution,
    halfline_integrate,
    unit_interval_integrate,
)
from .special_functions import (
    DunklParameter,
    FloatArray,
    Sign,
    dunkl_hermite_functions,
    log_dunkl_kernel_scaled,
)

DIAGONAL_EXCLUSION = 1e-8
POISSON_PATH_THRESHOLD = 1e-7
LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
LOG_SQRT_2_OVER_PI = 0.5 * math.log(2.0 / math.pi)

_EXP_RIGHT = SingularitySpec(0.0, 0.0, Substitution.EXP_RIGHT)


def _check_time(t: float, what: str) -> float:
    t = float(t)
    if not t > 0 or not math.isfinite(t):
        raise DomainError(f"{what}: t must be positive, got {t!r}")
    return t


def _check_unit(value: ArrayLike, name: str, what: str) -> FloatArray:
    arr = np.asarray(value, dtype=float)
    if np.any(~(arr > 0)) or np.any(~(arr < 1)):
        raise DomainError(f"{what}: {name} must lie in (0, 1), got {value!r}")
    return arr


def _pair(x: ArrayLike, y: ArrayLike) -> tuple[FloatArray, FloatArray, bool]:
    xs, ys = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    return xs, ys, np.ndim(x) == 0 and np.ndim(y) == 0


def _out(values: Any, scalar: bool) -> Any:
    return float(np.asarray(values).reshape(())) if scalar else values


@dataclass(frozen=True)
class KernelPoint:
    """A kernel argument (x, y) with the time or radial parameter the kernel needs."""

    x: float
    y: float
    t: float | None = None
    r: float | None = None
    s: float | None = None

    def __post_init__(self) -> None:
        if self.t is not None:
            _check_time(self.t, "KernelPoint")
        for name in ("r", "s"):
            value = getattr(self, name)
            if value is not None:
                _check_unit(value, name, "KernelPoint")


def _log_mehler_t(p: DunklParameter, t: Any, y: Any, z: Any) -> Any:
    """log U_k(e^{-2t}, y, z), written in t so that r -> 1 and r -> 0 stay accurate."""
    with np.errstate(over="ignore", divide="ignore"):
        sinh2t = np.sinh(2.0 * t)
        one_minus_r2 = -np.expm1(-4.0 * t)
        w = y * z / sinh2t
        # -(y^2 + z^2) / (2 sinh 2t) + |w| is regrouped as -(|y| - |z|)^2 / (2 sinh 2t) and E_k
        # enters through log(E_k) - |w|; no two large terms cancel as t -> 0.
        return (
            -p.log_mass
            - (p.k + 0.5) * np.log(one_minus_r2)
            - 0.5 * np.tanh(t) * (y * y + z * z)
            - (np.abs(y) - np.abs(z)) ** 2 / (2.0 * sinh2t)
            + log_dunkl_kernel_scaled(p, w)
        )


def _mehler_envelope(p: DunklParameter, r: float, x: Any, y: Any) -> Any:
    """log of e^{-(x^2+y^2)/2 - r^2 (x^2+y^2)/(1-r^2)} E_k(2rx/(1-r^2), y)."""
    one_minus_r2 = 1.0 - r * r
    w = 2.0 * r * x * y / one_minus_r2
    return (
        -0.5 * (1.0 - r) / (1.0 + r) * (x * x + y * y)
        - r * (np.abs(x) - np.abs(y)) ** 2 / one_minus_r2
        + log_dunkl_kernel_scaled(p, w)
    )


def mehler_kernel(p: DunklParameter, r: float, y: ArrayLike, z: ArrayLike) -> Any:
    """
    U_k(r, y, z) = c_k (1-r^2)^{-(k+1/2)} e^{-(1+r^2)(y^2+z^2)/(2(1-r^2))} E_k(2ry/(1-r^2), z).
    """
    r = float(_check_unit(r, "r", "mehler_kernel"))
    ys, zs, scalar = _pair(y, z)
    return _out(np.exp(_log_mehler_t(p, -0.5 * math.log(r), ys, zs)), scalar)


def mehler_series(p: DunklParameter, r: float, y: ArrayLike, z: ArrayLike, N: int) -> Any:
    """sum_{n <= N} r^n h_n^k(y) h_n^k(z)."""
    r = float(_check_unit(r, "r", "mehler_series"))
    ys, zs, scalar = _pair(y, z)
    hy = dunkl_hermite_functions(p, N, ys)
    hz = dunkl_hermite_functions(p, N, zs)
    powers = r ** np.arange(N + 1, dtype=float)
    return _out(np.einsum("n,n...,n...->...", powers, hy, hz), scalar)


def mehler_series_degree(r: float, tol: float = 1e-12, minimum: int = 120) -> int:
    """Smallest degree whose geometric tail r^N / (1 - r) is below tol, at least `minimum`."""
    return max(minimum, math.ceil(math.log(tol * (1.0 - r)) / math.log(r)))


def log_heat_kernel(p: DunklParameter, t: Any, x: Any, y: Any) -> Any:
    return _log_mehler_t(p, t, x, y) - t * (2.0 * p.k + 1.0)


def heat_kernel(p: DunklParameter, t: float, x: ArrayLike, y: ArrayLike) -> Any:
    """P_k(t, x, y) = e^{-t(2k+1)} U_k(e^{-2t}, x, y)."""
    t = _check_time(t, "heat_kernel")
    xs, ys, scalar = _pair(x, y)
    return _out(np.exp(log_heat_kernel(p, t, xs, ys)), scalar)


def k_s_kernel(p: DunklParameter, s: float, x: ArrayLike, y: ArrayLike) -> Any:
    """K_s(x, y) = c_k ((1-s^2)/(4s))^{k+1/2} e^{-(s+1/s)(x^2+y^2)/4} E_k((1-s^2)x/(2s), y)."""
    s = float(_check_unit(s, "s", "k_s_kernel"))
    xs, ys, scalar = _pair(x, y)
    log_k = (
        -p.log_mass
        + (p.k + 0.5) * math.log((1.0 - s * s) / (4.0 * s))
        - 0.25 * s * (np.abs(xs) + np.abs(ys)) ** 2
        - (np.abs(xs) - np.abs(ys)) ** 2 / (4.0 * s)
        + log_dunkl_kernel_scaled(p, (1.0 - s * s) / (2.0 * s) * xs * ys)
    )
    return _out(np.exp(log_k), scalar)


def k_s_dunkl_derivative(p: DunklParameter, s: float, x: ArrayLike, y: ArrayLike) -> Any:
    """Closed form T_{k,x} K_s(x, y) = -[s(x+y) + (x-y)/s] K_s(x, y) / 2."""
    xs, ys, scalar = _pair(x, y)
    values = -0.5 * (s * (xs + ys) + (xs - ys) / s) * k_s_kernel(p, s, xs, ys)
    return _out(values, scalar)


def beta_weight(p: DunklParameter, s: ArrayLike) -> Any:
    """beta(s) = (1-s)^{k-1/2} s^{-(k+1/2)} (log((1+s)/(1-s)))^{-1/2}."""
    ss = _check_unit(s, "s", "beta_weight")
    values = (1.0 - ss) ** (p.k - 0.5) * ss ** -(p.k + 0.5) / np.sqrt(2.0 * np.arctanh(ss))
    return _out(values, np.ndim(s) == 0)


def subordination_weight_L(t: float, r: ArrayLike) -> Any:
    """L(t, r) = t e^{t^2/(2 log r)} / (sqrt(2 pi) r (-log r)^{3/2})."""
    t = _check_time(t, "subordination_weight_L")
    rs = _check_unit(r, "r", "subordination_weight_L")
    log_r = np.log(rs)
    values = np.exp(
        math.log(t) + t * t / (2.0 * log_r) - LOG_SQRT_2PI - log_r - 1.5 * np.log(-log_r)
    )
    return _out(values, np.ndim(r) == 0)


def subordination(beta: float, *, settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """(beta / sqrt(4 pi)) * integral_0^inf e^{-s} s^{-3/2} e^{-beta^2/(4s)} ds = e^{-beta}."""
    beta = _check_time(beta, "subordination")
    prefactor = math.log(beta) - 0.5 * math.log(4.0 * math.pi)

    def g(s: float) -> float:
        return math.exp(prefactor - s - 1.5 * math.log(s) - beta * beta / (4.0 * s))

    return float(halfline_integrate(g, HalflineDecay.EXPONENTIAL, settings=settings).value)


def poisson_kernel_u(
    p: DunklParameter,
    t: float,
    x: ArrayLike,
    y: ArrayLike,
    *,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> Any:
    """A_k = (t / sqrt(4 pi)) integral_0^inf P_k(u, x, y) u^{-3/2} e^{-t^2/(4u)} du."""
    t = _check_time(t, "poisson_kernel_u")
    xs, ys, scalar = _pair(x, y)
    prefactor = math.log(t) - 0.5 * math.log(4.0 * math.pi)

    def g(u: float) -> Any:
        return np.exp(
            prefactor + log_heat_kernel(p, u, xs, ys) - 1.5 * math.log(u) - t * t / (4.0 * u)
        )

    return _out(halfline_integrate(g, settings=settings).value, scalar)


def poisson_kernel(
    p: DunklParameter,
    t: float,
    x: ArrayLike,
    y: ArrayLike,
    *,
    cross_check: bool = False,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> Any:
    """
    A_k(t, x, y) = integral_0^1 L(t, r) U_k(r, x, y) r^{k+1/2} dr.

    The r-integral runs directly on (0, 1), with s = sigma^2 at r = 0 when k < 1/2.
    With cross_check the u-form is evaluated too and a disagreement above 1e-7 raises
    PathDisagreementError.
    """
    t = _check_time(t, "poisson_kernel")
    xs, ys, scalar = _pair(x, y)
    head = math.log(t) - LOG_SQRT_2PI

    def g(r: float) -> Any:
        log_r = math.log(r)
        log_l = head + t * t / (2.0 * log_r) - log_r - 1.5 * math.log(-log_r)
        return np.exp(
            log_l + _log_mehler_t(p, -0.5 * log_r, xs, ys) + (p.k + 0.5) * log_r
        )

    spec = SingularitySpec.for_exponents(p.k - 0.5, 0.0)
    value = unit_interval_integrate(g, spec, settings=settings).value
    if cross_check:
        other = poisson_kernel_u(p, t, xs, ys, settings=settings)
        gap = float(np.max(np.abs(np.asarray(value) - other)))
        if gap > POISSON_PATH_THRESHOLD * max(1.0, float(np.max(np.abs(value)))):
            raise PathDisagreementError(
                "poisson_kernel", float(np.max(value)), float(np.max(other)), POISSON_PATH_THRESHOLD
            )
    return _out(value, scalar)


def poisson_kernel_ladder(
    p: DunklParameter,
    t: float,
    x: ArrayLike,
    y: ArrayLike,
    sign: Sign | str,
    *,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> Any:
    """
    (T_{k,x} +- x) A_k(t, x, y) by differentiation under the r-integral.

    The + form carries (y - rx) r^{k+1/2}, the - form (ry - x) r^{k-1/2}.
    """
    t = _check_time(t, "poisson_kernel_ladder")
    sign = Sign.parse(sign)
    xs, ys, scalar = _pair(x, y)
    k = p.k
    head = LOG_SQRT_2_OVER_PI - p.log_mass + math.log(t)
    power = k + 0.5 if sign is Sign.PLUS else k - 0.5

    def g(r: float) -> Any:
        log_r = math.log(r)
        one_minus_r2 = 1.0 - r * r
        factor = (ys - r * xs) if sign is Sign.PLUS else (r * ys - xs)
        log_rest = (
            head
            + t * t / (2.0 * log_r)
            - 1.5 * math.log(-log_r)
            - (k + 1.5) * math.log(one_minus_r2)
            + power * log_r
        )
        return factor * np.exp(log_rest + _mehler_envelope(p, r, xs, ys))

    return _out(unit_interval_integrate(g, _EXP_RIGHT, settings=settings).value, scalar)


def _conjugate_kernel(
    p: DunklParameter,
    t: float,
    x: ArrayLike,
    y: ArrayLike,
    sign: Sign,
    settings: QuadratureSettings,
) -> Any:
    xs, ys, scalar = _pair(x, y)
    k = p.k
    head = LOG_SQRT_2_OVER_PI - p.log_mass
    power = k + 0.5 if sign is Sign.PLUS else k - 0.5

    def g(r: float) -> Any:
        log_r = math.log(r)
        one_minus_r2 = 1.0 - r * r
        factor = (ys - r * xs) if sign is Sign.PLUS else (xs - r * ys)
        log_weight = (
            head
            + 0.5 * math.log(one_minus_r2)
            - 0.5 * math.log(-log_r)
            + t * t / (2.0 * log_r)
            + power * log_r
        )
        log_rest = log_weight - (k + 2.0) * math.log(one_minus_r2)
        return factor * np.exp(log_rest + _mehler_envelope(p, r, xs, ys))

    return _out(unit_interval_integrate(g, _EXP_RIGHT, settings=settings).value, scalar)


def conjugate_kernel_Q(
    p: DunklParameter,
    t: float,
    x: ArrayLike,
    y: ArrayLike,
    *,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> Any:
    """Q_k(t, x, y): factor (y - rx) and weight W_{1,k}(t, r) with r^{k+1/2}."""
    t = _check_time(t, "conjugate_kernel_Q")
    return _conjugate_kernel(p, t, x, y, Sign.PLUS, settings)


def conjugate_kernel_M(
    p: DunklParameter,
    t: float,
    x: ArrayLike,
    y: ArrayLike,
    *,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> Any:
    """M_k(t, x, y): factor (x - ry) and weight Y_k(t, r) with r^{k-1/2}."""
    t = _check_time(t, "conjugate_kernel_M")
    return _conjugate_kernel(p, t, x, y, Sign.MINUS, settings)


def hilbert_kernel_parts(
    p: DunklParameter,
    x: ArrayLike,
    y: ArrayLike,
    *,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> tuple[Any, Any]:
    """
    (R_{k,1}, R_{k,2}) off the diagonal.

    With s = tanh u the s-integrals against (log((1+s)/(1-s)))^{-1/2} ds/(1-s^2) become
    half-line integrals against (2u)^{-1/2} du, and K_{tanh u} = P_k(u, ., .).
    """
    xs, ys, scalar = _pair(x, y)
    if np.any(np.abs(xs - ys) < DIAGONAL_EXCLUSION):
        raise DomainError(
            f"hilbert kernel is not evaluated within {DIAGONAL_EXCLUSION:g} of the diagonal"
        )
    flat_x, flat_y = xs.ravel(), ys.ravel()
    size = flat_x.size

    def g(u: float) -> Any:
        s = math.tanh(u)
        weight = np.exp(log_heat_kernel(p, u, flat_x, flat_y)) / math.sqrt(2.0 * u)
        first = -0.5 * (s * (flat_x + flat_y) + (flat_x - flat_y) / s) * weight
        return np.concatenate([first, flat_x * weight])

    values = np.asarray(halfline_integrate(g, settings=settings).value)
    r1 = values[:size].reshape(xs.shape)
    r2 = values[size:].reshape(xs.shape)
    return _out(r1, scalar), _out(r2, scalar)


def hilbert_kernel(
    p: DunklParameter,
    sign: Sign | str,
    x: ArrayLike,
    y: ArrayLike,
    *,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> Any:
    """R_k^+-(x, y) = sqrt(2/pi) (R_{k,1} +- R_{k,2})."""
    sign = Sign.parse(sign)
    r1, r2 = hilbert_kernel_parts(p, x, y, settings=settings)
    value = math.sqrt(2.0 / math.pi) * (np.asarray(r1) + sign.factor * np.asarray(r2))
    return _out(value, np.ndim(r1) == 0)


KERNEL_NAMES = ("mehler", "heat", "poisson", "k_s", "hilbert", "conjugate_q", "conjugate_m")


def evaluate_kernel(
    name: str,
    p: DunklParameter,
    x: ArrayLike,
    y: ArrayLike,
    *,
    t: float | None = None,
    r: float | None = None,
    s: float | None = None,
    sign: Sign | str = Sign.PLUS,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> Any:
    """Dispatch a kernel by name over broadcast (x, y) arrays."""
    point = KernelPoint(0.0, 0.0, t, r, s)
    needs = {
        "mehler": "r",
        "k_s": "s",
        "heat": "t",
        "poisson": "t",
        "conjugate_q": "t",
        "conjugate_m": "t",
    }
    if name not in KERNEL_NAMES:
        raise DomainError(f"unknown kernel {name!r}; expected one of {', '.join(KERNEL_NAMES)}")
    required = needs.get(name)
    if required is not None and getattr(point, required) is None:
        raise DomainError(f"kernel {name!r} needs parameter {required}")
    if name == "mehler":
        return mehler_kernel(p, float(r), x, y)  # type: ignore[arg-type]
    if name == "k_s":
        return k_s_kernel(p, float(s), x, y)  # type: ignore[arg-type]
    if name == "heat":
        return heat_kernel(p, float(t), x, y)  # type: ignore[arg-type]
    if name == "poisson":
        return poisson_kernel(p, float(t), x, y, settings=settings)  # type: ignore[arg-type]
    if name == "conjugate_q":
        return conjugate_kernel_Q(p, float(t), x, y, settings=settings)  # type: ignore[arg-type]
    if name == "conjugate_m":
        return conjugate_kernel_M(p, float(t), x, y, settings=settings)  # type: ignore[arg-type]
    return hilbert_kernel(p, sign, x, y, settings=settings)
