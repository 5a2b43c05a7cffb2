"""
Operators in integral-kernel form and the quantities the theorems bound.

Heat G_k, Poisson F_k, Hilbert H_k^+- (principal value) and conjugate Poisson f_k^+-
applied through their kernels or through the spectral multipliers; PDE residuals with
spectral t-derivatives and numerical Dunkl derivatives; weighted L^p norms; norm-growth
fits; duality and adjoint checks.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass
from enum import StrEnum
from typing import Any

import numpy as np
from loguru import logger
from numpy.typing import ArrayLike
from scipy import optimize, stats

from .errors import ConvergenceError, DomainError, PathDisagreementError
from .kernels import (
    conjugate_kernel_M,
    conjugate_kernel_Q,
    heat_kernel,
    hilbert_kernel,
    hilbert_kernel_parts,
    poisson_kernel,
)
from .quadrature import (
    DEFAULT_SETTINGS,
    PrincipalValueResult,
    QuadratureRule,
    QuadratureSettings,
    panel_rule,
    principal_value_integrate,
)
from .samples import SampledFunction, band_limited_family
from .spectral import (
    DEFAULT_DEGREE,
    SpectralCoefficients,
    analyze,
    compose,
    conjugate_multiplier,
    heat_multiplier,
    hilbert,
    hilbert_minus,
    hilbert_plus,
    inner,
    number_multiplier,
    operator_matrix,
    poisson_multiplier,
    synthesize,
    synthesizer,
)
from .special_functions import (
    DunklParameter,
    FloatArray,
    Sign,
    dunkl_apply,
    dunkl_hermite_fn,
    dunkl_hermite_operator_apply,
)

KERNEL_MIN_TIME = 0.05
PATH_DIAGNOSTIC_THRESHOLD = 1e-5
BOUNDARY_MARGIN = 0.05
KERNEL_BLOCK = 20000
DUALITY_DEGREE = 160
DUALITY_PANEL_WIDTH = 0.5

Function = SampledFunction | Callable[[FloatArray], Any]
Source = Function | SpectralCoefficients


class EvaluationPath(StrEnum):
    SPECTRAL = "spectral"
    KERNEL = "kernel"


class Method(StrEnum):
    SPECTRAL = "spectral"
    PV = "pv"


@dataclass(frozen=True)
class PathComparison:
    """Values of one operator at x along both paths."""

    x: FloatArray
    spectral: FloatArray
    kernel: FloatArray

    @property
    def disagreement(self) -> FloatArray:
        return np.abs(self.spectral - self.kernel)

    @property
    def max_disagreement(self) -> float:
        return float(np.max(self.disagreement)) if self.x.size else 0.0


@dataclass(frozen=True)
class NormGrowthFit:
    """Least-squares slope of log ||h_n^k||_p against log n over even n."""

    k: float
    exponent: float
    degrees: tuple[int, ...]
    norms: tuple[float, ...]
    slope: float
    intercept: float
    stderr: float
    theoretical: float
    upper_bound_only: bool

    @property
    def deviation(self) -> float:
        """Signed distance from the theoretical exponent (one-sided for the sup norm)."""
        if self.upper_bound_only:
            return max(0.0, self.slope - self.theoretical)
        return self.slope - self.theoretical


def _out(values: Any, x: ArrayLike) -> Any:
    return float(np.asarray(values).reshape(())) if np.ndim(x) == 0 else np.asarray(values)


def _check_time(t: float, what: str) -> float:
    t = float(t)
    if not t > 0 or not math.isfinite(t):
        raise DomainError(f"{what}: t must be positive, got {t!r}")
    return t


def _coefficients(
    f: Source, p: DunklParameter, N: int, settings: QuadratureSettings
) -> SpectralCoefficients:
    if isinstance(f, SpectralCoefficients):
        if f.k != p.k:
            raise DomainError(f"coefficients carry k={f.k:g}, operator has k={p.k:g}")
        return f
    return analyze(f, p, N, settings=settings)


def _function(f: Source) -> Callable[[FloatArray], Any]:
    return synthesizer(f) if isinstance(f, SpectralCoefficients) else f


def _support(f: Source, settings: QuadratureSettings) -> tuple[float, float]:
    if isinstance(f, SampledFunction) and f.support is not None:
        return f.support
    return -settings.y_max, settings.y_max


def _y_rule(f: Source, settings: QuadratureSettings, width: float) -> QuadratureRule:
    a, b = _support(f, settings)
    panels = max(1, math.ceil((b - a) / width))
    return panel_rule(a, b, panels, settings.panel_order, breakpoints=[0.0], cluster=[0.0])


def _kernel_apply(
    kernel: Callable[[FloatArray, FloatArray], Any],
    f: Source,
    p: DunklParameter,
    x: ArrayLike,
    width: float,
    settings: QuadratureSettings,
) -> Any:
    """integral of kernel(x, y) f(y) |y|^{2k} dy by a panel rule in y, blocked over x."""
    xs = np.atleast_1d(np.asarray(x, dtype=float)).ravel()
    rule = _y_rule(f, settings, width)
    ys = rule.nodes
    weights = rule.weights * np.asarray(_function(f)(ys), dtype=float) * np.abs(ys) ** (2 * p.k)
    live = weights != 0.0
    ys, weights = ys[live], weights[live]
    out = np.zeros(xs.size)
    if ys.size:
        block = max(1, KERNEL_BLOCK // ys.size)
        for start in range(0, xs.size, block):
            chunk = xs[start : start + block]
            matrix = np.asarray(kernel(chunk[:, None], ys[None, :]), dtype=float)
            out[start : start + block] = matrix @ weights
    return _out(out.reshape(np.shape(x)), x)


def _kernel_time(t: float, what: str) -> float:
    t = _check_time(t, what)
    if t < KERNEL_MIN_TIME:
        raise DomainError(
            f"{what}: the kernel path needs t >= {KERNEL_MIN_TIME}, got {t:g}; "
            f"use the spectral path"
        )
    return t


def heat_apply(
    f: Source,
    p: DunklParameter,
    t: float,
    x: ArrayLike,
    path: EvaluationPath | str = EvaluationPath.SPECTRAL,
    *,
    N: int = DEFAULT_DEGREE,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> Any:
    """G_k(f)(t, x) = integral of P_k(t, x, y) f(y) |y|^{2k} dy."""
    t = _check_time(t, "heat_apply")
    if EvaluationPath(path) is EvaluationPath.SPECTRAL:
        return synthesize(heat_multiplier(_coefficients(f, p, N, settings), t), x)
    t = _kernel_time(t, "heat_apply")
    width = min(settings.panel_width, 2.0 * math.sqrt(math.sinh(2.0 * t)))

    def kernel(xs: FloatArray, ys: FloatArray) -> Any:
        return heat_kernel(p, t, xs, ys)

    return _kernel_apply(kernel, f, p, x, width, settings)


def poisson_apply(
    f: Source,
    p: DunklParameter,
    t: float,
    x: ArrayLike,
    path: EvaluationPath | str = EvaluationPath.SPECTRAL,
    *,
    N: int = DEFAULT_DEGREE,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> Any:
    """F_k(f)(t, x) = integral of A_k(t, x, y) f(y) |y|^{2k} dy."""
    t = _check_time(t, "poisson_apply")
    if EvaluationPath(path) is EvaluationPath.SPECTRAL:
        return synthesize(poisson_multiplier(_coefficients(f, p, N, settings), t), x)
    t = _kernel_time(t, "poisson_apply")

    def kernel(xs: FloatArray, ys: FloatArray) -> Any:
        return poisson_kernel(p, t, xs, ys, settings=settings)

    return _kernel_apply(kernel, f, p, x, min(settings.panel_width, 2.5 * t), settings)


def conjugate_apply(
    f: Source,
    p: DunklParameter,
    t: float,
    sign: Sign | str,
    x: ArrayLike,
    path: EvaluationPath | str = EvaluationPath.SPECTRAL,
    *,
    N: int = DEFAULT_DEGREE,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> Any:
    """
    f_k^+-(t, x). The kernel path integrates Q_k (+) or M_k (-) against f; both paths
    satisfy f^+- = +-H^+- F_k(f).
    """
    t = _check_time(t, "conjugate_apply")
    sign = Sign.parse(sign)
    if EvaluationPath(path) is EvaluationPath.SPECTRAL:
        c = _coefficients(f, p, N, settings)
        return synthesize(conjugate_multiplier(c, t, sign), x)
    t = _kernel_time(t, "conjugate_apply")
    evaluate = conjugate_kernel_Q if sign is Sign.PLUS else conjugate_kernel_M

    def kernel(xs: FloatArray, ys: FloatArray) -> Any:
        return evaluate(p, t, xs, ys, settings=settings)

    return _kernel_apply(kernel, f, p, x, min(settings.panel_width, 2.5 * t), settings)


def hilbert_pv(
    f: Source,
    p: DunklParameter,
    sign: Sign | str,
    x: float,
    *,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> PrincipalValueResult:
    """Principal value of the integral of R_k^+-(x, y) f(y) |y|^{2k} dy."""
    sign = Sign.parse(sign)

    def kernel(x0: float, ys: FloatArray) -> Any:
        return hilbert_kernel(p, sign, np.full_like(ys, x0), ys, settings=settings)

    return principal_value_integrate(kernel, _function(f), p, float(x), settings=settings)


def hilbert_apply(
    f: Source,
    p: DunklParameter,
    sign: Sign | str,
    x: ArrayLike,
    method: Method | str = Method.SPECTRAL,
    *,
    N: int = DEFAULT_DEGREE,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> Any:
    """H_k^+- f(x) by the coefficient shift or by the principal-value integral."""
    sign = Sign.parse(sign)
    if Method(method) is Method.SPECTRAL:
        return synthesize(hilbert(_coefficients(f, p, N, settings), sign), x)
    xs = np.atleast_1d(np.asarray(x, dtype=float)).ravel()
    values = [hilbert_pv(f, p, sign, float(x0), settings=settings).value for x0 in xs]
    return _out(np.asarray(values).reshape(np.shape(x)), x)


def compare_paths(
    spectral: Callable[[], Any],
    kernel: Callable[[], Any],
    x: ArrayLike,
    what: str,
    threshold: float = PATH_DIAGNOSTIC_THRESHOLD,
) -> PathComparison:
    """Evaluate both paths; a disagreement above `threshold` raises PathDisagreementError."""
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    comparison = PathComparison(
        xs,
        np.atleast_1d(np.asarray(spectral(), dtype=float)),
        np.atleast_1d(np.asarray(kernel(), dtype=float)),
    )
    if comparison.max_disagreement > threshold:
        i = int(np.argmax(comparison.disagreement))
        raise PathDisagreementError(
            f"{what} at x={xs[i]:g}",
            float(comparison.spectral[i]),
            float(comparison.kernel[i]),
            threshold,
        )
    logger.debug(f"{what}: paths agree to {comparison.max_disagreement:.2e}")
    return comparison


# residuals: t-derivatives exact through the multipliers, Dunkl derivatives numerical


def _dunkl_hermite(p: DunklParameter, c: SpectralCoefficients, x: FloatArray) -> FloatArray:
    return np.asarray(dunkl_hermite_operator_apply(p, synthesizer(c), x), dtype=float)


def heat_pde_residual(
    f: Source,
    p: DunklParameter,
    t: float,
    x: ArrayLike,
    *,
    N: int = DEFAULT_DEGREE,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> Any:
    """|(L_{k,x} - d/dt) G_k(f)(t, x)|."""
    t = _check_time(t, "heat_pde_residual")
    c = _coefficients(f, p, N, settings)
    xs = np.asarray(x, dtype=float)
    space = _dunkl_hermite(p, heat_multiplier(c, t), xs)
    time = np.asarray(synthesize(heat_multiplier(c, t, 1), xs), dtype=float)
    return _out(np.abs(space - time), x)


def poisson_pde_residual(
    f: Source,
    p: DunklParameter,
    t: float,
    x: ArrayLike,
    *,
    N: int = DEFAULT_DEGREE,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> Any:
    """|(L_{k,x} + d^2/dt^2) F_k(f)(t, x)|."""
    t = _check_time(t, "poisson_pde_residual")
    c = _coefficients(f, p, N, settings)
    xs = np.asarray(x, dtype=float)
    space = _dunkl_hermite(p, poisson_multiplier(c, t), xs)
    time = np.asarray(synthesize(poisson_multiplier(c, t, 2), xs), dtype=float)
    return _out(np.abs(space + time), x)


def conjugate_system_residual(
    f: Source,
    p: DunklParameter,
    t: float,
    x: ArrayLike,
    sign: Sign | str,
    *,
    N: int = DEFAULT_DEGREE,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> tuple[Any, Any]:
    """
    (|(L_{k,x} + d^2/dt^2) f^+- -+ 2 f^+-|, |(T_{k,x} +- x) F_k(f) +- d/dt f^+-|).
    """
    t = _check_time(t, "conjugate_system_residual")
    sign = Sign.parse(sign)
    c = _coefficients(f, p, N, settings)
    xs = np.asarray(x, dtype=float)
    s = sign.factor

    conjugate = conjugate_multiplier(c, t, sign)
    second = np.asarray(synthesize(conjugate_multiplier(c, t, sign, 2), xs), dtype=float)
    value = np.asarray(synthesize(conjugate, xs), dtype=float)
    first_equation = _dunkl_hermite(p, conjugate, xs) + second - s * 2.0 * value

    poisson = synthesizer(poisson_multiplier(c, t))
    ladder = np.asarray(dunkl_apply(p, poisson, xs), dtype=float) + s * xs * np.asarray(
        poisson(xs), dtype=float
    )
    derivative = np.asarray(synthesize(conjugate_multiplier(c, t, sign, 1), xs), dtype=float)
    second_equation = ladder + s * derivative
    return _out(np.abs(first_equation), x), _out(np.abs(second_equation), x)


# norms


def _effective_domain(
    f: Callable[[FloatArray], Any], settings: QuadratureSettings, peak_floor: float = 1e-17
) -> tuple[float, float]:
    """[-R, R] with R >= y_max grown until |f| on the outer unit strip is negligible."""
    samples = np.linspace(-settings.y_max, settings.y_max, 2001)
    peak = float(np.max(np.abs(np.asarray(f(samples), dtype=float))))
    radius = settings.y_max
    while radius < 60.0:
        outer = np.linspace(radius - 1.0, radius, 65)
        edge = np.abs(np.asarray(f(np.concatenate([outer, -outer])), dtype=float))
        if float(np.max(edge)) <= peak_floor * max(peak, 1e-300):
            break
        radius += 4.0
    return -radius, radius


def _sign_changes(
    f: Callable[[FloatArray], Any], a: float, b: float, spacing: float
) -> list[float]:
    grid = np.linspace(a, b, max(2001, math.ceil((b - a) / spacing) + 1))
    values = np.asarray(f(grid), dtype=float)
    roots = []

    def scalar(s: float) -> float:
        return float(np.asarray(f(np.asarray(s)), dtype=float))

    for i in np.flatnonzero(np.sign(values[:-1]) * np.sign(values[1:]) < 0):
        roots.append(float(optimize.brentq(scalar, grid[i], grid[i + 1], xtol=1e-14)))
    return roots


def sup_norm(
    f: Source,
    *,
    domain: tuple[float, float] | None = None,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
    spacing: float = 0.005,
) -> float:
    """max |f| from a dense grid, polished by bounded scalar minimization."""
    func = _function(f)
    if domain is None:
        if isinstance(f, SampledFunction) and f.support is not None:
            domain = f.support
        else:
            domain = _effective_domain(func, settings)
    a, b = domain
    grid = np.linspace(a, b, max(2001, math.ceil((b - a) / spacing) + 1))
    values = np.abs(np.asarray(func(grid), dtype=float))
    i = int(np.argmax(values))
    best = float(values[i])
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, grid.size - 1)]
    if hi > lo:
        result = optimize.minimize_scalar(
            lambda s: -abs(float(np.asarray(func(np.asarray(s)), dtype=float))),
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": 1e-12},
        )
        best = max(best, -float(result.fun))
    return best


def lp_norm(
    f: Source,
    p: DunklParameter,
    exponent: float,
    *,
    domain: tuple[float, float] | None = None,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> float:
    """
    ||f||_{k,p} = (integral of |f|^p |x|^{2k} dx)^{1/p}; p = inf gives the sup norm.

    The zeros of f are located first and become panel edges, so |f|^p is smooth on every
    panel; panels are graded toward 0 for |x|^{2k}.
    """
    exponent = float(exponent)
    if not exponent >= 1:
        raise DomainError(f"lp_norm needs an exponent >= 1, got {exponent!r}")
    if math.isinf(exponent):
        return sup_norm(f, domain=domain, settings=settings)
    func = _function(f)
    if domain is None:
        if isinstance(f, SampledFunction) and f.support is not None:
            domain = f.support
        else:
            domain = _effective_domain(func, settings)
    a, b = domain
    edges = [0.0, *_sign_changes(func, a, b, 0.01)]
    panels = max(1, math.ceil((b - a) / settings.panel_width))

    def total(order: int) -> float:
        rule = panel_rule(a, b, panels, order, breakpoints=edges, cluster=[0.0], levels=30)
        values = np.abs(np.asarray(func(rule.nodes), dtype=float)) ** exponent
        return float(rule.integrate(values * np.abs(rule.nodes) ** (2.0 * p.k)))

    value = total(settings.panel_order)
    coarse = total(max(4, settings.panel_order // 2))
    if abs(value - coarse) > 1e-8 * max(abs(value), settings.absolute_floor):
        gap = abs(value - coarse)
        logger.debug(f"lp_norm (p={exponent:g}): panel orders disagree by {gap:.2e}")
    return float(max(value, 0.0) ** (1.0 / exponent))


def heat_norm_bound(p: DunklParameter, t: float) -> float:
    """(cosh 2t)^{-(k+1/2)}."""
    return float(math.cosh(2.0 * t) ** -(p.k + 0.5))


def poisson_norm_bound(p: DunklParameter, t: float) -> float:
    """2^{k+1/2} e^{-t sqrt(2k+1)}."""
    return float(2.0 ** (p.k + 0.5) * math.exp(-t * math.sqrt(2.0 * p.k + 1.0)))


def theoretical_growth_exponent(k: float, exponent: float) -> float:
    """
    Exponent e with ||h_n^k||_{k,p} ~ n^e.

    For p <= 4: -1/4 + 1/(2p) + k(1/p - 1/2) when k(p-2) < 1, else -1/4 - 1/(2p) + k(1/2 - 1/p).
    For 4 < p < inf: -1/12 - 1/(6p) + k(1/p - 1/2) when k(p-2) <= 1/3 + p/6, else the second
    form above. For p = inf the value k/2 - 1/12 is an upper bound only. Combinations within
    0.05 of a branch boundary are refused.
    """
    p = float(exponent)
    if not p >= 1:
        raise DomainError(f"growth exponent needs p >= 1, got {exponent!r}")
    if math.isinf(p):
        return k / 2.0 - 1.0 / 12.0
    lead = k * (p - 2.0)
    boundary = 1.0 if p <= 4.0 else 1.0 / 3.0 + p / 6.0
    if abs(lead - boundary) < BOUNDARY_MARGIN:
        raise DomainError(
            f"(k={k:g}, p={p:g}) lies within {BOUNDARY_MARGIN} of the branch boundary "
            f"k(p-2) = {boundary:.4g}; the growth exponent is not determined there"
        )
    second = -0.25 - 0.5 / p + k * (0.5 - 1.0 / p)
    if p <= 4.0:
        return -0.25 + 0.5 / p + k * (1.0 / p - 0.5) if lead < boundary else second
    return -1.0 / 12.0 - 1.0 / (6.0 * p) + k * (1.0 / p - 0.5) if lead <= boundary else second


def norm_growth_fit(
    p: DunklParameter,
    exponent: float,
    n_range: tuple[int, int] = (16, 120),
    *,
    stride: int = 2,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> NormGrowthFit:
    """Fit log ||h_n^k||_{k,p} against log n over even n in `n_range`."""
    lo, hi = (int(v) for v in n_range)
    if lo < 8 or hi > 120 or lo >= hi:
        raise DomainError(f"n_range must lie inside [8, 120] with lo < hi, got {n_range}")
    theoretical = theoretical_growth_exponent(p.k, exponent)
    first = lo + lo % 2
    step = max(2, stride + stride % 2)
    degrees = tuple(range(first, hi + 1, step))
    if len(degrees) < 3:
        raise ConvergenceError(f"norm_growth_fit needs at least 3 degrees, got {degrees}")
    norms = []
    for n in degrees:

        def h(x: FloatArray, n: int = n) -> Any:
            return dunkl_hermite_fn(p, n, x)

        norms.append(lp_norm(h, p, exponent, settings=settings))
    fit = stats.linregress(np.log(degrees), np.log(norms))
    if not math.isfinite(fit.slope):
        raise ConvergenceError("norm_growth_fit: degenerate regression")
    logger.debug(
        f"norm growth ({p}, p={exponent}): slope {fit.slope:.4f} vs {theoretical:.4f}"
    )
    return NormGrowthFit(
        p.k,
        float(exponent),
        degrees,
        tuple(float(v) for v in norms),
        float(fit.slope),
        float(fit.intercept),
        float(fit.stderr),
        theoretical,
        math.isinf(float(exponent)),
    )


def coefficient_decay_order(
    c: SpectralCoefficients, n_range: tuple[int, int] = (8, 40), *, even_only: bool = True
) -> float:
    """m in |a_n| ~ C (2n+2k+1)^{-m}, fitted by log-log regression over `n_range`."""
    lo, hi = n_range
    if hi > c.N:
        raise DomainError(f"decay fit up to n={hi} needs N >= {hi}, have {c.N}")
    n = np.arange(lo, hi + 1)
    if even_only:
        n = n[n % 2 == 0]
    a = np.abs(c.a[n])
    keep = a > 0
    if int(np.sum(keep)) < 3:
        raise ConvergenceError("coefficient_decay_order: fewer than 3 nonzero coefficients")
    fit = stats.linregress(np.log(c.parameter.eigenvalue(n[keep])), np.log(a[keep]))
    return float(-fit.slope)


# duality


def _check_disjoint(f: Source, g: Source) -> tuple[tuple[float, float], tuple[float, float]]:
    if not (isinstance(f, SampledFunction) and isinstance(g, SampledFunction)):
        raise DomainError("duality checks need sampled functions with declared supports")
    if f.support is None or g.support is None:
        raise DomainError("duality checks need compactly supported functions")
    (a, b), (c, d) = f.support, g.support
    if not (b < c or d < a):
        raise DomainError(f"supports {f.support} and {g.support} overlap")
    return f.support, g.support


@dataclass(frozen=True)
class KernelPairing:
    """Double integrals of R_{k,1} and R_{k,2} against g(x) f(y) |x|^{2k} |y|^{2k}."""

    first: float
    second: float

    def value(self, sign: Sign | str) -> float:
        return math.sqrt(2.0 / math.pi) * (self.first + Sign.parse(sign).factor * self.second)


def kernel_pairing(
    f: SampledFunction,
    g: SampledFunction,
    p: DunklParameter,
    *,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> KernelPairing:
    """The pair of double integrals behind the integral of R_k^+- f against g."""
    f_support, g_support = _check_disjoint(f, g)

    def rule(support: tuple[float, float]) -> QuadratureRule:
        a, b = support
        panels = max(1, math.ceil((b - a) / DUALITY_PANEL_WIDTH))
        return panel_rule(a, b, panels, settings.panel_order, breakpoints=[0.0])

    x_rule, y_rule = rule(g_support), rule(f_support)
    wx = x_rule.weights * np.asarray(g(x_rule.nodes)) * np.abs(x_rule.nodes) ** (2 * p.k)
    wy = y_rule.weights * np.asarray(f(y_rule.nodes)) * np.abs(y_rule.nodes) ** (2 * p.k)
    xs, ys = np.meshgrid(x_rule.nodes[wx != 0], y_rule.nodes[wy != 0], indexing="ij")
    r1, r2 = hilbert_kernel_parts(p, xs, ys, settings=settings)
    wx, wy = wx[wx != 0], wy[wy != 0]
    return KernelPairing(float(wx @ np.asarray(r1) @ wy), float(wx @ np.asarray(r2) @ wy))


def duality_check(
    f: SampledFunction,
    g: SampledFunction,
    p: DunklParameter,
    sign: Sign | str,
    *,
    N: int = DUALITY_DEGREE,
    pairing: KernelPairing | None = None,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> float:
    """|<H_k^+- f, g> - double integral of R_k^+-(x, y) f(y) g(x)| for disjoint supports."""
    sign = Sign.parse(sign)
    _check_disjoint(f, g)
    cf = analyze(f, p, N, settings=settings)
    cg = analyze(g, p, N, settings=settings)
    spectral = inner(hilbert(cf, sign), cg)
    pairing = pairing or kernel_pairing(f, g, p, settings=settings)
    kernel = pairing.value(sign)
    residual = abs(spectral - kernel)
    logger.debug(f"duality ({p}, {sign}): spectral {spectral:.12g}, kernel {kernel:.12g}")
    return residual


def adjoint_plus(c: SpectralCoefficients) -> SpectralCoefficients:
    """(H^+)^T = -(-L)^{-1/2} H^- (-L)^{1/2}."""
    out = compose(
        c,
        lambda d: number_multiplier(d, 0.5),
        hilbert_minus,
        lambda d: number_multiplier(d, -0.5),
    )
    return out.with_values(-out.a)


def adjoint_matrix_defect(p: DunklParameter, N: int = 20) -> float:
    """max |(H^+)^T - (-(-L)^{-1/2} H^- (-L)^{1/2})| on span{h_0..h_N}."""
    plus = operator_matrix(hilbert_plus, p, N + 1)[: N + 1, : N + 2]
    adjoint = operator_matrix(adjoint_plus, p, N)[: N + 2, : N + 1]
    return float(np.max(np.abs(plus.T - adjoint)))


def adjoint_check(
    f: SampledFunction,
    g: SampledFunction,
    p: DunklParameter,
    *,
    N: int = DUALITY_DEGREE,
    pairing: KernelPairing | None = None,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> float:
    """|kernel-side <H^+ f, g> - <f, (H^+)^T g>| with the transpose built from H^-."""
    _check_disjoint(f, g)
    pairing = pairing or kernel_pairing(f, g, p, settings=settings)
    cf = analyze(f, p, N, settings=settings)
    cg = analyze(g, p, N, settings=settings)
    return abs(pairing.value(Sign.PLUS) - inner(cf, adjoint_plus(cg)))


# boundedness measures


def hilbert_lp_ratio(
    f: Source,
    p: DunklParameter,
    sign: Sign | str,
    exponent: float,
    *,
    N: int = DEFAULT_DEGREE,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> float:
    """||H_k^+- f||_{k,p} / ||f||_{k,p} with H applied spectrally."""
    c = _coefficients(f, p, N, settings)
    denominator = lp_norm(synthesizer(c), p, exponent, settings=settings)
    if denominator == 0.0:
        return 0.0
    return lp_norm(synthesizer(hilbert(c, sign)), p, exponent, settings=settings) / denominator


def conjugate_decay_constant(
    f: Source,
    p: DunklParameter,
    t: float,
    exponent: float,
    sign: Sign | str = Sign.PLUS,
    *,
    N: int = DEFAULT_DEGREE,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> float:
    """C = ||f^+-(t, .)||_{k,p} / (e^{-t sqrt(2k+1)} ||f||_{k,p})."""
    t = _check_time(t, "conjugate_decay_constant")
    c = _coefficients(f, p, N, settings)
    denominator = lp_norm(synthesizer(c), p, exponent, settings=settings)
    if denominator == 0.0:
        return 0.0
    damped = lp_norm(synthesizer(conjugate_multiplier(c, t, sign)), p, exponent, settings=settings)
    return damped / (math.exp(-t * math.sqrt(2.0 * p.k + 1.0)) * denominator)


def family_maximum(
    measure: Callable[[SampledFunction], float], p: DunklParameter, size: int = 20
) -> float:
    """Largest value of `measure` over the seeded band-limited family."""
    return max(measure(member) for member in band_limited_family(p, size))

