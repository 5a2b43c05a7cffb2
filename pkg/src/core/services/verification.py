"""
The verification suite: every identity and bound of the theory that can be checked at
desk scale, as independent registered checks producing a VerificationReport.
"""

from __future__ import annotations

import math
import time
import zlib
from collections.abc import Callable, Iterable, Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from loguru import logger

from ..numerics.errors import DunklHermiteError
from ..numerics.kernels import (
    heat_kernel,
    hilbert_kernel_parts,
    k_s_dunkl_derivative,
    k_s_kernel,
    mehler_kernel,
    mehler_series,
    mehler_series_degree,
    poisson_kernel,
    poisson_kernel_ladder,
    poisson_kernel_u,
    subordination,
)
from ..numerics.quadrature import (
    QuadratureRule,
    QuadratureSettings,
    generalized_gauss_rule,
    panel_rule,
)
from ..numerics.samples import (
    BAND_LIMITED_DEGREE,
    band_limited,
    band_limited_coefficients,
    hermite_element,
    schwartz_family,
    tapered_gaussian,
    zero_function,
)
from ..numerics.spectral import (
    SpectralCoefficients,
    analyze,
    conjugate_multiplier,
    heat_multiplier,
    hilbert,
    hilbert_minus,
    hilbert_plus,
    poisson_multiplier,
    shift_bound,
    synthesize,
    synthesizer,
)
from ..numerics.special_functions import (
    DunklParameter,
    FloatArray,
    Sign,
    dunkl_apply,
    dunkl_hermite_functions,
    dunkl_kernel,
    log_dunkl_kernel,
    theta,
)
from ..numerics.transforms import (
    EvaluationPath,
    Method,
    adjoint_check,
    adjoint_matrix_defect,
    coefficient_decay_order,
    conjugate_apply,
    conjugate_decay_constant,
    conjugate_system_residual,
    duality_check,
    heat_apply,
    heat_norm_bound,
    heat_pde_residual,
    hilbert_apply,
    hilbert_lp_ratio,
    kernel_pairing,
    lp_norm,
    norm_growth_fit,
    poisson_apply,
    poisson_norm_bound,
    poisson_pde_residual,
)
from .report import CheckRecord, VerificationReport

ORTHONORMALITY_KS = (0.0, 0.25, 0.5, 1.0, 2.5)
MEHLER_KS = (0.0, 0.5, 1.5)
MEHLER_RS = (0.1, 0.5, 0.9)
DUALITY_KS = (0.0, 0.5, 1.5)
SUBORDINATION_BETAS = (0.5, 1.0, 2.0, 5.0)
THEOREM_EXPONENTS = (1.0, 2.0, 3.0, 4.0)
THEOREM_TIMES = (0.1, 0.5, 2.0)
THEOREM_FAMILY_SIZE = 20
GROWTH_CASES = ((0.5, 1.0), (1.5, 3.0), (0.5, math.inf))
GROWTH_RANGE = (16, 120)
GROWTH_STRIDE = 8
DECAY_RANGE = (8, 40)
RANDOM_POINTS = 50
BOUNDARY_TOLERANCE = 1e-3

CheckResult = float | tuple[float, str]


@dataclass(frozen=True)
class SuiteContext:
    """Everything a check may depend on; checks are pure functions of it."""

    parameter: DunklParameter
    settings: QuadratureSettings
    N: int = 64
    seed: int = 20240601
    grid: FloatArray = field(default_factory=lambda: np.linspace(-4.0, 4.0, 81))
    tolerances: Mapping[str, float] = field(default_factory=dict)

    def rng(self, name: str) -> np.random.Generator:
        """Per-check stream, independent of scheduling order."""
        return np.random.default_rng([self.seed, zlib.crc32(name.encode())])

    def tolerance(self, name: str, default: float) -> float:
        """Configured pass threshold of a check, else `default`."""
        return float(self.tolerances.get(name, default))

    def band_limited_family(self, size: int) -> list[SpectralCoefficients]:
        p = self.parameter
        return [
            SpectralCoefficients(
                p, band_limited_coefficients(self.seed, BAND_LIMITED_DEGREE, member)
            )
            for member in range(size)
        ]


@dataclass(frozen=True)
class CheckSpec:
    name: str
    anchor: str
    tolerance: float
    run: Callable[[SuiteContext], CheckResult]
    slow: bool = False


CHECKS: list[CheckSpec] = []


def check(
    name: str, anchor: str, tolerance: float, *, slow: bool = False
) -> Callable[[Callable[[SuiteContext], CheckResult]], Callable[[SuiteContext], CheckResult]]:
    """Register a check; registration order is report order."""

    def register(
        func: Callable[[SuiteContext], CheckResult],
    ) -> Callable[[SuiteContext], CheckResult]:
        if any(c.name == name for c in CHECKS):
            raise ValueError(f"duplicate check name {name!r}")
        CHECKS.append(CheckSpec(name, anchor, tolerance, func, slow))
        return func

    return register


def _relative(value: Any, expected: Any, floor: float = 0.0) -> float:
    value = np.asarray(value, dtype=float)
    expected = np.asarray(expected, dtype=float)
    scale = np.maximum(np.abs(expected), floor)
    return float(np.max(np.abs(value - expected) / scale))


def _line_rule(radius: float, width: float, order: int = 16) -> QuadratureRule:
    panels = max(1, math.ceil(2.0 * radius / width))
    return panel_rule(-radius, radius, panels, order, breakpoints=[0.0], cluster=[0.0], levels=30)


# basis and kernels


@check("orthonormality", "Gram matrix of h_0..h_20 is the identity", 1e-10)
def check_orthonormality(ctx: SuiteContext) -> CheckResult:
    worst = 0.0
    for k in ORTHONORMALITY_KS:
        p = DunklParameter(k)
        rule = generalized_gauss_rule(p, 48)
        h = dunkl_hermite_functions(p, 20, rule.nodes) * np.exp(0.5 * rule.nodes**2)
        gram = (h * rule.weights) @ h.T
        worst = max(worst, float(np.max(np.abs(gram - np.eye(21)))))
    return worst


@check("mehler_series", "Mehler closed form equals the generating series", 1e-8)
def check_mehler(ctx: SuiteContext) -> CheckResult:
    y, z = np.meshgrid(np.linspace(-3.0, 3.0, 13), np.linspace(-3.0, 3.0, 13))
    worst = 0.0
    for k in MEHLER_KS:
        p = DunklParameter(k)
        for r in MEHLER_RS:
            closed = np.asarray(mehler_kernel(p, r, y, z))
            series = np.asarray(mehler_series(p, r, y, z, mehler_series_degree(r)))
            worst = max(worst, _relative(series, closed, 1.0))
    return worst


@check("mass_identities", "L^1 mass of the Mehler and heat kernels in closed form", 1e-10)
def check_mass(ctx: SuiteContext) -> CheckResult:
    p, k = ctx.parameter, ctx.parameter.k
    rng = ctx.rng("mass_identities")
    rule = _line_rule(14.0, 0.1)
    weights = rule.weights * np.abs(rule.nodes) ** (2.0 * k)
    worst = 0.0
    radii, points = rng.uniform(0.1, 0.9, RANDOM_POINTS), rng.uniform(-2.0, 2.0, RANDOM_POINTS)
    for r, y in zip(radii, points, strict=True):
        mass = float(np.asarray(mehler_kernel(p, r, y, rule.nodes)) @ weights)
        q = (1.0 - r * r) / (1.0 + r * r)
        expected = (2.0 / (1.0 + r * r)) ** (k + 0.5) * math.exp(-0.5 * q * y * y)
        worst = max(worst, abs(mass - expected) / expected)
    times, points = rng.uniform(0.05, 3.0, RANDOM_POINTS), rng.uniform(-2.0, 2.0, RANDOM_POINTS)
    for t, x in zip(times, points, strict=True):
        mass = float(np.asarray(heat_kernel(p, t, x, rule.nodes)) @ weights)
        expected = heat_norm_bound(p, t) * math.exp(-0.5 * math.tanh(2.0 * t) * x * x)
        worst = max(worst, abs(mass - expected) / expected)
    return worst


@check("heat_semigroup", "P_k(t) * P_k(s) = P_k(t + s)", 1e-10)
def check_semigroup(ctx: SuiteContext) -> CheckResult:
    p = ctx.parameter
    rng = ctx.rng("heat_semigroup")
    rule = _line_rule(14.0, 0.1)
    weights = rule.weights * np.abs(rule.nodes) ** (2.0 * p.k)
    worst = 0.0
    for _ in range(10):
        t, s = rng.uniform(0.1, 1.5, 2)
        x, y = rng.uniform(-2.0, 2.0, 2)
        left = np.asarray(heat_kernel(p, t, x, rule.nodes)) * np.asarray(
            heat_kernel(p, s, rule.nodes, y)
        )
        composed = float(left @ weights)
        worst = max(worst, _relative(composed, heat_kernel(p, t + s, x, y)))
    return worst


@check("dunkl_kernel_eigen", "T_{k,x} E_k(x, y) = y E_k(x, y)", 1e-7)
def check_dunkl_eigen(ctx: SuiteContext) -> CheckResult:
    p = ctx.parameter
    x = np.linspace(-2.0, 2.0, 17)
    worst = 0.0
    for y in (-1.5, -0.4, 0.3, 1.2):

        def e(xs: FloatArray, y: float = y) -> Any:
            return dunkl_kernel(p, xs, y)

        applied = np.asarray(dunkl_apply(p, e, x))
        worst = max(worst, _relative(applied, y * np.asarray(e(x)), 1e-3))
    return worst


@check(
    "dunkl_kernel_integral",
    "Gaussian integral of E_k(., y) is 2^{k+1/2} c_k^{-1} e^{y^2/2}",
    1e-10,
)
def check_dunkl_integral(ctx: SuiteContext) -> CheckResult:
    p = ctx.parameter
    worst = 0.0
    for y in (-1.5, -0.3, 0.7, 2.0):
        rule = _line_rule(abs(y) + 12.0, 0.1)
        values = np.exp(np.asarray(log_dunkl_kernel(p, rule.nodes, y)) - 0.5 * rule.nodes**2)
        integral = float(rule.integrate(values * np.abs(rule.nodes) ** (2.0 * p.k)))
        expected = 2.0 ** (p.k + 0.5) * p.mass * math.exp(0.5 * y * y)
        worst = max(worst, abs(integral - expected) / expected)
    return worst


@check("subordination", "subordination integral reproduces e^{-beta}", 1e-10)
def check_subordination(ctx: SuiteContext) -> CheckResult:
    return max(
        abs(subordination(beta, settings=ctx.settings) - math.exp(-beta)) / math.exp(-beta)
        for beta in SUBORDINATION_BETAS
    )


@check("poisson_kernel_paths", "Poisson kernel: u-integral form equals r-integral form", 1e-9)
def check_poisson_paths(ctx: SuiteContext) -> CheckResult:
    rng = ctx.rng("poisson_kernel_paths")
    worst = 0.0
    for _ in range(20):
        p = DunklParameter(float(rng.uniform(0.0, 2.0)))
        t = float(rng.uniform(0.2, 2.0))
        x, y = rng.uniform(-2.0, 2.0, 2)
        first = poisson_kernel(p, t, x, y, settings=ctx.settings)
        second = poisson_kernel_u(p, t, x, y, settings=ctx.settings)
        worst = max(worst, abs(first - second))
    return worst


@check("k_s_identities", "closed-form T_{k,x} K_s and K_{tanh t} = P_k(t)", 1e-7)
def check_k_s(ctx: SuiteContext) -> CheckResult:
    p = ctx.parameter
    x = np.linspace(-2.0, 2.0, 9)
    worst = 0.0
    for s in (0.2, 0.5, 0.8):
        for y in (-1.1, 0.6):

            def ks(xs: FloatArray, s: float = s, y: float = y) -> Any:
                return k_s_kernel(p, s, xs, y)

            numeric = np.asarray(dunkl_apply(p, ks, x))
            closed = np.asarray(k_s_dunkl_derivative(p, s, x, y))
            worst = max(worst, _relative(numeric, closed, 1e-2))
    for t in (0.1, 0.5, 1.5):
        x, y = np.meshgrid(np.linspace(-2.0, 2.0, 7), np.linspace(-2.0, 2.0, 7))
        via_s = np.asarray(k_s_kernel(p, math.tanh(t), x, y))
        worst = max(worst, _relative(via_s, heat_kernel(p, t, x, y), 1e-3))
    return worst


@check("poisson_ladder", "(T_{k,x} +- x) A_k under the r-integral matches T_k numerically", 1e-6)
def check_poisson_ladder(ctx: SuiteContext) -> CheckResult:
    p, settings = ctx.parameter, ctx.settings
    x = np.array([-1.3, -0.5, 0.4, 1.1])
    worst = 0.0
    for t in (0.3, 1.0):
        for y in (-0.8, 0.9):

            def a(xs: FloatArray, t: float = t, y: float = y) -> Any:
                return poisson_kernel(p, t, xs, y, settings=settings)

            tf = np.asarray(dunkl_apply(p, a, x))
            ax = np.asarray(a(x))
            scale = max(float(np.max(np.abs(ax))), 1e-3)
            for sign in Sign:
                numeric = tf + sign.factor * x * ax
                closed = np.asarray(poisson_kernel_ladder(p, t, x, y, sign, settings=settings))
                worst = max(worst, float(np.max(np.abs(numeric - closed))) / scale)
    return worst


@check(
    "hilbert_kernel_bounds",
    "size and smoothness of R_{k,1}, R_{k,2} stable under refinement",
    0.05,
)
def check_cz_bounds(ctx: SuiteContext) -> CheckResult:
    p, settings = ctx.parameter, ctx.settings

    def constants(nx: int, nd: int) -> FloatArray:
        gaps = np.linspace(0.05, 4.0, nd)
        x, d = np.meshgrid(np.linspace(-3.0, 3.0, nx), np.concatenate([-gaps, gaps]))
        y = x + d
        keep = np.abs(y) <= 3.0
        x, y, d = x[keep], y[keep], np.abs(d[keep])
        delta = d / 4.0
        base = np.stack(hilbert_kernel_parts(p, x, y, settings=settings))
        moved_x = np.stack(hilbert_kernel_parts(p, x + delta, y, settings=settings))
        moved_y = np.stack(hilbert_kernel_parts(p, x, y + delta, settings=settings))
        size = np.max(d * np.abs(base), axis=1)
        smooth_x = np.max(np.abs(base - moved_x) * d * d / delta, axis=1)
        smooth_y = np.max(np.abs(base - moved_y) * d * d / delta, axis=1)
        return np.concatenate([size, smooth_x, smooth_y])

    coarse = constants(25, 16)
    fine = constants(49, 31)
    if not (np.all(np.isfinite(coarse)) and np.all(np.isfinite(fine))):
        return math.inf, "non-finite kernel constants"
    change = float(np.max(np.abs(fine - coarse) / fine))
    return change, "constants " + ", ".join(f"{c:.4g}" for c in fine)


# spectral operators


@check("hilbert_coefficients", "H^+- weights theta(n, k) / sqrt(2n+2k+1) on basis vectors", 1e-15)
def check_hilbert_coefficients(ctx: SuiteContext) -> CheckResult:
    p = ctx.parameter
    worst = 0.0
    for n in range(21):
        lam = 2.0 * n + 2.0 * p.k + 1.0
        e = SpectralCoefficients.basis(p, n, 21)
        plus = hilbert_plus(e).padded(23)
        minus = hilbert_minus(e).padded(23)
        expected_plus = np.zeros(23)
        expected_minus = np.zeros(23)
        if n >= 1:
            expected_plus[n - 1] = float(theta(n, p)) / math.sqrt(lam)
        expected_minus[n + 1] = -float(theta(n + 1, p)) / math.sqrt(lam)
        worst = max(
            worst,
            float(np.max(np.abs(plus - expected_plus))),
            float(np.max(np.abs(minus - expected_minus))),
        )
    return worst


@check("adjoint_identity", "(H^+)^T = -(-L)^{-1/2} H^- (-L)^{1/2}", 1e-12)
def check_adjoint_matrix(ctx: SuiteContext) -> CheckResult:
    return adjoint_matrix_defect(ctx.parameter, 20)


@check(
    "boundary_recovery",
    "t -> 0: heat, Poisson recover f, conjugates recover H^+- f",
    BOUNDARY_TOLERANCE,
)
def check_boundary(ctx: SuiteContext) -> CheckResult:
    # the multipliers leave 1 by about t (2n+2k+1) on degree n; keep that well inside
    # the tolerance at the top band-limited degree
    top = float(ctx.parameter.eigenvalue(BAND_LIMITED_DEGREE))
    t = 1e-3 * ctx.tolerance("boundary_recovery", BOUNDARY_TOLERANCE) / top
    worst = 0.0
    for c in ctx.band_limited_family(5):
        worst = max(
            worst,
            float(np.linalg.norm(heat_multiplier(c, t).a - c.a)),
            float(np.linalg.norm(poisson_multiplier(c, t).a - c.a)),
        )
        for sign in Sign:
            limit = hilbert(c, sign)
            target = limit.a if sign is Sign.PLUS else -limit.a
            worst = max(worst, float(np.linalg.norm(conjugate_multiplier(c, t, sign).a - target)))
    return worst


@check("coefficient_decay", "coefficients of a smooth compactly supported f decay fast", 1.0)
def check_decay(ctx: SuiteContext) -> CheckResult:
    c = analyze(tapered_gaussian(), ctx.parameter, DECAY_RANGE[1], settings=ctx.settings)
    order = coefficient_decay_order(c, DECAY_RANGE)
    return 3.0 / order if order > 0 else math.inf, f"fitted decay order {order:.3f}"


# transforms


@check("kernel_paths", "heat, Poisson, conjugate: kernel path equals spectral path", 1e-7)
def check_kernel_paths(ctx: SuiteContext) -> CheckResult:
    p, settings = ctx.parameter, ctx.settings
    f = band_limited(p, ctx.seed)
    c = SpectralCoefficients(p, band_limited_coefficients(ctx.seed))
    x = np.linspace(-2.5, 2.5, 6)
    t = 0.5
    kernel = EvaluationPath.KERNEL
    pairs = [
        (heat_apply(c, p, t, x), heat_apply(f, p, t, x, kernel, settings=settings)),
        (poisson_apply(c, p, t, x), poisson_apply(f, p, t, x, kernel, settings=settings)),
    ]
    for sign in Sign:
        pairs.append(
            (
                conjugate_apply(c, p, t, sign, x),
                conjugate_apply(f, p, t, sign, x, kernel, settings=settings),
            )
        )
    return max(float(np.max(np.abs(np.asarray(a) - np.asarray(b)))) for a, b in pairs)


@check("conjugate_eigen_actions", "Q_k, M_k act on h_n as the conjugate multipliers", 1e-7)
def check_conjugate_eigen(ctx: SuiteContext) -> CheckResult:
    p, settings = ctx.parameter, ctx.settings
    x = np.array([-1.3, -0.4, 0.6, 1.5])
    t = 0.5
    worst = 0.0
    for n in range(9):
        f = hermite_element(p, n)
        for sign in Sign:
            action = conjugate_multiplier(SpectralCoefficients.basis(p, n), t, sign)
            expected = synthesize(action, x)
            kernel = conjugate_apply(f, p, t, sign, x, EvaluationPath.KERNEL, settings=settings)
            worst = max(worst, _relative(kernel, expected, 1e-2))
    return worst


@check("hilbert_pv", "H^+- f: principal value integral equals coefficient shift", 1e-4, slow=True)
def check_hilbert_pv(ctx: SuiteContext) -> CheckResult:
    p, settings = ctx.parameter, ctx.settings
    x = np.linspace(-2.25, 2.25, 10)
    worst = 0.0
    for f in schwartz_family(p):
        for i, x0 in enumerate(x):
            sign = Sign.PLUS if i % 2 == 0 else Sign.MINUS
            spectral = hilbert_apply(f, p, sign, x0, Method.SPECTRAL, N=ctx.N, settings=settings)
            pv = hilbert_apply(f, p, sign, x0, Method.PV, settings=settings)
            worst = max(worst, abs(spectral - pv))
    return worst


@check("pde_residuals", "heat, Poisson and conjugate Cauchy-Riemann systems", 1e-4)
def check_pde(ctx: SuiteContext) -> CheckResult:
    p, settings = ctx.parameter, ctx.settings
    sources: list[Any] = [
        SpectralCoefficients.basis(p, 2),
        SpectralCoefficients(p, band_limited_coefficients(ctx.seed)),
        analyze(zero_function(), p, 8, settings=settings),
    ]
    worst = 0.0
    for f in sources:
        for t in (0.25, 0.5, 1.0):
            worst = max(
                worst,
                float(np.max(heat_pde_residual(f, p, t, ctx.grid))),
                float(np.max(poisson_pde_residual(f, p, t, ctx.grid))),
            )
            for sign in Sign:
                first, second = conjugate_system_residual(f, p, t, ctx.grid, sign)
                worst = max(worst, float(np.max(first)), float(np.max(second)))
    return worst


@check("semigroup_norm_bounds", "heat and Poisson L^p contraction bounds", 1e-9, slow=True)
def check_norm_bounds(ctx: SuiteContext) -> CheckResult:
    p, settings = ctx.parameter, ctx.settings
    worst = -math.inf
    for c in ctx.band_limited_family(THEOREM_FAMILY_SIZE):
        base = {q: lp_norm(synthesizer(c), p, q, settings=settings) for q in THEOREM_EXPONENTS}
        for t in THEOREM_TIMES:
            heat = synthesizer(heat_multiplier(c, t))
            poisson = synthesizer(poisson_multiplier(c, t))
            for q in THEOREM_EXPONENTS:
                worst = max(
                    worst,
                    lp_norm(heat, p, q, settings=settings) - heat_norm_bound(p, t) * base[q],
                    lp_norm(poisson, p, q, settings=settings) - poisson_norm_bound(p, t) * base[q],
                )
    return max(worst, 0.0), f"largest bound margin {worst:.3e}"


@check("hilbert_l2_bounds", "L^2 bounds of H^+- and of the conjugate decay constant", 1e-9)
def check_l2_bounds(ctx: SuiteContext) -> CheckResult:
    p, settings = ctx.parameter, ctx.settings
    worst = -math.inf
    for member in range(5):
        f = band_limited(p, ctx.seed, BAND_LIMITED_DEGREE, member)
        for sign in Sign:
            bound = shift_bound(p, BAND_LIMITED_DEGREE, sign)
            ratio = hilbert_lp_ratio(f, p, sign, 2.0, N=32, settings=settings)
            constant = conjugate_decay_constant(f, p, 0.5, 2.0, sign, N=32, settings=settings)
            worst = max(worst, ratio - bound, constant - bound)
    return max(worst, 0.0)


@check("duality", "<H^+- f, g> equals the kernel double integral for disjoint supports", 1e-6)
def check_duality(ctx: SuiteContext) -> CheckResult:
    settings = ctx.settings
    f = tapered_gaussian(-2.0, 0.5, 1.5)
    g = tapered_gaussian(2.0, 0.5, 1.5)
    worst = 0.0
    for k in DUALITY_KS:
        p = DunklParameter(k)
        pairing = kernel_pairing(f, g, p, settings=settings)
        for sign in Sign:
            worst = max(worst, duality_check(f, g, p, sign, pairing=pairing, settings=settings))
        worst = max(worst, adjoint_check(f, g, p, pairing=pairing, settings=settings))
    return worst


@check("norm_growth", "growth exponents of ||h_n^k||_{k,p}", 0.05, slow=True)
def check_growth(ctx: SuiteContext) -> CheckResult:
    worst = 0.0
    slopes = []
    for k, exponent in GROWTH_CASES:
        fit = norm_growth_fit(
            DunklParameter(k), exponent, GROWTH_RANGE, stride=GROWTH_STRIDE, settings=ctx.settings
        )
        slopes.append(f"(k={k:g}, p={exponent:g}) {fit.slope:.4f} vs {fit.theoretical:.4f}")
        worst = max(worst, abs(fit.deviation))
    return worst, "; ".join(slopes)


def select_checks(
    names: Iterable[str] | None = None, *, include_slow: bool = True
) -> list[CheckSpec]:
    """Registered checks, optionally restricted to `names` (in registration order)."""
    if names is None:
        return [c for c in CHECKS if include_slow or not c.slow]
    wanted = list(names)
    known = {c.name for c in CHECKS}
    unknown = [n for n in wanted if n not in known]
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(unknown)}")
    return [c for c in CHECKS if c.name in wanted]


class VerificationSuite:
    """
    Runs registered checks, concurrently when workers > 1.
    A check that raises is recorded as failed with the error in its detail.
    """

    def __init__(
        self,
        context: SuiteContext,
        checks: Sequence[CheckSpec] | None = None,
        *,
        workers: int = 1,
        header: dict[str, Any] | None = None,
    ):
        self.log = logger.bind(name="DunklHermite.Verification")
        self.context = context
        self.checks = list(checks if checks is not None else CHECKS)
        self.workers = max(1, int(workers))
        self.header = header

    def _run_one(self, index: int, spec: CheckSpec) -> CheckRecord:
        self.log.debug(f"Running check {spec.name}")
        tolerance = self.context.tolerance(spec.name, spec.tolerance)
        start = time.perf_counter()
        try:
            outcome = spec.run(self.context)
        except (DunklHermiteError, ArithmeticError, ValueError) as e:
            elapsed = 1e3 * (time.perf_counter() - start)
            return CheckRecord.failed(
                spec.name, spec.anchor, tolerance, e, runtime_ms=elapsed, index=index
            )
        elapsed = 1e3 * (time.perf_counter() - start)
        residual, detail = outcome if isinstance(outcome, tuple) else (outcome, "")
        return CheckRecord.measured(
            spec.name,
            spec.anchor,
            residual,
            tolerance,
            runtime_ms=elapsed,
            index=index,
            detail=detail,
        )

    def run(self) -> VerificationReport:
        report = VerificationReport(self.header)
        self.log.info(f"Running {len(self.checks)} checks ({self.context.parameter})")
        if self.workers == 1:
            for i, spec in enumerate(self.checks):
                report.append(self._run_one(i, spec))
        else:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                futures = [
                    pool.submit(self._run_one, i, spec) for i, spec in enumerate(self.checks)
                ]
                for future in futures:
                    report.append(future.result())
        self.log.info(report.summary())
        return report
