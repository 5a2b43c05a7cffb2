"""
Integration machinery.

Generalized Gauss-Hermite rules for the weight e^{-x^2}|x|^{2k} (Golub-Welsch on the
closed-form recurrence), composite Gauss-Legendre panels, adaptive integration on
finite intervals, on (0, 1) with endpoint substitutions and on (0, inf), and principal
value integration with vanishing-eps extrapolation.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field, fields
from enum import StrEnum
from functools import lru_cache
from itertools import pairwise
from pathlib import Path
from typing import Any

import numpy as np
from loguru import logger
from numpy.polynomial.legendre import leggauss
from scipy import integrate, linalg

from ..utils.csv_helpers import read_csv, write_csv
from .errors import DecayClassError, DomainError, PrincipalValueError, QuadratureError
from .samples import DecayClass, SampledFunction
from .special_functions import DunklParameter, FloatArray

PV_EXPONENT_SEPARATION = 0.05


class RuleKind(StrEnum):
    GAUSS_GENERALIZED_HERMITE = "gauss_generalized_hermite"
    ADAPTIVE_PANEL = "adaptive_panel"
    PV_TRUNCATED = "pv_truncated"


class Scheme(StrEnum):
    GAUSS = "gauss"
    ADAPTIVE = "adaptive"


class Substitution(StrEnum):
    NONE = "none"
    SQRT_LEFT = "sqrt_left"
    SQRT_RIGHT = "sqrt_right"
    EXP_RIGHT = "exp_right"


class HalflineDecay(StrEnum):
    EXPONENTIAL = "exponential"
    ALGEBRAIC = "algebraic"


@dataclass(frozen=True)
class QuadratureSettings:
    """Tolerances and truncation choices shared by every integrator."""

    adaptive_tol: float = 1e-12
    unit_interval_tol: float = 1e-10
    halfline_tol: float = 1e-11
    absolute_floor: float = 1e-15
    tail_fraction: float = 1e-14
    y_max: float = 9.0
    pv_start: float = 0.2
    pv_levels: int = 7
    panel_order: int = 16
    panel_width: float = 0.25
    max_subdivisions: int = 2000
    gauss_order: int = 136

    def __post_init__(self) -> None:
        for f in fields(self):
            value = getattr(self, f.name)
            if not value > 0:
                raise DomainError(f"quadrature setting {f.name} must be positive, got {value!r}")
        if self.pv_levels < 4:
            raise DomainError(f"pv_levels must be >= 4, got {self.pv_levels}")

    @classmethod
    def from_mapping(cls, values: Mapping[str, Any]) -> QuadratureSettings:
        """Build settings from a config map, ignoring keys that are not settings."""
        names = {f.name: f.type for f in fields(cls)}
        kwargs: dict[str, Any] = {}
        for key, value in values.items():
            if key in names:
                kwargs[key] = int(value) if names[key] == "int" else float(value)
        return cls(**kwargs)

    def eps_schedule(self, x: float | None = None) -> tuple[float, ...]:
        """eps_j = start * 2^{-j}; start shrinks to |x|/2 so annuli never reach 0."""
        start = self.pv_start
        if x is not None and x != 0.0 and abs(x) < 2.0 * start:
            start = abs(x) / 2.0
        return tuple(start * 2.0**-j for j in range(self.pv_levels))


DEFAULT_SETTINGS = QuadratureSettings()


@dataclass(frozen=True)
class IntegrationResult:
    value: Any
    error: float
    evaluations: int = 0

    def __float__(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class PrincipalValueResult:
    value: float
    error: float
    schedule: tuple[float, ...]
    truncated: tuple[float, ...]

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True, eq=False)
class RecurrenceCoefficients:
    """
    Monic three-term recurrence p_{n+1} = x p_n - beta_n p_{n-1} for e^{-x^2}|x|^{2k}.
    `beta[n - 1]` holds beta_n for n = 1..N.
    """

    beta: FloatArray
    beta0: float
    parameter: DunklParameter

    def __post_init__(self) -> None:
        beta = np.array(self.beta, dtype=float)
        if np.any(beta <= 0):
            raise DomainError("recurrence coefficients must be positive")
        beta.flags.writeable = False
        object.__setattr__(self, "beta", beta)

    def __len__(self) -> int:
        return int(self.beta.size)


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    nodes: FloatArray
    weights: FloatArray
    kind: RuleKind
    order: int
    k: float | None = None
    metadata: dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        nodes = np.array(self.nodes, dtype=float)
        weights = np.array(self.weights, dtype=float)
        if nodes.ndim != 1 or nodes.shape != weights.shape or nodes.size == 0:
            raise DomainError("quadrature nodes and weights must be non-empty 1-d of equal size")
        if np.any(np.diff(nodes) <= 0):
            raise DomainError("quadrature nodes must be strictly increasing")
        if np.any(weights < 0) or not np.all(np.isfinite(weights)):
            raise DomainError("quadrature weights must be finite and nonnegative")
        nodes.flags.writeable = False
        weights.flags.writeable = False
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def __len__(self) -> int:
        return int(self.nodes.size)

    @property
    def is_symmetric(self) -> bool:
        return bool(
            np.allclose(self.nodes, -self.nodes[::-1], rtol=0, atol=1e-13)
            and np.allclose(self.weights, self.weights[::-1], rtol=1e-13, atol=0)
        )

    def integrate(self, values: Any) -> Any:
        """sum_i w_i values[..., i]."""
        out = np.tensordot(np.asarray(values, dtype=float), self.weights, axes=([-1], [0]))
        return float(out) if np.ndim(out) == 0 else out


def generalized_hermite_recurrence(p: DunklParameter, N: int) -> RecurrenceCoefficients:
    """beta0 = Gamma(k + 1/2); beta_n = n/2 for even n and (n + 2k)/2 for odd n."""
    if int(N) != N or N < 1:
        raise DomainError(f"recurrence length must be >= 1, got {N!r}")
    n = np.arange(1, int(N) + 1, dtype=float)
    beta = np.where(n % 2 == 0, n / 2.0, (n + 2.0 * p.k) / 2.0)
    return RecurrenceCoefficients(beta=beta, beta0=p.mass, parameter=p)


def gauss_rule(coeffs: RecurrenceCoefficients, N: int) -> QuadratureRule:
    """Golub-Welsch: nodes are the Jacobi-matrix eigenvalues, weights beta0 * v_0^2."""
    if int(N) != N or N < 1:
        raise DomainError(f"Gauss rule order must be >= 1, got {N!r}")
    N = int(N)
    if N - 1 > len(coeffs):
        raise DomainError(f"Gauss rule of order {N} needs {N - 1} coefficients, have {len(coeffs)}")
    if N == 1:
        nodes, weights = np.zeros(1), np.array([coeffs.beta0])
    else:
        try:
            nodes, vectors = linalg.eigh_tridiagonal(np.zeros(N), np.sqrt(coeffs.beta[: N - 1]))
        except linalg.LinAlgError as e:
            raise QuadratureError(f"eigen-solver failed for Gauss rule of order {N}: {e}") from e
        weights = coeffs.beta0 * vectors[0, :] ** 2
        # the weight is even: enforce exact symmetry
        nodes = 0.5 * (nodes - nodes[::-1])
        weights = 0.5 * (weights + weights[::-1])
    return QuadratureRule(
        nodes, weights, RuleKind.GAUSS_GENERALIZED_HERMITE, N, coeffs.parameter.k
    )


@lru_cache(maxsize=64)
def _cached_gauss_rule(k: float, N: int) -> QuadratureRule:
    p = DunklParameter(k)
    logger.debug(f"Building generalized Gauss-Hermite rule (k={k:g}, N={N})")
    return gauss_rule(generalized_hermite_recurrence(p, max(N - 1, 1)), N)


def generalized_gauss_rule(p: DunklParameter, N: int) -> QuadratureRule:
    """Cached Gauss rule of order N for e^{-x^2}|x|^{2k}."""
    return _cached_gauss_rule(p.k, int(N))


@lru_cache(maxsize=32)
def _legendre(order: int) -> tuple[FloatArray, FloatArray]:
    return leggauss(order)


def panel_rule(
    a: float,
    b: float,
    panels: int,
    order: int = 16,
    *,
    breakpoints: Iterable[float] = (),
    cluster: Iterable[float] = (),
    levels: int = 12,
) -> QuadratureRule:
    """
    Composite Gauss-Legendre rule on [a, b].

    `panels` uniform panels, extra edges at `breakpoints`, and geometric refinement
    (ratio 1/2, `levels` levels) toward each point of `cluster`.
    """
    if not a < b:
        raise DomainError(f"panel_rule needs a < b, got [{a}, {b}]")
    if panels < 1 or order < 1:
        raise DomainError("panel_rule needs at least one panel and one node per panel")
    edges = list(np.linspace(a, b, int(panels) + 1))
    edges += [c for c in breakpoints if a < c < b]
    h = (b - a) / panels
    for c in cluster:
        if not a <= c <= b:
            continue
        for j in range(1, levels + 1):
            for e in (c - h * 2.0**-j, c + h * 2.0**-j):
                if a < e < b:
                    edges.append(e)
        edges.append(c)
    grid = np.unique(np.clip(np.asarray(edges, dtype=float), a, b))
    x, w = _legendre(int(order))
    lo, hi = grid[:-1], grid[1:]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return QuadratureRule(
        nodes,
        weights,
        RuleKind.ADAPTIVE_PANEL,
        int(order) * lo.size,
        metadata={"interval": (float(a), float(b)), "panels": int(lo.size)},
    )


def _finite(values: Any, what: str) -> Any:
    if not np.all(np.isfinite(values)):
        raise QuadratureError(f"{what}: NaN or infinity from integrand")
    return values


def adaptive_integrate(
    g: Callable[[float], Any],
    a: float,
    b: float,
    *,
    tol: float,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
    points: Sequence[float] | None = None,
    what: str = "adaptive_integrate",
) -> IntegrationResult:
    """Vector-valued adaptive Gauss-Kronrod integration over a finite interval."""
    inner = [float(c) for c in (points or ()) if a < c < b]
    with np.errstate(over="ignore", under="ignore"):
        value, error, info = integrate.quad_vec(
            g,
            a,
            b,
            epsabs=settings.absolute_floor,
            epsrel=tol,
            norm="max",
            limit=settings.max_subdivisions,
            points=sorted(set(inner)) or None,
            full_output=True,
        )
    _finite(value, what)
    scale = float(np.max(np.abs(value))) if np.size(value) else 0.0
    allowed = max(settings.absolute_floor, tol * scale)
    if info.status != 0 and error > 10.0 * allowed:
        raise QuadratureError(
            f"{what}: tolerance {tol:.1e} not reached on [{a:.6g}, {b:.6g}] "
            f"(error estimate {error:.3e}, status {info.status})"
        )
    if error > allowed:
        logger.debug(f"{what}: error estimate {error:.2e} above target {allowed:.2e}")
    return IntegrationResult(value, float(error), int(info.neval))


def _integrand_class(
    f: Any, decay: DecayClass | None, support: tuple[float, float] | None
) -> tuple[DecayClass | None, tuple[float, float] | None]:
    if isinstance(f, SampledFunction):
        return decay or f.decay_class, support or f.support
    return decay, support


def integrate_measure(
    f: SampledFunction | Callable[[FloatArray], Any],
    p: DunklParameter,
    scheme: Scheme = Scheme.GAUSS,
    *,
    decay: DecayClass | None = None,
    support: tuple[float, float] | None = None,
    order: int | None = None,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> IntegrationResult:
    """
    Integral of f(x)|x|^{2k} over the line.

    scheme=GAUSS multiplies f by e^{x^2} at the generalized Gauss-Hermite nodes and needs
    f of the gaussian decay class. scheme=ADAPTIVE integrates f|x|^{2k} adaptively on the
    declared support (or on [-y_max, y_max] for gaussian decay).
    """
    decay_class, support = _integrand_class(f, decay, support)
    if Scheme(scheme) is Scheme.GAUSS:
        if decay_class is not DecayClass.GAUSSIAN:
            raise DecayClassError(
                f"Gauss scheme needs an integrand of gaussian decay class, got {decay_class}"
            )
        N = int(order or settings.gauss_order)
        rule = generalized_gauss_rule(p, N)
        nodes = rule.nodes
        value = rule.integrate(_finite(np.asarray(f(nodes)) * np.exp(nodes * nodes), "gauss"))
        coarse = generalized_gauss_rule(p, max(1, N - max(4, N // 4)))
        coarse_value = coarse.integrate(np.asarray(f(coarse.nodes)) * np.exp(coarse.nodes**2))
        return IntegrationResult(value, float(np.max(np.abs(value - coarse_value))), 2 * N)

    if support is None:
        if decay_class is not DecayClass.GAUSSIAN:
            raise DecayClassError("adaptive scheme needs a declared support for this integrand")
        support = (-settings.y_max, settings.y_max)
    a, b = support
    twice_k = 2.0 * p.k

    def integrand(x: float) -> Any:
        return np.asarray(f(np.asarray(x)), dtype=float) * abs(x) ** twice_k

    return adaptive_integrate(
        integrand,
        a,
        b,
        tol=settings.adaptive_tol,
        settings=settings,
        points=[0.0],
        what="integrate_measure",
    )


@dataclass(frozen=True)
class SingularitySpec:
    """Endpoint behavior s^a at 0 and (1-s)^b at 1 plus the substitution to apply."""

    left_exponent: float = 0.0
    right_exponent: float = 0.0
    transform: Substitution = Substitution.NONE

    def __post_init__(self) -> None:
        if not (self.left_exponent > -1 and self.right_exponent > -1):
            raise DomainError(
                f"non-integrable endpoint exponents ({self.left_exponent}, {self.right_exponent})"
            )
        object.__setattr__(self, "transform", Substitution(self.transform))

    @classmethod
    def for_exponents(cls, left: float, right: float) -> SingularitySpec:
        """Pick the square-root substitution for the more singular endpoint."""
        if min(left, right) >= 0:
            return cls(left, right, Substitution.NONE)
        transform = Substitution.SQRT_LEFT if left <= right else Substitution.SQRT_RIGHT
        return cls(left, right, transform)


def unit_interval_integrate(
    g: Callable[[float], Any],
    spec: SingularitySpec,
    *,
    tol: float | None = None,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> IntegrationResult:
    """
    Integral of g over (0, 1) after the substitution named by `spec`.

    sqrt_left: s = sigma^2; sqrt_right: s = 1 - sigma^2; exp_right: s = e^{-2u} with
    u over (0, inf) (half-line integration).
    """
    tol = settings.unit_interval_tol if tol is None else tol
    transform = spec.transform
    if transform is Substitution.EXP_RIGHT:

        def on_halfline(u: float) -> Any:
            r = math.exp(-2.0 * u)
            return np.asarray(g(r), dtype=float) * (2.0 * r)

        return halfline_integrate(
            on_halfline, HalflineDecay.EXPONENTIAL, tol=tol, settings=settings
        )
    if transform is Substitution.SQRT_LEFT:

        def mapped(sigma: float) -> Any:
            return np.asarray(g(sigma * sigma), dtype=float) * (2.0 * sigma)

    elif transform is Substitution.SQRT_RIGHT:

        def mapped(sigma: float) -> Any:
            return np.asarray(g(1.0 - sigma * sigma), dtype=float) * (2.0 * sigma)

    else:
        mapped = g
    return adaptive_integrate(
        mapped, 0.0, 1.0, tol=tol, settings=settings, what="unit_interval_integrate"
    )


def _halfline_window(
    h: Callable[[float], Any], v_lo: float, v_hi: float, tail: float
) -> tuple[float, float, float] | None:
    # Sample h on a 0.25-spaced grid in v = log u. Every component is scaled by its own
    # peak, and the window is the span where some component reaches `tail`, padded by
    # one grid step on each side.
    grid = np.arange(v_lo, v_hi + 0.125, 0.25)
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        samples = np.stack([np.abs(np.atleast_1d(np.asarray(h(v), dtype=float))) for v in grid])
    samples = np.where(np.isfinite(samples), samples, np.inf)
    if np.any(np.isinf(samples)):
        raise QuadratureError("halfline_integrate: NaN or infinity from integrand")
    samples = samples.reshape(grid.size, -1)
    peaks = samples.max(axis=0)
    live = peaks > 0
    if not np.any(live):
        return None
    relative = samples[:, live] / peaks[live]
    keep = np.flatnonzero(np.any(relative >= tail, axis=1))
    i0, i1 = int(keep[0]), int(keep[-1])
    if i0 == 0 or i1 == grid.size - 1:
        logger.warning(
            f"halfline_integrate: integrand still significant at the window edge "
            f"(v in [{grid[i0]:.2f}, {grid[i1]:.2f}])"
        )
    peak = float(grid[int(np.argmax(samples.max(axis=1)))])
    return float(grid[max(i0 - 1, 0)]), float(grid[min(i1 + 1, grid.size - 1)]), peak


def halfline_integrate(
    g: Callable[[float], Any],
    decay: HalflineDecay = HalflineDecay.EXPONENTIAL,
    *,
    tol: float | None = None,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> IntegrationResult:
    """
    Integral of g over (0, inf) with u = e^v; the v-window drops tails below
    `tail_fraction` of the peak. g may be vector valued.
    """
    tol = settings.halfline_tol if tol is None else tol
    v_hi = 8.0 if HalflineDecay(decay) is HalflineDecay.EXPONENTIAL else 40.0

    def h(v: float) -> Any:
        u = math.exp(v)
        return np.asarray(g(u), dtype=float) * u

    window = _halfline_window(h, -60.0, v_hi, settings.tail_fraction)
    if window is None:
        return IntegrationResult(np.zeros_like(np.asarray(h(0.0), dtype=float)), 0.0)
    lo, hi, peak = window
    logger.trace(f"halfline window v in [{lo:.2f}, {hi:.2f}], peak at {peak:.2f}")
    result = adaptive_integrate(
        h, lo, hi, tol=tol, settings=settings, points=[peak], what="halfline_integrate"
    )
    value = float(result.value) if np.ndim(result.value) == 0 else result.value
    return IntegrationResult(value, result.error, result.evaluations)


def truncation_exponents(p: DunklParameter, x: float) -> tuple[float, ...]:
    """Powers of eps in I(eps) - PV, lowest first; powers within 0.05 of a lower one merge."""
    candidates = [1.0, 2.0]
    if x == 0.0 and p.k > 0:
        # the folded annulus integrand carries |h|^{2k} at the origin
        candidates += [2.0 * p.k, 2.0 * p.k + 1.0]
    exponents = [0.0]
    for e in sorted(candidates):
        if e - exponents[-1] >= PV_EXPONENT_SEPARATION:
            exponents.append(e)
    return tuple(exponents[1:])


def _extrapolate(eps: FloatArray, values: FloatArray, exponents: Sequence[float]) -> float:
    """Constant term of the interpolant sum_j c_j eps^{e_j} (with e_0 = 0) through the data."""
    design = eps[:, None] ** np.asarray((0.0, *exponents))
    return float(np.linalg.solve(design, values)[0])


def principal_value_integrate(
    kernel: Callable[[float, FloatArray], Any],
    f: SampledFunction | Callable[[FloatArray], Any],
    p: DunklParameter,
    x: float,
    eps_schedule: Sequence[float] | None = None,
    *,
    domain: tuple[float, float] | None = None,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> PrincipalValueResult:
    """
    PV of the integral of kernel(x, y) f(y) |y|^{2k} dy.

    I(eps_j) over |x - y| > eps_j is the outer integral plus folded annuli
    g(x + h) + g(x - h) on [eps_{j+1}, eps_j]. The limit comes from an exact fit of
    I(eps) = PV + sum_j c_j eps^{e_j} on the last levels, the error from the same fit one
    level earlier. Off the origin the exponents are 1 and 2 (a quadratic in eps); at x = 0
    the weight |y|^{2k} adds 2k and 2k + 1.
    """
    x = float(x)
    schedule = tuple(float(e) for e in (eps_schedule or settings.eps_schedule(x)))
    if len(schedule) < 4:
        raise DomainError("eps schedule needs at least 4 levels")
    if any(e <= 0 for e in schedule) or any(b >= a for a, b in pairwise(schedule)):
        raise DomainError(f"eps schedule must be positive and decreasing, got {schedule}")
    reach = settings.y_max / 2
    a, b = domain or (min(-settings.y_max, x - reach), max(settings.y_max, x + reach))
    eps0 = schedule[0]
    if not (a < x - eps0 and x + eps0 < b):
        raise DomainError(f"x={x} with eps={eps0} does not fit inside the domain [{a}, {b}]")
    twice_k = 2.0 * p.k

    def weighted(y: FloatArray) -> FloatArray:
        values = np.asarray(kernel(x, y), dtype=float) * np.asarray(f(y), dtype=float)
        return values * np.abs(y) ** twice_k

    order = settings.panel_order
    pieces = []
    for lo, hi, edge in ((a, x - eps0, x - eps0), (x + eps0, b, x + eps0)):
        panels = max(1, math.ceil((hi - lo) / settings.panel_width))
        pieces.append(panel_rule(lo, hi, panels, order, breakpoints=[0.0], cluster=[edge, 0.0]))
    outer_rule = QuadratureRule(
        np.concatenate([r.nodes for r in pieces]),
        np.concatenate([r.weights for r in pieces]),
        RuleKind.PV_TRUNCATED,
        sum(r.order for r in pieces),
        p.k,
        metadata={"x": x, "eps": eps0},
    )
    outer_nodes = outer_rule.nodes

    # Annulus j covers eps_{j+1} < |x - y| < eps_j. Both sides share the nodes h, so
    # g(x + h) + g(x - h) is integrated once and the odd 1/(x - y) part cancels.
    gx, gw = _legendre(order)
    rings = []
    for hi, lo in pairwise(schedule):
        half, mid = 0.5 * (hi - lo), 0.5 * (hi + lo)
        rings.append((mid + half * gx, half * gw))
    ring_nodes = np.concatenate([r[0] for r in rings])
    values = _finite(
        weighted(np.concatenate([outer_nodes, x + ring_nodes, x - ring_nodes])),
        "principal_value_integrate",
    )
    n_out, n_ring = outer_nodes.size, ring_nodes.size
    outer = float(outer_rule.integrate(values[:n_out]))
    folded = values[n_out : n_out + n_ring] + values[n_out + n_ring :]
    ring_sums = []
    start = 0
    for nodes, weights in rings:
        ring_sums.append(float(np.dot(weights, folded[start : start + nodes.size])))
        start += nodes.size
    truncated = np.concatenate([[outer], outer + np.cumsum(ring_sums)])

    # a PV kernel makes the increments shrink with eps; a log divergence keeps them flat
    steps = np.abs(np.diff(truncated))
    noise = 1e-12 * max(1.0, float(np.max(np.abs(truncated))))
    if steps[-1] > noise and steps[-1] > 0.9 * steps[-2]:
        raise PrincipalValueError(
            f"truncated integrals at x={x} are not contracting "
            f"(last steps {steps[-2]:.3e}, {steps[-1]:.3e}); kernel singularity is not of PV type"
        )
    eps = np.asarray(schedule)
    exponents = truncation_exponents(p, x)[: len(schedule) - 2]
    size = len(exponents) + 1
    value = _extrapolate(eps[-size:], truncated[-size:], exponents)
    previous = _extrapolate(eps[-size - 1 : -1], truncated[-size - 1 : -1], exponents)
    error = abs(value - previous) + 1e-15 * abs(value)
    logger.trace(f"PV at x={x:.4g}: I(eps)={truncated.tolist()} -> {value:.12g} +- {error:.1e}")
    return PrincipalValueResult(value, error, schedule, tuple(float(t) for t in truncated))


def save_rule_csv(rule: QuadratureRule, path: Path, precision: int = 17) -> Path:
    """Persist a rule as CSV (node, weight) with k, kind and order in the header."""
    k_text = "" if rule.k is None else repr(rule.k)
    header = [f"k={k_text}", f"kind={rule.kind}", f"order={rule.order}"]
    rows = zip(rule.nodes.tolist(), rule.weights.tolist(), strict=True)
    return write_csv(Path(path), ["node", "weight"], rows, header, precision)


def load_rule_csv(path: Path) -> QuadratureRule:
    header, columns, rows = read_csv(Path(path))
    if columns != ["node", "weight"]:
        raise DomainError(f"{path}: expected columns node,weight, got {columns}")
    meta = dict(line.split("=", 1) for line in header if "=" in line)
    data = np.asarray(rows, dtype=float).reshape(-1, 2)
    k = float(meta["k"]) if meta.get("k") else None
    return QuadratureRule(data[:, 0], data[:, 1], RuleKind(meta["kind"]), int(meta["order"]), k)
