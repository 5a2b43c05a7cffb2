"""
Finite Dunkl-Hermite expansions.

Analysis a_n = integral of f h_n^k |x|^{2k}, synthesis, and every multiplier the toolkit
uses: heat e^{-t(2n+2k+1)}, Poisson e^{-t sqrt(2n+2k+1)}, powers of -L_k, the weighted
shifts H_k^+ and H_k^-, the ladder operators T_k -+ x and the conjugate Poisson
multipliers.

Shift operators change the vector length: lowering drops a_0 (h_{-1} = 0) and raising
appends one entry.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np
from loguru import logger
from numpy.typing import ArrayLike

from ..utils.csv_helpers import read_csv, write_csv
from ..utils.json_helpers import load_json_file, save_json_file
from .errors import DecayClassError, DomainError
from .quadrature import (
    DEFAULT_SETTINGS,
    QuadratureSettings,
    generalized_gauss_rule,
    panel_rule,
)
from .samples import DecayClass, SampledFunction
from .special_functions import (
    DunklParameter,
    FloatArray,
    Sign,
    dunkl_hermite_functions,
    theta,
)

DEFAULT_DEGREE = 64
TAIL_WINDOW = 8
COMPACT_CLUSTER_LEVELS = 30

Multiplier = Callable[["SpectralCoefficients"], "SpectralCoefficients"]


@dataclass(frozen=True, eq=False)
class SpectralCoefficients:
    """Coefficients (a_0, ..., a_N) of sum a_n h_n^k."""

    parameter: DunklParameter
    a: FloatArray

    def __post_init__(self) -> None:
        a = np.array(self.a, dtype=float)
        if a.ndim != 1 or a.size == 0:
            raise DomainError(f"coefficient vector must be 1-d and non-empty, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise DomainError("coefficients must be finite")
        a.flags.writeable = False
        object.__setattr__(self, "a", a)

    @classmethod
    def basis(cls, p: DunklParameter, n: int, N: int | None = None) -> SpectralCoefficients:
        """Unit vector e_n of length max(n, N) + 1."""
        a = np.zeros(max(n, N if N is not None else n) + 1)
        a[n] = 1.0
        return cls(p, a)

    @property
    def N(self) -> int:
        return int(self.a.size - 1)

    @property
    def k(self) -> float:
        return self.parameter.k

    def __len__(self) -> int:
        return int(self.a.size)

    def eigenvalues(self) -> FloatArray:
        """2n + 2k + 1 for n = 0..N."""
        return self.parameter.eigenvalue(np.arange(self.a.size))

    def norm(self) -> float:
        return float(np.linalg.norm(self.a))

    def tail_energy(self, window: int = TAIL_WINDOW) -> float:
        """Share of the energy in the last `window` coefficients (0 for the zero vector)."""
        total = float(np.dot(self.a, self.a))
        if total == 0.0:
            return 0.0
        tail = self.a[max(self.a.size - window, 0) :]
        return float(np.dot(tail, tail)) / total

    def with_values(self, a: ArrayLike) -> SpectralCoefficients:
        return SpectralCoefficients(self.parameter, np.asarray(a, dtype=float))

    def padded(self, size: int) -> FloatArray:
        out = np.zeros(max(size, self.a.size))
        out[: self.a.size] = self.a
        return out

    def to_dict(self) -> dict[str, Any]:
        return {"k": self.k, "N": self.N, "a": self.a.tolist()}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> SpectralCoefficients:
        try:
            p = DunklParameter(data["k"])
            a = np.asarray(data["a"], dtype=float)
        except (KeyError, TypeError, ValueError) as e:
            raise DomainError(f"malformed coefficient record: {e}") from e
        if "N" in data and int(data["N"]) != a.size - 1:
            raise DomainError(f"coefficient record declares N={data['N']} but holds {a.size}")
        return cls(p, a)

    def save_json(self, path: Path) -> Path:
        return save_json_file(Path(path), self.to_dict())

    @classmethod
    def load_json(cls, path: Path) -> SpectralCoefficients:
        data = load_json_file(Path(path))
        if data is None:
            raise FileNotFoundError(path)
        return cls.from_dict(data)

    def save_csv(
        self, path: Path, header_lines: Sequence[str] = (), precision: int = 17
    ) -> Path:
        header = [*header_lines, f"k={self.k!r}", f"N={self.N}"]
        rows = ((n, value) for n, value in enumerate(self.a.tolist()))
        return write_csv(Path(path), ["n", "a_n"], rows, header, precision)

    @classmethod
    def load_csv(cls, path: Path) -> SpectralCoefficients:
        header, columns, rows = read_csv(Path(path))
        if columns[:2] != ["n", "a_n"]:
            raise DomainError(f"{path}: expected columns n,a_n, got {columns}")
        meta = dict(line.split("=", 1) for line in header if "=" in line)
        if "k" not in meta:
            raise DomainError(f"{path}: header does not carry k")
        values = [float(row[1]) for row in rows]
        return cls(DunklParameter(float(meta["k"])), np.asarray(values))


def _decay_class(f: Any, decay: DecayClass | None) -> tuple[DecayClass, tuple[float, float] | None]:
    if isinstance(f, SampledFunction):
        return decay or f.decay_class, f.support
    return decay or DecayClass.GAUSSIAN, None


def analyze(
    f: SampledFunction | Callable[[FloatArray], Any],
    p: DunklParameter,
    N: int = DEFAULT_DEGREE,
    *,
    decay: DecayClass | None = None,
    support: tuple[float, float] | None = None,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> SpectralCoefficients:
    """
    a_n = integral of f h_n^k |x|^{2k} for n <= N.

    Gaussian-class f goes through a generalized Gauss-Hermite rule of order
    max(gauss_order, 2N + 8); compactly supported f through composite Gauss-Legendre
    panels on the support, split and clustered at 0.
    """
    if int(N) != N or N < 0:
        raise DomainError(f"expansion degree must be >= 0, got {N!r}")
    N = int(N)
    decay_class, declared = _decay_class(f, decay)
    support = support or declared

    if decay_class is DecayClass.GAUSSIAN and support is None:
        rule = generalized_gauss_rule(p, max(settings.gauss_order, 2 * N + 8))
        nodes = rule.nodes
        with np.errstate(divide="ignore"):
            # w_i e^{x_i^2} stays moderate while each factor may overflow
            scaled = np.where(
                rule.weights > 0, np.exp(np.log(rule.weights) + nodes * nodes), 0.0
            )
        weighted = np.asarray(f(nodes), dtype=float) * scaled
    elif support is not None:
        a, b = support
        panels = max(1, math.ceil((b - a) / settings.panel_width))
        rule = panel_rule(
            a,
            b,
            panels,
            settings.panel_order,
            breakpoints=[0.0],
            cluster=[0.0],
            levels=COMPACT_CLUSTER_LEVELS,
        )
        nodes = rule.nodes
        values = np.asarray(f(nodes), dtype=float)
        weighted = rule.weights * values * np.abs(nodes) ** (2.0 * p.k)
    else:
        raise DecayClassError(
            f"analyze needs a gaussian or compactly supported function, got {decay_class}"
        )
    basis = dunkl_hermite_functions(p, N, nodes)
    coefficients = SpectralCoefficients(p, basis @ weighted)
    logger.debug(
        f"analyze ({p}, N={N}, {len(rule)} nodes): tail energy {coefficients.tail_energy():.2e}"
    )
    return coefficients


def synthesize(c: SpectralCoefficients, x: ArrayLike) -> Any:
    """sum_n a_n h_n^k(x)."""
    xs = np.asarray(x, dtype=float)
    values = np.tensordot(c.a, dunkl_hermite_functions(c.parameter, c.N, xs), axes=1)
    return float(values) if np.ndim(x) == 0 else values


def synthesizer(c: SpectralCoefficients) -> Callable[[FloatArray], Any]:
    """Vectorized callable x -> synthesize(c, x)."""

    def func(x: FloatArray) -> Any:
        return synthesize(c, x)

    return func


def _check_time(t: float, what: str) -> float:
    t = float(t)
    if not t > 0 or not math.isfinite(t):
        raise DomainError(f"{what}: t must be positive, got {t!r}")
    return t


def _check_derivative(order: int) -> int:
    if int(order) != order or order < 0:
        raise DomainError(f"derivative order must be a nonnegative integer, got {order!r}")
    return int(order)


def heat_multiplier(
    c: SpectralCoefficients, t: float, derivative_order: int = 0
) -> SpectralCoefficients:
    """
    a_n -> e^{-t(2n+2k+1)} a_n.
    With derivative_order m the m-th t-derivative: (-(2n+2k+1))^m e^{-t(2n+2k+1)} a_n.
    """
    t = _check_time(t, "heat_multiplier")
    m = _check_derivative(derivative_order)
    lam = c.eigenvalues()
    return c.with_values((-lam) ** m * np.exp(-t * lam) * c.a)


def poisson_multiplier(
    c: SpectralCoefficients, t: float, derivative_order: int = 0
) -> SpectralCoefficients:
    """a_n -> (-sqrt(2n+2k+1))^m e^{-t sqrt(2n+2k+1)} a_n with m = derivative_order."""
    t = _check_time(t, "poisson_multiplier")
    m = _check_derivative(derivative_order)
    root = np.sqrt(c.eigenvalues())
    return c.with_values((-root) ** m * np.exp(-t * root) * c.a)


def number_multiplier(c: SpectralCoefficients, power: float) -> SpectralCoefficients:
    """a_n -> (2n+2k+1)^power a_n; power = 1 is -L_k and power = -1/2 is (-L_k)^{-1/2}."""
    return c.with_values(c.eigenvalues() ** float(power) * c.a)


def _lower(c: SpectralCoefficients, weights: FloatArray) -> SpectralCoefficients:
    """b_{n-1} = w_n a_n for n >= 1; length max(N, 1)."""
    out = np.zeros(max(c.N, 1))
    out[: c.N] = (weights * c.a)[1:]
    return c.with_values(out)


def _raise(c: SpectralCoefficients, weights: FloatArray) -> SpectralCoefficients:
    """b_{n+1} = w_n a_n; b_0 = 0; length N + 2."""
    out = np.zeros(c.a.size + 1)
    out[1:] = weights * c.a
    return c.with_values(out)


def ladder_down(c: SpectralCoefficients) -> SpectralCoefficients:
    """(T_k + x): h_n -> theta(n, k) h_{n-1}."""
    n = np.arange(c.a.size)
    return _lower(c, np.asarray(theta(n, c.parameter), dtype=float))


def ladder_up(c: SpectralCoefficients) -> SpectralCoefficients:
    """(T_k - x): h_n -> -theta(n+1, k) h_{n+1}."""
    n = np.arange(c.a.size)
    return _raise(c, -np.asarray(theta(n + 1, c.parameter), dtype=float))


def hilbert_plus(c: SpectralCoefficients) -> SpectralCoefficients:
    """H_k^+: b_{n-1} = a_n theta(n, k) / sqrt(2n+2k+1); the n = 0 term is dropped."""
    n = np.arange(c.a.size)
    return _lower(c, np.asarray(theta(n, c.parameter)) / np.sqrt(c.eigenvalues()))


def hilbert_minus(c: SpectralCoefficients) -> SpectralCoefficients:
    """H_k^-: b_{n+1} = -a_n theta(n+1, k) / sqrt(2n+2k+1)."""
    n = np.arange(c.a.size)
    return _raise(c, -np.asarray(theta(n + 1, c.parameter)) / np.sqrt(c.eigenvalues()))


def hilbert(c: SpectralCoefficients, sign: Sign | str) -> SpectralCoefficients:
    return hilbert_plus(c) if Sign.parse(sign) is Sign.PLUS else hilbert_minus(c)


def conjugate_multiplier(
    c: SpectralCoefficients, t: float, sign: Sign | str, derivative_order: int = 0
) -> SpectralCoefficients:
    """
    Conjugate Poisson integrals f^+- in coefficient form.

    f^+ = sum a_n e^{-t sqrt(2n+2k+1)} theta(n,k)/sqrt(2n+2k+1) h_{n-1}, which is H^+ F.
    f^- = sum a_n e^{-t sqrt(2n+2k+1)} theta(n+1,k)/sqrt(2n+2k+1) h_{n+1} with no leading
    minus, which is -H^- F. So f^+- = +-H^+- F.
    """
    sign = Sign.parse(sign)
    damped = poisson_multiplier(c, t, derivative_order)
    shifted = hilbert(damped, sign)
    return shifted if sign is Sign.PLUS else shifted.with_values(-shifted.a)


def compose(c: SpectralCoefficients, *operators: Multiplier) -> SpectralCoefficients:
    """Apply `operators` left to right: compose(c, A, B) = B(A(c))."""
    for operator in operators:
        c = operator(c)
    return c


def inner(c: SpectralCoefficients, d: SpectralCoefficients) -> float:
    """L^2(|x|^{2k}dx) inner product of the two synthesized functions (Parseval)."""
    if c.k != d.k:
        raise DomainError(f"inner product of expansions with different k ({c.k} vs {d.k})")
    size = max(c.a.size, d.a.size)
    return float(np.dot(c.padded(size), d.padded(size)))


def operator_matrix(operator: Multiplier, p: DunklParameter, N: int) -> FloatArray:
    """Matrix of `operator` on span{h_0..h_N}: column j holds operator(e_j), rows 0..N+1."""
    columns = []
    for j in range(N + 1):
        image = operator(SpectralCoefficients.basis(p, j, N))
        columns.append(image.padded(N + 2)[: N + 2])
    return np.stack(columns, axis=1)


def shift_bound(p: DunklParameter, N: int, sign: Sign | str) -> float:
    """max over n <= N of the H^+- weight; an l^2 operator-norm bound on degree N inputs."""
    n = np.arange(N + 1)
    lam = p.eigenvalue(n)
    index = n if Sign.parse(sign) is Sign.PLUS else n + 1
    return float(np.max(np.asarray(theta(index, p)) / np.sqrt(lam)))
