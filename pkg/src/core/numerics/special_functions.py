"""
Scalar special functions of rank-one Dunkl analysis.

Laguerre polynomials, normalized Bessel functions j_alpha(iu), the Dunkl kernel E_k,
Dunkl-Hermite polynomials and functions, the ladder coefficients theta(n, k), and the
pointwise Dunkl operator T_k and Dunkl-Hermite operator L_k = T_k^2 - x^2.

Every function accepts scalars or numpy arrays and returns the same shape (a Python
float for scalar input).
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from enum import StrEnum
from typing import Any

import numpy as np
from loguru import logger
from numpy.typing import ArrayLike, NDArray
from scipy import special

from .errors import ConvergenceError, DomainError, EvaluationError

FloatArray = NDArray[np.float64]
RealFunction = Callable[[FloatArray], Any]

BESSEL_SERIES_CUTOFF = 30.0
BESSEL_SERIES_MAX_TERMS = 400
BESSEL_SERIES_RTOL = 1e-17
DUNKL_ZERO_THRESHOLD = 1e-6
DIFFERENCE_STEP_SCALE = float(np.finfo(float).eps ** 0.2)
HANKEL_CUTOFF = 1e4
HANKEL_CUTOFF_SCALE = 500.0
HANKEL_TERMS = 14


class Sign(StrEnum):
    """Orientation of the Hilbert and conjugate operators."""

    PLUS = "+"
    MINUS = "-"

    @property
    def factor(self) -> float:
        return 1.0 if self is Sign.PLUS else -1.0

    @classmethod
    def parse(cls, value: str | Sign) -> Sign:
        if isinstance(value, Sign):
            return value
        text = str(value).strip().lower()
        if text in {"+", "plus", "p"}:
            return cls.PLUS
        if text in {"-", "minus", "m"}:
            return cls.MINUS
        raise DomainError(f"sign must be + or -, got {value!r}")


@dataclass(frozen=True)
class DunklParameter:
    """Multiplicity k >= 0 with the derived normalization c_k = 1 / Gamma(k + 1/2)."""

    k: float

    def __post_init__(self) -> None:
        try:
            k = float(self.k)
        except (TypeError, ValueError) as e:
            raise DomainError(f"k must be a real number, got {self.k!r}") from e
        if not np.isfinite(k) or k < 0:
            raise DomainError(f"k must be nonnegative, got {self.k!r}")
        object.__setattr__(self, "k", k)

    @property
    def log_mass(self) -> float:
        """log Gamma(k + 1/2), the log of the integral of e^{-x^2}|x|^{2k}."""
        return float(special.gammaln(self.k + 0.5))

    @property
    def mass(self) -> float:
        return float(np.exp(self.log_mass))

    @property
    def c_k(self) -> float:
        return float(np.exp(-self.log_mass))

    def eigenvalue(self, n: ArrayLike) -> Any:
        """2n + 2k + 1, minus the eigenvalue of L_k on h_n^k."""
        return 2.0 * np.asarray(n, dtype=float) + 2.0 * self.k + 1.0

    def __str__(self) -> str:
        return f"k={self.k:g}"


class NullBasis:
    """The basis element h_{-1} = 0 produced by lowering h_0."""

    _instance: NullBasis | None = None

    def __new__(cls) -> NullBasis:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self) -> bool:
        return False

    def __repr__(self) -> str:
        return "NULL_BASIS"


NULL_BASIS = NullBasis()


@dataclass(frozen=True)
class BasisIndex:
    """Index n >= 0 of h_n^k."""

    n: int

    def __post_init__(self) -> None:
        _check_order(self.n)

    def lower(self) -> BasisIndex | NullBasis:
        return NULL_BASIS if self.n == 0 else BasisIndex(self.n - 1)

    def higher(self) -> BasisIndex:
        return BasisIndex(self.n + 1)


def _check_order(n: Any) -> int:
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise DomainError(f"basis order must be a nonnegative integer, got {n!r}")
    return int(n)


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not alpha >= -0.5:
        raise DomainError(f"index alpha must be >= -1/2, got {alpha!r}")
    return alpha


def _restore(template: ArrayLike, values: Any) -> Any:
    if np.ndim(template) == 0:
        return float(np.asarray(values).reshape(()))
    return values


def _restore_pair(x: ArrayLike, y: ArrayLike, values: Any) -> Any:
    if np.ndim(x) == 0 and np.ndim(y) == 0:
        return float(np.asarray(values).reshape(()))
    return values


def laguerre(n: int, alpha: float, x: ArrayLike) -> Any:
    """L_n^alpha(x) by the three-term recurrence."""
    n = _check_order(n)
    alpha = _check_alpha(alpha)
    xs = np.asarray(x, dtype=float)
    previous = np.ones_like(xs)
    if n == 0:
        return _restore(x, previous)
    current = 1.0 + alpha - xs
    for m in range(1, n):
        previous, current = (
            current,
            ((2 * m + 1 + alpha - xs) * current - (m + alpha) * previous) / (m + 1),
        )
    return _restore(x, current)


def normalized_modified_bessel(alpha: float, u: ArrayLike) -> Any:
    """
    j_alpha(iu) = Gamma(alpha+1) sum_m (u/2)^{2m} / (m! Gamma(m+alpha+1)).

    The series has positive terms; it stops once the last term is below 1e-17 of the
    partial sum and raises ConvergenceError after 400 terms.
    """
    alpha = _check_alpha(alpha)
    us = np.asarray(u, dtype=float)
    q = 0.25 * us * us
    term = np.ones_like(us)
    total = np.ones_like(us)
    for m in range(BESSEL_SERIES_MAX_TERMS):
        term = term * q / ((m + 1) * (m + alpha + 1))
        total = total + term
        if np.all(term <= BESSEL_SERIES_RTOL * total):
            return _restore(u, total)
    raise ConvergenceError(
        f"normalized_modified_bessel(alpha={alpha}) did not converge in "
        f"{BESSEL_SERIES_MAX_TERMS} terms (max |u| = {float(np.max(np.abs(us))):.3g})"
    )


def _hankel_coefficients(nu: float) -> FloatArray:
    """a_m(nu) = prod_{j<=m} (4nu^2 - (2j-1)^2) / (8j), the large-u series of e^{-u} I_nu(u)."""
    out = np.ones(HANKEL_TERMS)
    for m in range(1, HANKEL_TERMS):
        out[m] = out[m - 1] * (4.0 * nu * nu - (2 * m - 1) ** 2) / (8.0 * m)
    return out


def _hankel_cutoff(nu: float) -> float:
    return max(HANKEL_CUTOFF, HANKEL_CUTOFF_SCALE * (abs(nu) + 1.0) ** 2)


def _log_hankel_sum(coefficients: FloatArray, u: FloatArray) -> FloatArray:
    """log((2 pi u)^{-1/2} sum_m (-1)^m c_m u^{-m}) for u past the Hankel cutoff."""
    series = np.polynomial.polynomial.polyval(-1.0 / u, coefficients)
    return -0.5 * np.log(2.0 * np.pi * u) + np.log(series)


def log_scaled_bessel_i(nu: float, u: ArrayLike) -> Any:
    """
    log(e^{-u} I_nu(u)) for u > 0.

    scipy's ive is used up to the Hankel cutoff; past it (ive turns to NaN
    around u = 1e9) the asymptotic series is summed in log space.
    """
    us = np.atleast_1d(np.asarray(u, dtype=float))
    if np.any(us <= 0.0):
        raise DomainError("log_scaled_bessel_i needs u > 0")
    out = np.empty_like(us)
    far = us > _hankel_cutoff(nu)
    out[~far] = np.log(special.ive(nu, us[~far]))
    if np.any(far):
        out[far] = _log_hankel_sum(_hankel_coefficients(nu), us[far])
    return _restore(u, out)


def log_normalized_modified_bessel(alpha: float, u: ArrayLike) -> Any:
    """log j_alpha(iu): series for |u| <= 30, exponentially scaled Bessel I above."""
    alpha = _check_alpha(alpha)
    us = np.abs(np.asarray(u, dtype=float))
    out = np.empty_like(us)
    small = us <= BESSEL_SERIES_CUTOFF
    if np.any(small):
        out[small] = np.log(normalized_modified_bessel(alpha, us[small]))
    large = ~small
    if np.any(large):
        ul = us[large]
        out[large] = (
            special.gammaln(alpha + 1.0)
            + alpha * np.log(2.0 / ul)
            + np.asarray(log_scaled_bessel_i(alpha, ul))
            + ul
        )
    return _restore(u, out)


def log_dunkl_kernel_scaled(p: DunklParameter, w: ArrayLike) -> Any:
    """
    log E_k - |w| as a function of the product w = x*y.

    E_k depends on (x, y) only through xy. The scaled form stays bounded (it is <= 0)
    where E_k itself overflows.
    """
    ws = np.atleast_1d(np.asarray(w, dtype=float))
    if p.k == 0.0:
        return _restore(w, ws - np.abs(ws))

    k = p.k
    aw = np.abs(ws)
    scaled = np.ones_like(ws)
    small = aw <= BESSEL_SERIES_CUTOFF
    if np.any(small):
        wsm = ws[small]
        kernel = normalized_modified_bessel(k - 0.5, wsm) + wsm / (2 * k + 1) * (
            normalized_modified_bessel(k + 0.5, wsm)
        )
        scaled[small] = kernel * np.exp(-np.abs(wsm))
    with np.errstate(divide="ignore"):
        out = np.log(np.maximum(scaled, 0.0))
    large = ~small
    if np.any(large):
        # For |w| > 30 the two normalized Bessel terms share the prefactor
        # Gamma(k+1/2) (2/|w|)^{k-1/2}, leaving ive(k-1/2, |w|) +- ive(k+1/2, |w|).
        al = aw[large]
        sign = np.sign(ws[large])
        nu = k - 0.5
        prefactor = special.gammaln(k + 0.5) + nu * np.log(2.0 / al)
        bracket = np.empty_like(al)
        far = al > _hankel_cutoff(k + 0.5)
        near = ~far
        terms = special.ive(nu, al[near]) + sign[near] * special.ive(nu + 1.0, al[near])
        # cancellation for large negative w can leave a tiny negative residue
        with np.errstate(divide="ignore"):
            bracket[near] = np.log(np.maximum(terms, 0.0))
        if np.any(far):
            # summed coefficient by coefficient: for w < 0 the leading terms
            # cancel exactly and the series starts at k / |w|
            lower, upper = _hankel_coefficients(nu), _hankel_coefficients(nu + 1.0)
            for s in (-1.0, 1.0):
                pick = far & (sign == s)
                if np.any(pick):
                    bracket[pick] = _log_hankel_sum(lower + s * upper, al[pick])
        out[large] = prefactor + bracket
    return _restore(w, out)


def log_dunkl_kernel(p: DunklParameter, x: ArrayLike, y: ArrayLike) -> Any:
    xs, ys = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    w = xs * ys
    out = log_dunkl_kernel_scaled(p, w) + np.abs(w)
    return _restore_pair(x, y, out)


def dunkl_kernel(p: DunklParameter, x: ArrayLike, y: ArrayLike) -> Any:
    """E_k(x, y) = j_{k-1/2}(ixy) + xy/(2k+1) j_{k+1/2}(ixy); equals e^{xy} at k = 0."""
    xs, ys = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    w = xs * ys
    if p.k == 0.0:
        out = np.exp(w)
    else:
        out = np.exp(log_dunkl_kernel_scaled(p, w) + np.abs(w))
    return _restore_pair(x, y, out)


def theta(n: ArrayLike, p: DunklParameter) -> Any:
    """Ladder coefficient: sqrt(2n) for even n, sqrt(2n + 4k) for odd n."""
    ns = np.asarray(n)
    if np.any(ns < 0):
        raise DomainError(f"theta needs n >= 0, got {n!r}")
    nf = ns.astype(float)
    out = np.where(ns % 2 == 0, np.sqrt(2.0 * nf), np.sqrt(2.0 * nf + 4.0 * p.k))
    return _restore(n, out)


def dunkl_hermite_poly(p: DunklParameter, n: int, x: ArrayLike) -> Any:
    """Generalized Hermite polynomial H_n^k through Laguerre polynomials of index k -+ 1/2."""
    n = _check_order(n)
    m, odd = divmod(n, 2)
    sign = -1.0 if m % 2 else 1.0
    xs = np.asarray(x, dtype=float)
    if odd:
        norm = np.exp(0.5 * (special.gammaln(m + 1.0) - special.gammaln(m + p.k + 1.5)))
        out = sign * norm * xs * laguerre(m, p.k + 0.5, xs * xs)
    else:
        norm = np.exp(0.5 * (special.gammaln(m + 1.0) - special.gammaln(m + p.k + 0.5)))
        out = sign * norm * laguerre(m, p.k - 0.5, xs * xs)
    return _restore(x, out)


def dunkl_hermite_fn(p: DunklParameter, n: int, x: ArrayLike) -> Any:
    """h_n^k(x) = e^{-x^2/2} H_n^k(x)."""
    xs = np.asarray(x, dtype=float)
    out = np.exp(-0.5 * xs * xs) * dunkl_hermite_poly(p, n, xs)
    return _restore(x, out)


def dunkl_hermite_functions(p: DunklParameter, N: int, x: ArrayLike) -> FloatArray:
    """
    Rows h_0^k .. h_N^k evaluated at x, shape (N + 1,) + shape(x).

    Uses h_{n+1} = (2x h_n - theta(n) h_{n-1}) / theta(n+1), the sum of the two ladder
    relations (T_k + x) h_n = theta(n) h_{n-1} and (T_k - x) h_n = -theta(n+1) h_{n+1}.
    """
    N = _check_order(N)
    xs = np.asarray(x, dtype=float)
    thetas = np.asarray(theta(np.arange(N + 2), p), dtype=float)
    out = np.empty((N + 1, *xs.shape))
    out[0] = np.exp(-0.5 * xs * xs - 0.5 * p.log_mass)
    if N >= 1:
        out[1] = 2.0 * xs * out[0] / thetas[1]
    for n in range(1, N):
        out[n + 1] = (2.0 * xs * out[n] - thetas[n] * out[n - 1]) / thetas[n + 1]
    return out


def _evaluate(f: RealFunction, xs: FloatArray) -> FloatArray:
    try:
        values = np.asarray(f(xs), dtype=float)
    except (ArithmeticError, TypeError, ValueError) as e:
        raise EvaluationError(f"function could not be evaluated: {e}") from e
    values = np.broadcast_to(values, xs.shape)
    if not np.all(np.isfinite(values)):
        raise EvaluationError("function returned non-finite values")
    return values


def difference_step(x: ArrayLike) -> Any:
    """Step eps^{1/5} * max(1, |x|) of the fourth-order central difference."""
    return DIFFERENCE_STEP_SCALE * np.maximum(1.0, np.abs(np.asarray(x, dtype=float)))


def central_difference(f: RealFunction, x: ArrayLike, step: float | None = None) -> Any:
    """Fourth-order central difference approximation of f'(x)."""
    xs = np.asarray(x, dtype=float)
    h = difference_step(xs) if step is None else np.full_like(xs, float(step))
    if np.any(h <= 0):
        raise DomainError(f"difference step must be positive, got {step!r}")
    out = (
        -_evaluate(f, xs + 2 * h)
        + 8.0 * _evaluate(f, xs + h)
        - 8.0 * _evaluate(f, xs - h)
        + _evaluate(f, xs - 2 * h)
    ) / (12.0 * h)
    return _restore(x, out)


def dunkl_apply(
    p: DunklParameter,
    f: RealFunction,
    x: ArrayLike,
    derivative: RealFunction | None = None,
    *,
    step: float | None = None,
) -> Any:
    """
    T_k f(x) = f'(x) + k (f(x) - f(-x)) / x, with (1 + 2k) f'(0) for |x| < 1e-6.

    f must be vectorized. `derivative` is an analytic f'; without it f' comes from a
    fourth-order central difference.
    """
    xs = np.asarray(x, dtype=float)

    def first(points: FloatArray) -> FloatArray:
        if derivative is not None:
            return _evaluate(derivative, points)
        return np.asarray(central_difference(f, points, step), dtype=float)

    near = np.abs(xs) < DUNKL_ZERO_THRESHOLD
    out = first(xs)
    if p.k != 0.0:
        safe = np.where(near, 1.0, xs)
        reflection = (_evaluate(f, xs) - _evaluate(f, -xs)) / safe
        out = out + p.k * np.where(near, 0.0, reflection)
        if np.any(near):
            logger.debug(f"dunkl_apply: limit formula at {int(np.sum(near))} point(s) near 0")
            out = np.where(near, (1.0 + 2.0 * p.k) * first(np.zeros_like(xs)), out)
    return _restore(x, out)


def dunkl_hermite_operator_apply(
    p: DunklParameter,
    f: RealFunction,
    x: ArrayLike,
    derivative: RealFunction | None = None,
    second_derivative: RealFunction | None = None,
) -> Any:
    """
    L_k f(x) = T_k(T_k f)(x) - x^2 f(x).

    With both analytic derivatives the closed form of T_k^2 is used; otherwise T_k is
    applied twice, the inner one through `derivative` when it is given.
    """
    xs = np.asarray(x, dtype=float)
    fx = _evaluate(f, xs)
    k = p.k
    if derivative is not None and second_derivative is not None:
        d1 = _evaluate(derivative, xs)
        d1m = _evaluate(derivative, -xs)
        d2 = _evaluate(second_derivative, xs)
        fmx = _evaluate(f, -xs)
        near = np.abs(xs) < DUNKL_ZERO_THRESHOLD
        safe = np.where(near, 1.0, xs)
        tf_prime = d2 + k * ((d1 + d1m) / safe - (fx - fmx) / (safe * safe))
        ttf = tf_prime + k * (d1 - d1m) / safe
        if np.any(near):
            d2_zero = _evaluate(second_derivative, np.zeros_like(xs))
            ttf = np.where(near, (1.0 + 2.0 * k) * d2_zero, ttf)
    else:

        def tf(points: FloatArray) -> FloatArray:
            return np.asarray(dunkl_apply(p, f, points, derivative), dtype=float)

        ttf = np.asarray(dunkl_apply(p, tf, xs), dtype=float)
    return _restore(x, ttf - xs * xs * fx)
