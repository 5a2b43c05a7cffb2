import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from src.core.numerics.errors import DomainError, EvaluationError
from src.core.numerics.quadrature import generalized_gauss_rule
from src.core.numerics.special_functions import (
    NULL_BASIS,
    BasisIndex,
    DunklParameter,
    Sign,
    dunkl_apply,
    dunkl_hermite_fn,
    dunkl_hermite_functions,
    dunkl_hermite_operator_apply,
    dunkl_kernel,
    laguerre,
    log_dunkl_kernel,
    log_dunkl_kernel_scaled,
    log_scaled_bessel_i,
    normalized_modified_bessel,
    theta,
)


def test_parameter_validation():
    """k must be a finite nonnegative real."""
    assert DunklParameter(1).k == 1.0
    for bad in (-0.1, math.inf, math.nan, "x"):
        with pytest.raises(DomainError):
            DunklParameter(bad)


def test_parameter_normalization():
    p = DunklParameter(0.5)
    assert p.mass == pytest.approx(1.0)
    assert p.c_k == pytest.approx(1.0)
    assert DunklParameter(0.0).c_k == pytest.approx(1.0 / math.sqrt(math.pi))
    assert p.eigenvalue(3) == pytest.approx(8.0)


def test_sign_parse():
    assert Sign.parse("+") is Sign.PLUS
    assert Sign.parse("minus") is Sign.MINUS
    assert Sign.MINUS.factor == -1.0
    with pytest.raises(DomainError):
        Sign.parse("*")


def test_basis_index_lowering():
    assert BasisIndex(0).lower() is NULL_BASIS
    assert not NULL_BASIS
    assert BasisIndex(3).lower() == BasisIndex(2)
    with pytest.raises(DomainError):
        BasisIndex(-1)


def test_laguerre_matches_scipy():
    x = np.linspace(0.0, 20.0, 41)
    for n in (0, 1, 5, 12):
        for alpha in (-0.5, 0.0, 1.0, 2.5):
            expected = special.eval_genlaguerre(n, alpha, x)
            np.testing.assert_allclose(laguerre(n, alpha, x), expected, rtol=1e-12, atol=1e-12)


def test_laguerre_rejects_bad_arguments():
    with pytest.raises(DomainError):
        laguerre(-1, 0.0, 1.0)
    with pytest.raises(DomainError):
        laguerre(2, -0.75, 1.0)


def test_normalized_bessel_against_scipy():
    """j_alpha(iu) = Gamma(alpha+1) (2/u)^alpha I_alpha(u)."""
    u = np.array([0.1, 1.0, 5.0, 20.0])
    for alpha in (-0.5, 0.0, 0.5, 2.0):
        expected = special.gamma(alpha + 1) * (2.0 / u) ** alpha * special.iv(alpha, u)
        np.testing.assert_allclose(normalized_modified_bessel(alpha, u), expected, rtol=1e-13)
    assert normalized_modified_bessel(1.0, 0.0) == 1.0


def test_dunkl_kernel_reduces_to_exponential_at_k0():
    x = np.linspace(-3.0, 3.0, 13)
    np.testing.assert_allclose(dunkl_kernel(DunklParameter(0.0), x, 1.3), np.exp(1.3 * x))


def test_dunkl_kernel_closed_form_at_half():
    """At k = 1/2 the kernel is I_0(w) + I_1(w)."""
    p = DunklParameter(0.5)
    w = np.array([-4.0, -1.0, 0.5, 2.0])
    expected = special.i0(w) + special.i1(w)
    np.testing.assert_allclose(dunkl_kernel(p, w, 1.0), expected, rtol=1e-12)


def test_dunkl_kernel_large_arguments_stay_finite(parameter):
    """Past the series cutoff the log form is used; no overflow for |xy| = 900."""
    value = log_dunkl_kernel(parameter, 30.0, 30.0)
    assert math.isfinite(value)
    assert value == pytest.approx(900.0, rel=0.02)
    assert dunkl_kernel(parameter, 0.0, 5.0) == pytest.approx(1.0)


def test_scaled_bessel_follows_scipy_past_the_hankel_cutoff():
    u = np.array([50.0, 2e4, 1e6, 1e8])
    for nu in (-0.5, 0.0, 1.0, 2.5):
        np.testing.assert_allclose(
            log_scaled_bessel_i(nu, u), np.log(special.ive(nu, u)), rtol=0.0, atol=1e-12
        )


def test_scaled_bessel_stays_finite_where_scipy_gives_nan():
    for u in (1e10, 1e20, 1e40):
        value = log_scaled_bessel_i(1.0, u)
        assert math.isfinite(value)
        assert value == pytest.approx(-0.5 * math.log(2.0 * math.pi * u), rel=1e-12)
    with pytest.raises(DomainError):
        log_scaled_bessel_i(0.0, 0.0)


def test_scaled_dunkl_kernel_at_huge_products():
    """At k = 1/2, e^{-|w|} E = ive_0 +- ive_1 ~ (2 pi |w|)^{-1/2} times 2 or 1/(2|w|)."""
    half = DunklParameter(0.5)
    for w in (1e12, 1e25):
        base = -0.5 * math.log(2.0 * math.pi * w)
        assert log_dunkl_kernel_scaled(half, w) == pytest.approx(base + math.log(2.0), rel=1e-10)
        assert log_dunkl_kernel_scaled(half, -w) == pytest.approx(
            base + math.log(0.5 / w), rel=1e-10
        )


@pytest.mark.parametrize("w", [-2e4, 2e4, -3e5, 3e5])
def test_scaled_dunkl_kernel_series_matches_bessel_form(w):
    k = 1.5
    u = abs(w)
    terms = special.ive(k - 0.5, u) + math.copysign(1.0, w) * special.ive(k + 0.5, u)
    expected = special.gammaln(k + 0.5) + (k - 0.5) * math.log(2.0 / u) + math.log(terms)
    assert log_dunkl_kernel_scaled(DunklParameter(k), w) == pytest.approx(expected, rel=1e-9)


def test_theta_values():
    p = DunklParameter(0.5)
    expected = [0.0, 2.0, 2.0, math.sqrt(8.0), math.sqrt(8.0)]
    np.testing.assert_allclose(theta(np.arange(5), p), expected)
    with pytest.raises(DomainError):
        theta(-1, p)


def test_recurrence_matches_closed_form(parameter):
    """The ladder recurrence and the Laguerre closed form give the same functions."""
    x = np.linspace(-5.0, 5.0, 41)
    rows = dunkl_hermite_functions(parameter, 12, x)
    for n in range(13):
        np.testing.assert_allclose(
            rows[n], dunkl_hermite_fn(parameter, n, x), rtol=1e-10, atol=1e-12
        )


def test_orthonormality(parameter):
    """Gram matrix of h_0..h_20 under |x|^{2k} dx is the identity."""
    rule = generalized_gauss_rule(parameter, 60)
    rows = dunkl_hermite_functions(parameter, 20, rule.nodes)
    gram = (rows * (rule.weights * np.exp(rule.nodes**2))) @ rows.T
    np.testing.assert_allclose(gram, np.eye(21), atol=1e-10)


def test_parity():
    p = DunklParameter(1.5)
    x = np.linspace(0.1, 3.0, 7)
    for n in range(6):
        sign = (-1) ** n
        np.testing.assert_allclose(dunkl_hermite_fn(p, n, -x), sign * dunkl_hermite_fn(p, n, x))


def test_scalar_in_scalar_out(half):
    assert isinstance(dunkl_hermite_fn(half, 3, 0.7), float)
    assert isinstance(dunkl_kernel(half, 0.7, 0.2), float)
    assert dunkl_hermite_fn(half, 3, np.array([0.7])).shape == (1,)


def test_dunkl_operator_on_basis(parameter):
    """(T_k + x) h_n = theta(n) h_{n-1}."""
    x = np.linspace(-3.0, 3.0, 25)
    for n in (1, 2, 5):

        def h(points, n=n):
            return dunkl_hermite_fn(parameter, n, points)

        lowered = np.asarray(dunkl_apply(parameter, h, x)) + x * h(x)
        expected = theta(n, parameter) * dunkl_hermite_fn(parameter, n - 1, x)
        np.testing.assert_allclose(lowered, expected, atol=1e-7)


def test_dunkl_operator_limit_at_zero():
    """At x = 0 the limit (1 + 2k) f'(0) is used."""
    p = DunklParameter(1.0)

    def f(x):
        return np.sin(x)

    assert dunkl_apply(p, f, 0.0) == pytest.approx(3.0, abs=1e-8)
    assert dunkl_apply(p, f, 0.0, derivative=np.cos) == pytest.approx(3.0)


def test_dunkl_hermite_operator_eigenvalues(parameter):
    """L_k h_n = -(2n + 2k + 1) h_n."""
    x = np.linspace(-3.0, 3.0, 19)
    for n in (0, 3, 4):

        def h(points, n=n):
            return dunkl_hermite_fn(parameter, n, points)

        value = dunkl_hermite_operator_apply(parameter, h, x)
        np.testing.assert_allclose(value, -parameter.eigenvalue(n) * h(x), atol=1e-5)


def test_non_finite_function_is_reported(half):
    def broken(x):
        return np.full_like(x, np.nan)

    with pytest.raises(EvaluationError):
        dunkl_apply(half, broken, np.array([0.5]))


@settings(max_examples=40, deadline=None)
@given(
    k=st.floats(min_value=0.0, max_value=3.0),
    x=st.floats(min_value=-3.0, max_value=3.0),
    y=st.floats(min_value=-3.0, max_value=3.0),
)
def test_dunkl_kernel_symmetry(k, x, y):
    """E_k(x, y) = E_k(y, x) and E_k(lx, y) = E_k(x, ly)."""
    p = DunklParameter(k)
    assert dunkl_kernel(p, x, y) == pytest.approx(dunkl_kernel(p, y, x), rel=1e-12)
    assert dunkl_kernel(p, 2.0 * x, y) == pytest.approx(dunkl_kernel(p, x, 2.0 * y), rel=1e-12)
    assert dunkl_kernel(p, x, y) > 0
