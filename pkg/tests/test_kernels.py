import math

import numpy as np
import pytest

from src.core.numerics.errors import DomainError
from src.core.numerics.kernels import (
    KERNEL_NAMES,
    KernelPoint,
    beta_weight,
    evaluate_kernel,
    heat_kernel,
    hilbert_kernel,
    hilbert_kernel_parts,
    k_s_dunkl_derivative,
    k_s_kernel,
    mehler_kernel,
    mehler_series,
    mehler_series_degree,
    poisson_kernel,
    poisson_kernel_u,
    subordination,
    subordination_weight_L,
)
from src.core.numerics.quadrature import panel_rule
from src.core.numerics.special_functions import DunklParameter, dunkl_apply, dunkl_hermite_fn


def line_rule(radius=12.0, width=0.25):
    panels = math.ceil(2.0 * radius / width)
    return panel_rule(-radius, radius, panels, 16, breakpoints=[0.0], cluster=[0.0], levels=30)


@pytest.mark.parametrize("r", [0.1, 0.5, 0.9])
def test_mehler_closed_form_matches_series(parameter, r):
    y = np.linspace(-2.0, 2.0, 9)[:, None]
    z = np.linspace(-2.0, 2.0, 9)[None, :]
    closed = mehler_kernel(parameter, r, y, z)
    series = mehler_series(parameter, r, y, z, mehler_series_degree(r))
    np.testing.assert_allclose(closed, series, rtol=1e-8, atol=1e-12)


def test_mehler_series_degree():
    assert mehler_series_degree(0.5) == 120
    assert mehler_series_degree(0.9) == math.ceil(math.log(1e-13) / math.log(0.9))
    # the truncated tail sum_{n>N} 0.9^n stays below the tolerance
    N = mehler_series_degree(0.9)
    assert 0.9 ** (N + 1) / (1.0 - 0.9) < 1e-12


def test_mehler_mass_identity(parameter):
    """integral U(r, y, z)|z|^{2k} dz = (2/(1+r^2))^{k+1/2} e^{-(1-r^2)y^2/(2(1+r^2))}."""
    rule = line_rule()
    k = parameter.k
    for r in (0.3, 0.7):
        for y in (-1.5, 0.0, 2.0):
            values = mehler_kernel(parameter, r, y, rule.nodes) * np.abs(rule.nodes) ** (2 * k)
            expected = (2.0 / (1.0 + r * r)) ** (k + 0.5) * math.exp(
                -0.5 * (1.0 - r * r) / (1.0 + r * r) * y * y
            )
            assert rule.integrate(values) == pytest.approx(expected, rel=1e-10)


def test_heat_mass_identity(parameter):
    """integral P_k(t, x, y)|y|^{2k} dy = (cosh 2t)^{-(k+1/2)} e^{-tanh(2t) x^2 / 2}."""
    rule = line_rule()
    k = parameter.k
    for t in (0.1, 1.0):
        x = 0.8
        values = heat_kernel(parameter, t, x, rule.nodes) * np.abs(rule.nodes) ** (2 * k)
        expected = math.cosh(2 * t) ** -(k + 0.5) * math.exp(-0.5 * math.tanh(2 * t) * x * x)
        assert rule.integrate(values) == pytest.approx(expected, rel=1e-10)


def test_heat_semigroup(parameter):
    rule = line_rule()
    weight = np.abs(rule.nodes) ** (2 * parameter.k)
    t, s, x, y = 0.3, 0.5, 0.4, -1.1
    left = heat_kernel(parameter, t, x, rule.nodes) * heat_kernel(parameter, s, rule.nodes, y)
    expected = heat_kernel(parameter, t + s, x, y)
    assert rule.integrate(left * weight) == pytest.approx(expected, rel=1e-10)


def test_heat_kernel_on_basis(half):
    """integral P_k(t, x, y) h_n(y) |y|^{2k} dy = e^{-t(2n+2k+1)} h_n(x)."""
    rule = line_rule()
    x = np.linspace(-2.0, 2.0, 5)
    for n in (0, 3):
        basis = dunkl_hermite_fn(half, n, rule.nodes) * np.abs(rule.nodes)
        values = heat_kernel(half, 0.2, x[:, None], rule.nodes[None, :]) @ (rule.weights * basis)
        expected = math.exp(-0.2 * half.eigenvalue(n)) * dunkl_hermite_fn(half, n, x)
        np.testing.assert_allclose(values, expected, atol=1e-11)


def test_heat_kernel_symmetry_and_positivity(parameter):
    x = np.linspace(-3.0, 3.0, 7)[:, None]
    y = np.linspace(-3.0, 3.0, 7)[None, :]
    values = heat_kernel(parameter, 0.5, x, y)
    np.testing.assert_allclose(values, values.T, rtol=1e-14)
    assert np.all(values > 0)


def test_heat_kernel_small_time_stays_finite(half):
    """Log-space assembly: no overflow where E_k alone would overflow."""
    value = heat_kernel(half, 1e-3, 5.0, 5.0)
    assert math.isfinite(value)
    assert value > 1.0


def test_k_s_is_heat_kernel_at_tanh(parameter):
    for t in (0.2, 0.9):
        s = math.tanh(t)
        assert k_s_kernel(parameter, s, 0.7, -0.4) == pytest.approx(
            heat_kernel(parameter, t, 0.7, -0.4), rel=1e-12
        )


def test_k_s_dunkl_derivative(parameter):
    x = np.array([-1.3, -0.2, 0.6, 1.9])
    y, s = 0.45, 0.35

    def kernel(points):
        return k_s_kernel(parameter, s, points, y)

    numerical = dunkl_apply(parameter, kernel, x)
    closed = k_s_dunkl_derivative(parameter, s, x, y)
    np.testing.assert_allclose(closed, numerical, atol=1e-8)


def test_weights(half):
    assert beta_weight(half, 0.5) > 0
    assert subordination_weight_L(1.0, 0.5) > 0
    with pytest.raises(DomainError):
        beta_weight(half, 1.0)
    with pytest.raises(DomainError):
        subordination_weight_L(0.0, 0.5)


@pytest.mark.parametrize("beta", [0.5, 1.0, 2.0, 5.0])
def test_subordination(beta):
    assert subordination(beta) == pytest.approx(math.exp(-beta), rel=1e-10)


def test_poisson_kernel_paths_agree(parameter):
    x = np.array([-1.0, 0.0, 0.7])
    y = np.array([0.5, -0.3, 1.2])
    direct = poisson_kernel(parameter, 0.6, x, y)
    via_u = poisson_kernel_u(parameter, 0.6, x, y)
    np.testing.assert_allclose(direct, via_u, rtol=1e-9, atol=1e-13)
    checked = poisson_kernel(parameter, 0.6, 0.2, 0.4, cross_check=True)
    assert checked > 0


def test_poisson_kernel_on_ground_state(half):
    """The Poisson semigroup multiplies h_0 by e^{-t sqrt(2k+1)}."""
    rule = line_rule(radius=10.0, width=0.5)
    basis = dunkl_hermite_fn(half, 0, rule.nodes) * np.abs(rule.nodes)
    values = np.asarray(poisson_kernel(half, 1.0, 0.5, rule.nodes))
    expected = math.exp(-math.sqrt(2.0)) * dunkl_hermite_fn(half, 0, 0.5)
    assert rule.integrate(values * basis) == pytest.approx(expected, rel=1e-7)


def test_hilbert_kernel_excludes_diagonal(half):
    with pytest.raises(DomainError):
        hilbert_kernel_parts(half, 0.5, 0.5)


def test_hilbert_kernel_sign_combination(half):
    r1, r2 = hilbert_kernel_parts(half, 0.3, -0.8)
    plus = hilbert_kernel(half, "+", 0.3, -0.8)
    minus = hilbert_kernel(half, "-", 0.3, -0.8)
    assert plus - minus == pytest.approx(2.0 * math.sqrt(2.0 / math.pi) * r2)
    assert plus + minus == pytest.approx(2.0 * math.sqrt(2.0 / math.pi) * r1)


def test_evaluate_kernel_dispatch(half):
    assert set(KERNEL_NAMES) >= {"mehler", "heat", "poisson", "hilbert"}
    value = evaluate_kernel("heat", half, 0.2, 0.3, t=0.5)
    assert value == pytest.approx(heat_kernel(half, 0.5, 0.2, 0.3))
    with pytest.raises(DomainError, match="needs parameter r"):
        evaluate_kernel("mehler", half, 0.2, 0.3)
    with pytest.raises(DomainError, match="unknown kernel"):
        evaluate_kernel("gauss", half, 0.2, 0.3)


def test_kernel_point_validation():
    with pytest.raises(DomainError):
        KernelPoint(0.0, 1.0, t=-1.0)
    with pytest.raises(DomainError):
        KernelPoint(0.0, 1.0, r=1.0)
    assert KernelPoint(0.0, 1.0, s=0.5).s == 0.5


def test_unit_parameters_are_checked(half):
    with pytest.raises(DomainError):
        mehler_kernel(half, 1.0, 0.0, 0.0)
    with pytest.raises(DomainError):
        k_s_kernel(half, 0.0, 0.0, 0.0)
    with pytest.raises(DomainError):
        heat_kernel(half, -0.1, 0.0, 0.0)


def test_mehler_kernel_accepts_scalar_and_arrays():
    p = DunklParameter(1.0)
    assert isinstance(mehler_kernel(p, 0.5, 0.1, 0.2), float)
    assert mehler_kernel(p, 0.5, np.zeros(3), 0.2).shape == (3,)


def test_poisson_u_form_near_the_origin_of_u(parameter):
    """The u-integrand starts where x*y / sinh(2u) is far beyond scipy's Bessel range."""
    for x, y in ((0.5, 1.0), (-1.0, 2.5), (3.0, -3.0)):
        via_u = poisson_kernel_u(parameter, 0.5, x, y)
        assert math.isfinite(via_u)
        assert via_u == pytest.approx(poisson_kernel(parameter, 0.5, x, y), rel=1e-9)


@pytest.mark.parametrize(("x", "y"), [(1.0, -1.0), (1.0, 0.5), (-2.0, 0.3)])
def test_hilbert_kernel_off_diagonal_is_finite(parameter, x, y):
    r1, r2 = hilbert_kernel_parts(parameter, x, y)
    assert math.isfinite(r1)
    assert math.isfinite(r2)
    assert math.isfinite(hilbert_kernel(parameter, "+", x, y))
