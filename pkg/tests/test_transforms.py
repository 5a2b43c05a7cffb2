import math

import numpy as np
import pytest

from src.core.numerics.errors import DomainError, PathDisagreementError
from src.core.numerics.samples import (
    band_limited,
    bump,
    gaussian,
    hermite_element,
    tapered_gaussian,
)
from src.core.numerics.spectral import SpectralCoefficients, analyze, hilbert_plus
from src.core.numerics.special_functions import DunklParameter
from src.core.numerics.transforms import (
    EvaluationPath,
    Method,
    adjoint_check,
    adjoint_matrix_defect,
    coefficient_decay_order,
    compare_paths,
    conjugate_apply,
    conjugate_decay_constant,
    conjugate_system_residual,
    duality_check,
    family_maximum,
    heat_apply,
    heat_norm_bound,
    heat_pde_residual,
    hilbert_apply,
    hilbert_lp_ratio,
    hilbert_pv,
    lp_norm,
    norm_growth_fit,
    poisson_apply,
    poisson_norm_bound,
    poisson_pde_residual,
    sup_norm,
    theoretical_growth_exponent,
)

X = np.linspace(-2.0, 2.0, 9)


def test_heat_paths_agree(parameter):
    f = gaussian()
    spectral = heat_apply(f, parameter, 0.5, X)
    kernel = heat_apply(f, parameter, 0.5, X, EvaluationPath.KERNEL)
    np.testing.assert_allclose(kernel, spectral, atol=1e-7)


def test_heat_of_basis_element(half):
    values = heat_apply(hermite_element(half, 2), half, 0.3, X)
    expected = math.exp(-0.3 * half.eigenvalue(2)) * np.asarray(hermite_element(half, 2)(X))
    np.testing.assert_allclose(values, expected, atol=1e-12)


def test_spectral_path_accepts_coefficients(half):
    c = SpectralCoefficients.basis(half, 1, 4)
    assert heat_apply(c, half, 0.1, 0.5) == pytest.approx(
        math.exp(-0.1 * half.eigenvalue(1)) * hermite_element(half, 1)(0.5)
    )
    with pytest.raises(DomainError):
        heat_apply(c, DunklParameter(1.0), 0.1, 0.5)


def test_kernel_path_needs_moderate_time(half):
    """Below t = 0.05 only the spectral path is offered."""
    assert math.isfinite(heat_apply(gaussian(), half, 0.01, 0.3))
    with pytest.raises(DomainError, match="spectral path"):
        heat_apply(gaussian(), half, 0.01, 0.3, EvaluationPath.KERNEL)
    with pytest.raises(DomainError):
        poisson_apply(gaussian(), half, 0.0, 0.3)


@pytest.mark.slow
def test_poisson_and_conjugate_paths_agree(half):
    f = band_limited(half)
    x = np.array([-1.0, 0.25, 1.5])
    for path_fn in (
        lambda path: poisson_apply(f, half, 0.5, x, path),
        lambda path: conjugate_apply(f, half, 0.5, "+", x, path),
        lambda path: conjugate_apply(f, half, 0.5, "-", x, path),
    ):
        spectral = path_fn(EvaluationPath.SPECTRAL)
        kernel = path_fn(EvaluationPath.KERNEL)
        np.testing.assert_allclose(kernel, spectral, atol=1e-7)


@pytest.mark.slow
def test_hilbert_pv_matches_spectral(half):
    f = gaussian()
    for sign in ("+", "-"):
        spectral = hilbert_apply(f, half, sign, 0.6)
        result = hilbert_pv(f, half, sign, 0.6)
        assert result.value == pytest.approx(spectral, abs=1e-4)
    pv = hilbert_apply(f, half, "+", np.array([0.6]), Method.PV)
    assert pv.shape == (1,)


@pytest.mark.slow
@pytest.mark.parametrize("k", [0.5, 1.5])
def test_hilbert_pv_at_the_origin(k):
    p = DunklParameter(k)

    def shifted(y):
        return np.exp(-((y - 0.5) ** 2))

    for sign in ("+", "-"):
        spectral = hilbert_apply(shifted, p, sign, 0.0)
        assert hilbert_pv(shifted, p, sign, 0.0).value == pytest.approx(spectral, abs=1e-4)


def test_compare_paths():
    comparison = compare_paths(lambda: [1.0, 2.0], lambda: [1.0, 2.0 + 1e-9], [0.0, 1.0], "test")
    assert comparison.max_disagreement == pytest.approx(1e-9, rel=1e-3)
    with pytest.raises(PathDisagreementError) as info:
        compare_paths(lambda: [1.0, 2.0], lambda: [1.0, 2.1], [0.0, 1.0], "test", 1e-3)
    assert "x=1" in str(info.value)


def test_pde_residuals(half):
    f = band_limited(half)
    x = np.linspace(-2.0, 2.0, 7)
    assert np.max(heat_pde_residual(f, half, 0.4, x)) < 1e-4
    assert np.max(poisson_pde_residual(f, half, 0.4, x)) < 1e-4
    for sign in ("+", "-"):
        first, second = conjugate_system_residual(f, half, 0.4, x, sign)
        assert np.max(first) < 1e-4
        assert np.max(second) < 1e-4


def test_lp_norms(parameter):
    """h_0 has unit L^2 norm; the sup norm of the gaussian is 1."""
    h0 = hermite_element(parameter, 0)
    assert lp_norm(h0, parameter, 2.0) == pytest.approx(1.0, rel=1e-10)
    assert sup_norm(gaussian()) == pytest.approx(1.0, rel=1e-12)
    assert lp_norm(gaussian(), parameter, math.inf) == pytest.approx(1.0, rel=1e-12)
    with pytest.raises(DomainError):
        lp_norm(h0, parameter, 0.5)


def test_lp_norm_handles_sign_changes(half):
    """|h_3|^1 has kinks at the zeros of h_3; they become panel edges."""
    h3 = hermite_element(half, 3)
    x = np.linspace(-12.0, 12.0, 400001)
    reference = np.trapezoid(np.abs(h3(x)) * np.abs(x), x)
    assert lp_norm(h3, half, 1.0) == pytest.approx(reference, rel=1e-7)


def test_semigroup_bounds():
    p = DunklParameter(0.5)
    assert heat_norm_bound(p, 0.0) == 1.0
    assert heat_norm_bound(p, 1.0) == pytest.approx(math.cosh(2.0) ** -1.0)
    assert poisson_norm_bound(p, 1.0) == pytest.approx(2.0 * math.exp(-math.sqrt(2.0)))


def test_growth_exponent_branches():
    assert theoretical_growth_exponent(0.5, 2.0) == pytest.approx(0.0)
    assert theoretical_growth_exponent(0.5, 3.0) == pytest.approx(-1.0 / 6.0)
    assert theoretical_growth_exponent(1.5, 4.0) == pytest.approx(-0.375 + 0.375)
    assert theoretical_growth_exponent(0.5, math.inf) == pytest.approx(0.5 / 2 - 1.0 / 12)


def test_growth_exponent_refuses_branch_boundary():
    with pytest.raises(DomainError, match="branch boundary"):
        theoretical_growth_exponent(1.0, 3.0)
    with pytest.raises(DomainError):
        theoretical_growth_exponent(0.5, 0.5)


def test_norm_growth_fit_range_checks(half):
    with pytest.raises(DomainError):
        norm_growth_fit(half, 2.0, (4, 40))
    with pytest.raises(DomainError):
        norm_growth_fit(half, 2.0, (40, 200))


def test_norm_growth_l2_is_flat(half):
    """||h_n||_2 = 1 for every n, so the fitted slope is 0."""
    fit = norm_growth_fit(half, 2.0, (16, 48), stride=8)
    assert fit.degrees == (16, 24, 32, 40, 48)
    assert fit.slope == pytest.approx(0.0, abs=1e-8)
    assert abs(fit.deviation) < 1e-8


@pytest.mark.slow
def test_norm_growth_l1(half):
    fit = norm_growth_fit(half, 1.0, (16, 120), stride=8)
    assert abs(fit.deviation) < 0.05


def test_coefficient_decay(half):
    """A smooth compactly supported function has coefficients decaying faster than any power."""
    c = analyze(tapered_gaussian(), half, 48)
    assert coefficient_decay_order(c, (8, 40)) > 3.0
    with pytest.raises(DomainError):
        coefficient_decay_order(c, (8, 60))


def test_adjoint_matrix_identity(parameter):
    assert adjoint_matrix_defect(parameter, 20) < 1e-12


def test_duality_needs_disjoint_supports(half):
    with pytest.raises(DomainError, match="overlap"):
        duality_check(bump(0.0, 1.0), bump(0.5, 1.0), half, "+")
    with pytest.raises(DomainError):
        duality_check(gaussian(), bump(), half, "+")


@pytest.mark.slow
def test_duality_and_adjoint(half):
    f, g = tapered_gaussian(-2.0, 0.5, 1.5), tapered_gaussian(2.0, 0.5, 1.5)
    for sign in ("+", "-"):
        assert duality_check(f, g, half, sign) < 1e-6
    assert adjoint_check(f, g, half) < 1e-6


def test_hilbert_l2_ratio(half):
    f = band_limited(half)
    assert hilbert_lp_ratio(f, half, "+", 2.0) <= 1.0 + 1e-9
    c = analyze(f, half, 32)
    assert hilbert_plus(c).norm() <= c.norm()


def test_conjugate_decay_constant(half):
    constant = conjugate_decay_constant(band_limited(half), half, 0.5, 2.0)
    assert 0.0 < constant <= 1.0 + 1e-9


def test_family_maximum(half):
    assert family_maximum(lambda f: float(f(0.0) ** 2), half, size=3) >= 0.0
