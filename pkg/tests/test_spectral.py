import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.numerics.errors import DecayClassError, DomainError
from src.core.numerics.quadrature import Scheme, integrate_measure
from src.core.numerics.samples import (
    DecayClass,
    SampledFunction,
    band_limited,
    band_limited_coefficients,
    bump,
    function_from_name,
    gaussian,
    hermite_element,
    tapered_gaussian,
)
from src.core.numerics.spectral import (
    SpectralCoefficients,
    analyze,
    compose,
    conjugate_multiplier,
    heat_multiplier,
    hilbert,
    hilbert_minus,
    hilbert_plus,
    inner,
    ladder_down,
    ladder_up,
    number_multiplier,
    operator_matrix,
    poisson_multiplier,
    shift_bound,
    synthesize,
)
from src.core.numerics.special_functions import DunklParameter, dunkl_hermite_fn, theta


def test_basis_element_round_trip(parameter):
    """analyze(h_n) is e_n."""
    for n in (0, 3, 8):
        c = analyze(hermite_element(parameter, n), parameter, 16)
        np.testing.assert_allclose(c.a, np.eye(17)[n], atol=1e-12)


def test_ground_state_has_unit_coefficient():
    p = DunklParameter(0.0)
    c = analyze(hermite_element(p, 0), p, 4)
    np.testing.assert_allclose(c.a, [1.0, 0.0, 0.0, 0.0, 0.0], atol=1e-13)
    # a plain callable takes the same gauss path
    plain = analyze(lambda x: np.exp(-0.5 * x * x) / math.pi**0.25, p, 4)
    np.testing.assert_allclose(plain.a, c.a, atol=1e-13)


def test_band_limited_round_trip(half):
    c = analyze(band_limited(half), half, 24)
    expected = np.zeros(25)
    expected[:17] = band_limited_coefficients()
    np.testing.assert_allclose(c.a, expected, atol=1e-12)
    assert c.norm() == pytest.approx(1.0, abs=1e-12)


def test_synthesize_inverts_analyze(parameter):
    x = np.linspace(-3.0, 3.0, 31)
    c = analyze(gaussian(), parameter, 64)
    np.testing.assert_allclose(synthesize(c, x), np.exp(-(x**2)), atol=1e-10)
    assert c.tail_energy() < 1e-20


def test_compact_support_uses_panels(half):
    """A bump is analyzed on its support; each a_n matches a direct adaptive integral."""
    f = bump()
    c = analyze(f, half, 8)
    for n in range(6):

        def product(x, n=n):
            return f(x) * dunkl_hermite_fn(half, n, x)

        direct = integrate_measure(product, half, Scheme.ADAPTIVE, support=(-1.0, 1.0))
        assert c.a[n] == pytest.approx(direct.value, abs=1e-9)


def test_analyze_needs_decay_class(half):
    f = SampledFunction("flat", np.linspace(-1, 1, 5), np.ones(5))
    with pytest.raises(DecayClassError):
        analyze(f, half, 8)
    with pytest.raises(DomainError):
        analyze(gaussian(), half, -1)


def test_coefficient_validation(half):
    with pytest.raises(DomainError):
        SpectralCoefficients(half, np.array([]))
    with pytest.raises(DomainError):
        SpectralCoefficients(half, np.array([1.0, np.nan]))
    c = SpectralCoefficients.basis(half, 2, 5)
    assert c.N == 5
    assert c.a[2] == 1.0


def test_heat_and_poisson_multipliers(half):
    c = SpectralCoefficients(half, np.ones(4))
    lam = np.array([2.0, 4.0, 6.0, 8.0])
    np.testing.assert_allclose(heat_multiplier(c, 0.3).a, np.exp(-0.3 * lam))
    np.testing.assert_allclose(heat_multiplier(c, 0.3, 1).a, -lam * np.exp(-0.3 * lam))
    np.testing.assert_allclose(poisson_multiplier(c, 0.3).a, np.exp(-0.3 * np.sqrt(lam)))
    np.testing.assert_allclose(poisson_multiplier(c, 0.3, 2).a, lam * np.exp(-0.3 * np.sqrt(lam)))
    np.testing.assert_allclose(number_multiplier(c, -0.5).a, lam**-0.5)
    with pytest.raises(DomainError):
        heat_multiplier(c, 0.0)
    with pytest.raises(DomainError):
        poisson_multiplier(c, 1.0, -1)


def test_ladder_operators(parameter):
    """(T_k + x) h_n = theta(n) h_{n-1} and (T_k - x) h_n = -theta(n+1) h_{n+1}."""
    c = SpectralCoefficients.basis(parameter, 3)
    down = ladder_down(c)
    up = ladder_up(c)
    assert down.N == 2
    assert down.a[2] == pytest.approx(theta(3, parameter))
    assert up.N == 4
    assert up.a[4] == pytest.approx(-theta(4, parameter))


def test_lowering_h0_gives_zero(half):
    """h_{-1} = 0: lowering e_0 produces the zero vector, not an error."""
    c = SpectralCoefficients.basis(half, 0)
    assert np.all(hilbert_plus(c).a == 0.0)
    assert np.all(ladder_down(c).a == 0.0)


def test_hilbert_weights(parameter):
    c = SpectralCoefficients.basis(parameter, 5, 8)
    lam = parameter.eigenvalue(5)
    plus = hilbert_plus(c)
    minus = hilbert_minus(c)
    assert plus.a[4] == pytest.approx(theta(5, parameter) / math.sqrt(lam), abs=1e-15)
    assert minus.a[6] == pytest.approx(-theta(6, parameter) / math.sqrt(lam), abs=1e-15)
    assert hilbert(c, "+").a.tolist() == plus.a.tolist()


def test_hilbert_is_bounded_by_shift_weights(half):
    c = SpectralCoefficients(half, band_limited_coefficients())
    for sign in ("+", "-"):
        assert hilbert(c, sign).norm() <= shift_bound(half, c.N, sign) * c.norm() + 1e-15


def test_conjugate_is_signed_hilbert_of_poisson(half):
    """f^+- = +-H^+- F(t) f."""
    c = SpectralCoefficients(half, band_limited_coefficients())
    damped = poisson_multiplier(c, 0.4)
    np.testing.assert_allclose(conjugate_multiplier(c, 0.4, "+").a, hilbert_plus(damped).a)
    np.testing.assert_allclose(conjugate_multiplier(c, 0.4, "-").a, -hilbert_minus(damped).a)


def test_compose_order(half):
    c = SpectralCoefficients.basis(half, 2)
    once = compose(c, ladder_up, ladder_down)
    np.testing.assert_allclose(once.a, ladder_down(ladder_up(c)).a)


def test_operator_matrix_shape(half):
    matrix = operator_matrix(hilbert_plus, half, 6)
    assert matrix.shape == (8, 7)
    assert matrix[0, 1] == pytest.approx(theta(1, half) / math.sqrt(half.eigenvalue(1)))


def test_inner_requires_same_k(half):
    with pytest.raises(DomainError):
        inner(SpectralCoefficients.basis(half, 1), SpectralCoefficients.basis(DunklParameter(1), 1))


def test_coefficient_files(tmp_path, half):
    c = SpectralCoefficients(half, band_limited_coefficients())
    from_json = SpectralCoefficients.load_json(c.save_json(tmp_path / "c.json"))
    from_csv = SpectralCoefficients.load_csv(c.save_csv(tmp_path / "c.csv", ["fn=bandlimited"]))
    np.testing.assert_array_equal(from_json.a, c.a)
    np.testing.assert_array_equal(from_csv.a, c.a)
    assert from_csv.k == 0.5


def test_coefficient_record_mismatch(half):
    with pytest.raises(DomainError):
        SpectralCoefficients.from_dict({"k": 0.5, "N": 3, "a": [1.0, 2.0]})


def test_function_from_name(half):
    assert function_from_name("gaussian", half).name == "gaussian"
    assert function_from_name("h3", half).parity == "odd"
    assert function_from_name("bump", half).support == (-1.0, 1.0)
    assert function_from_name("tapered", half)(5.0) == 0.0
    with pytest.raises(DomainError):
        function_from_name("sinc", half)


def test_sampled_function_spline():
    """Without an evaluator the samples are interpolated, zero outside for compact class."""
    grid = np.linspace(-1.0, 1.0, 201)
    f = SampledFunction("parabola", grid, 1.0 - grid**2, DecayClass.COMPACT, (-1.0, 1.0))
    assert f(0.5) == pytest.approx(0.75, abs=1e-8)
    assert f(2.0) == 0.0
    with pytest.raises(DomainError):
        SampledFunction("bad", grid[::-1], grid)


def test_tapered_gaussian_is_smooth_and_compact():
    f = tapered_gaussian(radius=4.0)
    assert f(0.0) == pytest.approx(1.0)
    assert f(3.99) == pytest.approx(0.0, abs=1e-12)
    assert f(4.5) == 0.0


@settings(max_examples=30, deadline=None)
@given(
    a=st.lists(st.floats(min_value=-1.0, max_value=1.0), min_size=2, max_size=12),
    b=st.lists(st.floats(min_value=-1.0, max_value=1.0), min_size=2, max_size=12),
)
def test_hilbert_adjoint_pairing(a, b):
    """<H^+ c, d> = <c, (H^+)^T d>, the transpose being the raising shift with equal weights."""
    p = DunklParameter(0.75)
    c = SpectralCoefficients(p, np.asarray(a))
    d = SpectralCoefficients(p, np.asarray(b))
    n = np.arange(d.a.size)
    weights = np.asarray(theta(n + 1, p)) / np.sqrt(p.eigenvalue(n + 1))
    transpose = np.zeros(d.a.size + 1)
    transpose[1:] = weights * d.a
    assert inner(hilbert_plus(c), d) == pytest.approx(
        inner(c, d.with_values(transpose)), abs=1e-12
    )
