import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qspsim.numerics.base import ZeroPolynomialError
from qspsim.numerics.jacobi_anger import choose_truncation, evolution_phase, target_series
from qspsim.numerics.trigpoly import (
    LaurentPoly,
    TrigSeries,
    eval_series,
    fourier_target,
    laurent_roots,
    multiply,
    sup_norm_gap,
    theta_grid,
)

coefficients = st.lists(st.floats(min_value=-1, max_value=1), min_size=1, max_size=6)


def series(cos, sin) -> TrigSeries:
    return TrigSeries(np.array(cos, dtype=float), np.array(sin, dtype=float))


@pytest.mark.parametrize(
    "cos, sin, theta, expected",
    [
        ({0: 1.0}, {}, 0.7, 1.0),
        ({1: 1.0}, {}, 0.0, 1.0),
        ({}, {1: 1.0}, np.pi / 2, 1.0),
    ],
)
def test_eval_examples(cos, sin, theta, expected):
    s = TrigSeries.from_coeffs(cos=cos, sin=sin)
    assert eval_series(s, theta) == pytest.approx(expected, abs=1e-15)
    assert isinstance(eval_series(s, theta), float)


def test_eval_is_periodic():
    s = series([0.3, -0.2, 0.7], [0.5, 0.1])
    theta = np.linspace(-3, 3, 17)
    np.testing.assert_allclose(s(theta), s(theta + 2 * np.pi), atol=1e-13)


@given(coefficients)
def test_cosine_series_is_even(cos):
    s = series(cos, np.zeros(len(cos) - 1))
    theta = np.linspace(0, np.pi, 9)
    np.testing.assert_allclose(s(theta), s(-theta), atol=1e-12)
    assert s.is_cosine_type()


@given(coefficients)
def test_sine_series_is_odd(sin):
    s = series(np.zeros(len(sin) + 1), sin)
    theta = np.linspace(0, np.pi, 9)
    np.testing.assert_allclose(s(theta), -s(-theta), atol=1e-12)
    assert s.is_sine_type()


def test_multiply_examples():
    cos1 = TrigSeries.from_coeffs(cos={1: 1.0})
    sin1 = TrigSeries.from_coeffs(sin={1: 1.0})

    squared = multiply(cos1, cos1)
    assert squared.half_degree == 2
    np.testing.assert_allclose(squared.cos_coeffs, [0.5, 0.0, 0.5], atol=1e-15)
    np.testing.assert_allclose(squared.sin_coeffs, [0.0, 0.0], atol=1e-15)

    np.testing.assert_allclose(multiply(sin1, sin1).cos_coeffs, [0.5, 0.0, -0.5], atol=1e-15)

    s = series([0.2, 0.4], [-0.3])
    identity = multiply(TrigSeries.constant(1.0), s)
    np.testing.assert_allclose(identity.cos_coeffs, s.cos_coeffs, atol=1e-15)
    np.testing.assert_allclose(identity.sin_coeffs, s.sin_coeffs, atol=1e-15)


@settings(max_examples=50)
@given(coefficients, coefficients, coefficients, coefficients)
def test_multiply_is_pointwise(cos1, sin1, cos2, sin2):
    s1 = series(cos1, sin1)
    s2 = series(cos2, sin2)
    product = multiply(s1, s2)
    assert product.half_degree == s1.half_degree + s2.half_degree
    theta = theta_grid(64)
    np.testing.assert_allclose(product(theta), s1(theta) * s2(theta), atol=1e-12)


@settings(max_examples=50)
@given(coefficients, coefficients)
def test_multiply_commutes(cos, sin):
    s1 = series(cos, sin)
    s2 = series(sin, cos)
    np.testing.assert_allclose(multiply(s1, s2).cos_coeffs, multiply(s2, s1).cos_coeffs, atol=1e-14)


@settings(max_examples=50)
@given(coefficients, coefficients, coefficients)
def test_multiply_associates(c1, c2, c3):
    s1, s2, s3 = series(c1, c2), series(c2, c3), series(c3, c1)
    left = multiply(multiply(s1, s2), s3)
    right = multiply(s1, multiply(s2, s3))
    np.testing.assert_allclose(left.cos_coeffs, right.cos_coeffs, atol=1e-11)
    np.testing.assert_allclose(left.sin_coeffs, right.sin_coeffs, atol=1e-11)


def test_laurent_conversion_preserves_coefficients():
    s = series([0.1, -0.4, 0.25, 0.05], [0.3, -0.2, 0.15])
    back = s.to_laurent().to_trig()
    np.testing.assert_allclose(back.cos_coeffs, s.cos_coeffs, atol=1e-12)
    np.testing.assert_allclose(back.sin_coeffs, s.sin_coeffs, atol=1e-12)
    theta = theta_grid(32)
    np.testing.assert_allclose(s.to_laurent()(theta).real, s(theta), atol=1e-12)


def test_laurent_roots_examples():
    np.testing.assert_allclose(laurent_roots(LaurentPoly([-1.0, 1.0])), [1.0], atol=1e-12)

    roots = laurent_roots(LaurentPoly([1.0, 0.0, 1.0], low=-1))
    np.testing.assert_allclose(sorted(roots, key=lambda r: r.imag), [-1j, 1j], atol=1e-12)


def test_laurent_roots_drops_negligible_leading_coefficient():
    roots = laurent_roots(LaurentPoly([-2.0, 1.0, 1e-17]))
    np.testing.assert_allclose(roots, [2.0], atol=1e-12)


def test_laurent_roots_zero_polynomial():
    with pytest.raises(ZeroPolynomialError, match="zero polynomial"):
        laurent_roots(LaurentPoly(np.zeros(5), low=-2))


def test_laurent_roots_satisfy_polynomial(rng):
    coeffs = rng.normal(size=9) + 1j * rng.normal(size=9)
    p = LaurentPoly(coeffs, low=-4)
    roots = laurent_roots(p)
    assert roots.size == 8
    scale = np.max(np.abs(coeffs))
    assert np.max(np.abs(np.polyval(coeffs[::-1], roots))) <= 1e-8 * scale * 10


def test_self_inversive_roots_come_in_reciprocal_pairs():
    A = TrigSeries.from_coeffs(cos={0: 0.2, 1: 0.5})
    C = TrigSeries.from_coeffs(sin={1: 0.3, 3: 0.1})
    P = 1 - (A * A + C * C)
    roots = laurent_roots(P.to_laurent())
    for r in roots:
        partner = 1 / np.conj(r)
        assert np.min(np.abs(roots - partner)) <= 1e-6


def test_sup_norm_gap_examples():
    zero = TrigSeries.constant(0.0)

    def flat(theta):
        return np.zeros_like(theta)

    assert sup_norm_gap(TrigSeries.constant(1.0), zero, flat) == pytest.approx(0.0, abs=1e-15)
    assert sup_norm_gap(TrigSeries.constant(0.5), zero, flat) == pytest.approx(0.5, abs=1e-15)


def test_sup_norm_gap_of_truncated_expansion():
    plan = choose_truncation(1.0, 1e-3)
    A, C = target_series(plan)
    gap = sup_norm_gap(A, C, evolution_phase(1.0), grid_size=2048)
    assert gap <= 8.68e-5


def test_sup_norm_gap_rejects_coarse_grid():
    s = TrigSeries.from_coeffs(cos={10: 1.0})
    with pytest.raises(ValueError, match="does not resolve"):
        sup_norm_gap(s, TrigSeries.constant(0.0), np.sin, grid_size=16)


def test_fourier_target_matches_bessel_coefficients():
    plan = choose_truncation(2.0, 1e-8)
    A, C = target_series(plan)
    A_fft, C_fft = fourier_target(evolution_phase(2.0), plan.q - 1)
    np.testing.assert_allclose(A_fft.cos_coeffs, A.cos_coeffs, atol=1e-12)
    np.testing.assert_allclose(C_fft.sin_coeffs, C.sin_coeffs, atol=1e-12)
    assert A_fft.is_cosine_type() and C_fft.is_sine_type()


def test_series_arithmetic():
    s = series([1.0, 2.0], [3.0])
    t = series([0.5], [])
    np.testing.assert_allclose((s + t).cos_coeffs, [1.5, 2.0])
    np.testing.assert_allclose((s - 1).cos_coeffs, [0.0, 2.0])
    np.testing.assert_allclose((2 * s).sin_coeffs, [6.0])
    np.testing.assert_allclose((s / 2).cos_coeffs, [0.5, 1.0])
    np.testing.assert_allclose((-s).sin_coeffs, [-3.0])


def test_series_rejects_non_finite():
    with pytest.raises(ValueError, match="finite"):
        TrigSeries(np.array([np.nan]), np.array([]))
