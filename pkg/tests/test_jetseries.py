from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from actionwave.jetseries import (
    GradedSeries,
    RingMismatch,
    gs_coefficient,
    gs_exp,
    gs_inv,
    gs_log,
    gs_mul,
    gs_powr,
    gs_sqrt,
)
from actionwave.special import RealPolynomial

ORDER = 8


def series(coeffs, sigma=0):
    return GradedSeries.make(list(coeffs), sigma)


def assert_coeffs(s, expected, rtol=1e-12, atol=1e-14):
    got = np.array([complex(c) for c in s.coeffs[: len(expected)]])
    np.testing.assert_allclose(got, np.array(expected, dtype=complex), rtol=rtol, atol=atol)


def one_plus_z(order=ORDER):
    return series([1.0, 1.0] + [0.0] * (order - 1))


# ---------------------------------------------------------------- structure


def test_sigma_is_exact_quarter_rational():
    s = series([1.0, 2.0], Fraction(3, 4))
    assert s.sigma == Fraction(3, 4)
    with pytest.raises(ValueError):
        series([1.0], Fraction(1, 3))


def test_canonical_form_absorbs_zero_leading_coefficients():
    s = series([0.0, 3.0, 1.0], Fraction(1, 4))
    assert s.sigma == Fraction(5, 4)
    assert s.order == 1
    assert gs_coefficient(s, 0) == 3.0


def test_zero_series_is_left_alone():
    s = series([0.0, 0.0, 0.0])
    assert s.is_zero() and s.order == 2 and s.sigma == 0


def test_coefficient_out_of_range():
    with pytest.raises(IndexError):
        gs_coefficient(one_plus_z(3), 4)
    with pytest.raises(IndexError):
        gs_coefficient(one_plus_z(3), -1)


def test_ring_mismatch_is_rejected():
    poly = series([RealPolynomial([1.0]), RealPolynomial([0.0, 1.0])])
    grid = series([np.ones(3), np.zeros(3)])
    with pytest.raises(RingMismatch):
        gs_mul(poly, grid)


# ---------------------------------------------------------------- examples


def test_mul_exponents_add_and_cancel():
    a = series([1.0, 1.0, 0.0], Fraction(1, 2))
    b = series([1.0, -1.0, 0.0], Fraction(-1, 2))
    p = gs_mul(a, b)
    assert p.sigma == 0
    assert_coeffs(p, [1, 0, -1])


def test_mul_by_unit_is_identity():
    a = series([0.3, -1.0, 2.0, 0.5])
    assert_coeffs(gs_mul(a, GradedSeries.constant(1.0, 3)), [0.3, -1.0, 2.0, 0.5])


def test_mul_matches_pointwise_product():
    rng = np.random.default_rng(7)
    a = series(rng.normal(size=ORDER + 1) + 1j * rng.normal(size=ORDER + 1))
    b = series(rng.normal(size=ORDER + 1))
    z = 0.05 + 0.03j
    err = abs(gs_mul(a, b).evaluate(z) - a.evaluate(z) * b.evaluate(z))
    assert err <= 10 * abs(z) ** (ORDER + 1)


def test_sqrt_binomial_series():
    assert_coeffs(gs_sqrt(one_plus_z()), [1, 0.5, -1 / 8, 1 / 16])


def test_sqrt_halves_exponent():
    s = gs_sqrt(one_plus_z().shift(1))
    assert s.sigma == Fraction(1, 2)
    assert_coeffs(s, [1, 0.5, -1 / 8, 1 / 16])


def test_sqrt_alternative_branch_flips_sign():
    assert_coeffs(gs_sqrt(one_plus_z(), "alternative"), [-1, -0.5, 1 / 8, -1 / 16])


def test_sqrt_of_zero_constant_fails():
    with pytest.raises((ValueError, ZeroDivisionError)):
        gs_sqrt(GradedSeries(Fraction(0), (0.0, 1.0)))


def test_log_mercator():
    assert_coeffs(gs_log(one_plus_z()), [0, 1, -1 / 2, 1 / 3, -1 / 4])


def test_log_needs_zero_exponent():
    with pytest.raises(ValueError):
        gs_log(one_plus_z().shift(Fraction(1, 2)))


def test_exp_of_zero_is_one():
    assert_coeffs(gs_exp(GradedSeries(Fraction(0), (0.0,) * 5)), [1, 0, 0, 0, 0])


def test_exp_coefficients_are_factorials():
    z = GradedSeries.variable(5)
    assert gs_coefficient(gs_exp(z), 3) == pytest.approx(1 / 6, rel=1e-15)


def test_powr_binomial():
    assert_coeffs(gs_powr(one_plus_z(), -0.5), [1, -0.5, 3 / 8, -5 / 16])


def test_powr_scales_exponent():
    s = gs_powr(one_plus_z().shift(Fraction(1, 2)), Fraction(-1, 2))
    assert s.sigma == Fraction(-1, 4)


def test_coefficient_examples():
    sq = gs_mul(one_plus_z(3), one_plus_z(3))
    assert gs_coefficient(sq, 1) == 2.0
    s = series([3.0, 1.0], Fraction(1, 4))
    assert gs_coefficient(s, 0) == 3.0


def test_inverse_of_one_minus_z_is_geometric():
    s = gs_inv(series([1.0, -1.0, 0.0, 0.0, 0.0]))
    assert_coeffs(s, [1, 1, 1, 1, 1])


def test_polynomial_ring_sqrt_with_unit_constant():
    X = RealPolynomial([0.0, 1.0])
    one = RealPolynomial([1.0])
    rad = GradedSeries(Fraction(0), (one, X * X * 2.0, RealPolynomial([0.0])))
    r = gs_sqrt(rad)
    # sqrt(1 + 2 x^2 z) = 1 + x^2 z - x^4 z^2 / 2
    np.testing.assert_allclose(r.coeffs[1].coeffs, [0, 0, 1])
    np.testing.assert_allclose(r.coeffs[2].coeffs, [0, 0, 0, 0, -0.5])


def test_grid_ring_is_elementwise():
    y = np.array([0.0, 0.5, 1.0])
    z = GradedSeries.variable(4, like=y * 0.0)
    e = gs_exp(z * y)
    np.testing.assert_allclose(gs_coefficient(e, 2), y * y / 2)


# ---------------------------------------------------------------- properties

coef = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)
lead = st.tuples(st.floats(min_value=0.5, max_value=2.0), st.sampled_from([1.0, -1.0]))


@st.composite
def random_series(draw, order=6):
    mag, sign = draw(lead)
    rest = draw(st.lists(coef, min_size=order, max_size=order))
    return series([mag * sign] + rest)


def close(a, b, rtol=1e-12, atol=1e-12):
    x = np.array([complex(c) for c in a.coeffs])
    y = np.array([complex(c) for c in b.coeffs])
    return np.allclose(x, y, rtol=rtol, atol=atol)


@settings(max_examples=60, deadline=None)
@given(random_series())
def test_exp_log_roundtrip(s):
    assert close(gs_exp(gs_log(s)), s)


@settings(max_examples=60, deadline=None)
@given(random_series(), st.sampled_from(["principal", "alternative"]))
def test_sqrt_squares_back(s, branch):
    r = gs_sqrt(s, branch)
    assert close(gs_mul(r, r), s)


@settings(max_examples=60, deadline=None)
@given(random_series(), random_series(), random_series())
def test_mul_commutative_associative(a, b, c):
    assert close(gs_mul(a, b), gs_mul(b, a))
    assert close(gs_mul(gs_mul(a, b), c), gs_mul(a, gs_mul(b, c)))


@settings(max_examples=40, deadline=None)
@given(random_series(), st.floats(min_value=0.01, max_value=0.1), st.floats(min_value=0, max_value=6.28))
def test_pointwise_consistency(s, r, phase):
    # a truncated series built by the engine matches the function it represents
    z0 = r * np.exp(1j * phase)
    f = gs_exp(s)
    exact = np.exp(s.evaluate(z0))
    # Cauchy bound on |z| = 1: every coefficient of exp(s) is at most e^8
    assert abs(f.evaluate(z0) - exact) <= 2 * np.exp(8) * r ** (f.order + 1)
