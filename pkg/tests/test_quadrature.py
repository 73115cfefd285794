import math

import numpy as np
import pytest

from actionwave.quadrature import ConvergenceError, circle_samples, gauss_legendre, integrate_halfline
from actionwave.special import log_gamma


def test_one_and_two_point_rules():
    r1 = gauss_legendre(1)
    np.testing.assert_allclose(r1.nodes, [0.0], atol=1e-16)
    np.testing.assert_allclose(r1.weights, [2.0])
    r2 = gauss_legendre(2)
    np.testing.assert_allclose(np.sort(r2.nodes), [-1 / math.sqrt(3), 1 / math.sqrt(3)], rtol=1e-15)
    np.testing.assert_allclose(r2.weights, [1.0, 1.0], rtol=1e-15)


def test_eight_points_integrate_x14():
    r = gauss_legendre(8)
    assert abs(np.dot(r.weights, r.nodes**14) - 2 / 15) <= 1e-14


@pytest.mark.parametrize("n", [3, 10, 33, 100])
def test_exactness_and_structure(n):
    r = gauss_legendre(n, 0.5, 2.0)
    assert np.all(np.diff(np.sort(r.nodes)) > 0)
    assert np.all((r.nodes > 0.5) & (r.nodes < 2.0))
    assert r.weights.sum() == pytest.approx(1.5, rel=1e-14)
    rng = np.random.default_rng(n)
    c = rng.normal(size=2 * n)
    p = np.polynomial.Polynomial(c)
    exact = p.integ()(2.0) - p.integ()(0.5)
    assert np.dot(r.weights, p(r.nodes)) == pytest.approx(exact, rel=1e-13, abs=1e-13)


def test_zero_points_rejected():
    with pytest.raises(ValueError):
        gauss_legendre(0)


def test_halfline_examples():
    assert integrate_halfline(lambda u: np.exp(-u), 1.0) == pytest.approx(1.0, rel=1e-12)
    assert integrate_halfline(lambda u: u * np.exp(-2 * u), 1.0) == pytest.approx(0.25, rel=1e-10)
    ref = math.exp(log_gamma(2.5)) / 2**2.5
    assert integrate_halfline(lambda u: u**1.5 * np.exp(-2 * u), 1.0) == pytest.approx(ref, rel=1e-10)


def test_halfline_non_convergence_is_loud():
    # a slowly decaying integrand cannot meet the tolerance within the cap
    with pytest.raises(ConvergenceError):
        integrate_halfline(lambda u: 1.0 / (1.0 + u) ** 1.05, 1.0, n_max=256)


def test_circle_samples_examples():
    np.testing.assert_allclose(circle_samples(0.3, 1), [0.3])
    np.testing.assert_allclose(circle_samples(1.0, 4), [1, 1j, -1, -1j], atol=0)
    assert abs(np.mean(circle_samples(0.7, 16) ** 2)) <= 1e-16


@pytest.mark.parametrize("m", range(0, 20))
def test_circle_character_sums(m):
    r, K = 0.5, 8
    z = circle_samples(r, K)
    want = r**m if m % K == 0 else 0.0
    assert abs(np.mean(z**m) - want) <= 1e-15
