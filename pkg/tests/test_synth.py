import math

import numpy as np
import pytest

from actionwave.common import ModelDescriptor, NumericalError
from actionwave.harmonic import harmonic_kernel, ho_exact
from actionwave.jetseries import GradedSeries
from actionwave.poschl_teller import pt_kernel, pt_psi_nonorth
from actionwave.synth import (
    KernelBuilder,
    contour_coefficient,
    default_order,
    series_coefficient,
    synthesize,
    synthesize_family,
)


def collinearity_gap(a, b):
    return 1 - abs(a @ b) / math.sqrt((a @ a) * (b @ b))


def monomial_kernel(sigma_shift=0):
    """K = z^(1/4 + rho/2 + shift): every state is the constant 1 (or 0)."""
    d = ModelDescriptor("toy", 2, None)

    def series(rho, coord, order):
        like = np.asarray(coord, dtype=float) * 0.0
        s = GradedSeries.constant(1.0 + 0j + like, order)
        return s.shift(d.leading_exponent(rho) + sigma_shift)

    return KernelBuilder(d, series, lambda rho, coord, z: np.ones_like(z))


def test_default_order():
    assert default_order(6) == 10


def test_monomial_kernel_gives_one():
    y = np.linspace(-1, 1, 5)
    np.testing.assert_allclose(synthesize(monomial_kernel(), 0, y).values, 1.0)
    np.testing.assert_allclose(synthesize(monomial_kernel(), 2, y).values, 0.0)


def test_wrong_leading_exponent_is_rejected():
    with pytest.raises(NumericalError, match="leading exponent"):
        synthesize(monomial_kernel(sigma_shift=1), 0, [0.0])


def test_imaginary_residue_is_rejected():
    d = ModelDescriptor("toy", 2, None)

    def series(rho, coord, order):
        like = np.asarray(coord, dtype=float) * 0.0
        return GradedSeries.constant(1.0 + 1e-3j + like, order).shift(d.leading_exponent(rho))

    with pytest.raises(NumericalError, match="imaginary residue"):
        synthesize(KernelBuilder(d, series, None), 0, [0.1, 0.2])


def test_negative_n_rejected():
    with pytest.raises(ValueError):
        synthesize(harmonic_kernel(), -1, [0.0])


@pytest.mark.parametrize("n", [0, 2])
def test_harmonic_shapes(n):
    y = np.linspace(-5, 5, 201)
    assert collinearity_gap(synthesize(harmonic_kernel(), n, y).values, ho_exact(n, y).values) <= 1e-12


def test_pt_dual_route_n2():
    q = np.linspace(-1.3, 1.3, 51)
    a = synthesize(pt_kernel(10.0), 2, q).values
    b = pt_psi_nonorth(2, 10.0, q).values
    # the routes carry different per-state constants
    ratio = a / b
    np.testing.assert_allclose(ratio, ratio[25], rtol=1e-10)


def test_family_matches_single_synthesis():
    q = np.linspace(-1.2, 1.2, 17)
    kb = pt_kernel(5.0)
    fam = synthesize_family(kb, 6, q)
    for n in range(7):
        np.testing.assert_allclose(fam[n], synthesize(kb, n, q).values, rtol=1e-12, atol=1e-15)


@pytest.mark.parametrize("m", range(5))
def test_contour_matches_series_harmonic(m):
    kb = harmonic_kernel()
    s = complex(series_coefficient(kb, m, 0, 0.7))
    c = contour_coefficient(kb, m, 0, 0.7)
    assert abs(c - s) <= 1e-10 * max(abs(s), 1e-300)


def test_contour_radius_independence():
    kb = pt_kernel(10.0)
    a = contour_coefficient(kb, 3, 1, 0.4, r=0.05)
    b = contour_coefficient(kb, 3, 1, 0.4, r=0.1)
    assert abs(a - b) <= 1e-10 * abs(b)


def test_safe_radius_rule():
    assert harmonic_kernel().safe_radius(0.0) == pytest.approx(0.1)
    kb = KernelBuilder(ModelDescriptor("toy", 2), None, None, lambda c: np.full_like(np.asarray(c, float), 0.2))
    assert kb.safe_radius(0.0) == pytest.approx(0.05)
