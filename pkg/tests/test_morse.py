import math
from fractions import Fraction

import numpy as np
import pytest

from actionwave.metrics import rayleigh_residual
from actionwave.morse import (
    bound_state_count,
    check_bound,
    morse_action,
    morse_exact,
    morse_exact_energy,
    morse_F,
    morse_family,
    morse_kernel,
    morse_kernel_series,
    morse_lambda,
    morse_P_poly,
    morse_potential,
    morse_reformulated,
)
from actionwave.quadrature import integrate_halfline
from actionwave.synth import contour_coefficient, series_coefficient, synthesize

L = 12.0
POINTS = [(0.3, 1.2), (-0.1, 2.3), (0.5, 2.0), (0.1, 0.9), (0.05, 1.6), (-0.2, 2.6),
          (0.4, 1.5), (0.2, 1.0), (-0.05, 2.8), (0.6, 1.8)]


def test_bound_state_count():
    assert bound_state_count(12.0) == 12
    assert bound_state_count(0.4) == 0
    check_bound(11, 12.0)
    with pytest.raises(ValueError, match="exceeds bound-state count"):
        check_bound(12, 12.0)


def test_lambda_examples():
    u = np.array([0.2, 0.5, 0.9])
    np.testing.assert_allclose(morse_lambda(u, 0.0), np.sqrt(1 - u))
    assert morse_lambda(1.0, -0.4) == pytest.approx(0.4)
    assert morse_lambda(1.0, 0.4) == pytest.approx(0.0)


def test_lambda_range_scan():
    for u in np.linspace(0.2, 1.0, 9):
        for t in np.linspace(0.05, math.pi - 0.05, 15):
            lam = morse_lambda(u, math.cos(t))
            assert 0 <= lam < 1


def test_lambda_negative_radicand_flagged():
    with pytest.raises(ValueError):
        morse_lambda(1.8, 0.1)


def test_F_examples():
    assert morse_F(0.0, math.pi / 2, L) == pytest.approx(0.0, abs=1e-15)
    q = -math.log(0.5)
    assert morse_F(q, math.pi / 2, L) == pytest.approx(L * (0.5 + math.pi / 4 - math.pi / 2))


@pytest.mark.parametrize("q, t", POINTS)
def test_action_matches_finite_differences(q, t):
    h = 1e-4
    d = (morse_F(q, t - 2 * h, L) - 8 * morse_F(q, t - h, L) + 8 * morse_F(q, t + h, L)
         - morse_F(q, t + 2 * h, L)) / (12 * h)
    assert -d == pytest.approx(morse_action(q, t, L), abs=1e-6)


@pytest.mark.parametrize("q, t", POINTS)
def test_reformulation_identity(q, t):
    ref = np.exp(1j * morse_F(q, t, L))
    assert abs(morse_reformulated(q, t, L) - ref) <= 1e-10 * abs(ref)


def test_alternative_branch_breaks_identity():
    q, t = POINTS[0]
    ref = np.exp(1j * morse_F(q, t, L))
    assert abs(morse_reformulated(q, t, L, "alternative") - ref) > 0.1


def test_kernel_leading_exponents():
    assert morse_kernel_series(0, 0.7, L, 3).sigma == Fraction(1, 4)
    assert morse_kernel_series(1, 0.7, L, 3).sigma == Fraction(3, 4)


def test_coefficient_zero_shapes():
    u = np.linspace(0.3, 1.7, 8)
    c0 = np.real(np.asarray(morse_kernel_series(0, u, L, 2).coeffs[0]))
    c1 = np.real(np.asarray(morse_kernel_series(1, u, L, 2).coeffs[0]))
    r0 = c0 / (u ** (L - 0.5) * np.exp(-L * u))
    r1 = c1 / (u ** (L - 1.5) * np.exp(-L * u) * (1 - u))
    np.testing.assert_allclose(r0, r0[0], rtol=1e-12)
    np.testing.assert_allclose(r1, r1[0], rtol=1e-12)


def test_coefficient_zero_against_contour():
    kb = morse_kernel(L)
    for q in (-0.4, 0.3, 1.1):
        s = series_coefficient(kb, 0, 0, q)
        c = contour_coefficient(kb, 0, 0, q, 0.5 * kb.safe_radius(q))
        assert abs(c - s) <= 1e-10 * abs(s)


def test_u_equal_one_is_regular():
    s = morse_kernel_series(1, 1.0, L, 4)
    assert all(np.isfinite(complex(c)) for c in s.coeffs)
    assert complex(s.coeffs[0]) == 0


def test_P_poly_examples():
    p0 = morse_P_poly(0, L)
    assert p0.poly.degree == 0
    p1 = morse_P_poly(1, L).poly.coeffs
    assert p1[1] == pytest.approx(-p1[0], rel=1e-10)
    assert morse_P_poly(4, L).residual <= 1e-8


def test_family_structure():
    a, polys = morse_family(L, 4)
    assert a == pytest.approx(L - 4.5)
    assert [p.degree for p in polys] == [4, 4, 4, 4, 4]
    # member 0 is u^4 P~_0
    np.testing.assert_allclose(polys[0].coeffs[:4], 0.0)


def test_exact_ground_state_collinear_with_synthesis():
    q = np.linspace(-1.5, 6, 301)
    a = synthesize(morse_kernel(L), 0, q).values
    b = morse_exact(0, L, q).values
    assert 1 - abs(a @ b) / math.sqrt((a @ a) * (b @ b)) <= 1e-12


def test_exact_orthogonality_and_norm():
    def integrand(i, j):
        return lambda u: morse_exact(i, L, -np.log(u)).values * morse_exact(j, L, -np.log(u)).values / u

    # scale 2 maps the e^(-2 L u) decay onto a low-degree polynomial in t
    # <0|0> + <0|1> keeps the relative stopping rule away from a zero target
    cross = integrate_halfline(lambda u: integrand(0, 0)(u) + integrand(0, 1)(u), 2.0)
    assert cross == pytest.approx(1.0, abs=1e-10)
    assert integrate_halfline(integrand(2, 2), 2.0) == pytest.approx(1.0, rel=1e-10)


@pytest.mark.parametrize("n", [0, 3, 6])
def test_exact_energy_by_local_energy(n):
    q = np.linspace(-1.2, 7.0, 1001)
    E, spread = rayleigh_residual(morse_exact(n, L, q), morse_potential(L))
    assert spread <= 1e-6
    assert E == pytest.approx(morse_exact_energy(n, L), rel=1e-6)


def test_exact_rejects_unbound():
    with pytest.raises(ValueError):
        morse_exact(12, L, [0.0])
