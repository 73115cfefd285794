"""Poschl-Teller oscillator V(q) = V0 tan^2(pi q / a).

Natural units hbar = m = 1 and a = pi, so pi q / a = q, x = sin q,
c = cos q, and the action scale J_s equals Lambda (V0 = Lambda^2 / 2).

With z = exp(-2i theta) the generating function gives

    exp(i F / hbar) = (2c)**Lambda * (1 - z + sqrt((1+z)^2 - 4 x^2 z))**-Lambda

and cos(theta) = (1+z) / (2 sqrt(z)), so the class kernels expand in z
with leading exponent 1/4 + rho/2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .common import ModelDescriptor, WaveFunctionTable
from .jetseries import GradedSeries, gs_coefficient, gs_exp, gs_log, gs_powr, gs_sqrt
from .special import RealPolynomial, gegenbauer, gegenbauer_norm
from .synth import KernelBuilder

__all__ = [
    "MU",
    "PTPolynomial",
    "exact_index",
    "pt_F",
    "pt_J",
    "pt_d2F",
    "pt_AU",
    "pt_A_rho",
    "pt_kernel_series",
    "pt_pointwise",
    "pt_P_poly",
    "pt_psi_nonorth",
    "pt_exact",
    "pt_exact_energy",
    "pt_potential",
    "pt_kernel",
    "pt_family",
    "pt_overlap02_closed_form",
]

# two smooth turning points
MU = 2


@dataclass(frozen=True)
class PTPolynomial:
    rho: int
    m: int
    poly: RealPolynomial

    @property
    def n(self):
        return 2 * self.m + self.rho


def exact_index(Lambda):
    """Lambda' = sqrt(Lambda^2 + 1/4), the coupling of the exact eigenfunctions."""
    return math.sqrt(Lambda * Lambda + 0.25)


def _check_interior(q):
    c = np.cos(q)
    if np.any(c <= 0):
        raise ValueError("q must lie strictly inside (-a/2, a/2)")
    return np.sin(q), c


def _turning_ratio(q, theta):
    x = np.sin(q)
    r = x / np.cos(theta)
    if np.any(np.abs(r) >= 1):
        raise ValueError("|sin(pi q/a)| must be below |cos(theta)|")
    return x, r


def pt_F(q, theta, Js=1.0):
    """Generating function of the first kind, principal log and positive root."""
    x, c = _check_interior(q)
    z = np.exp(-2j * np.asarray(theta))
    root = np.sqrt((1 - z) ** 2 + 4 * c * c * z)
    return 1j * Js * np.log((root + (1 - z)) / (2 * c))


def pt_J(q, theta, Js=1.0):
    _, r = _turning_ratio(q, theta)
    return Js * ((1 - r * r) ** -0.5 - 1)


def pt_d2F(q, theta, Js=1.0):
    x, r = _turning_ratio(q, theta)
    c = np.cos(q)
    return -Js * c * x / np.cos(theta) ** 2 * (1 - r * r) ** -1.5


def pt_AU(q, theta, Js=1.0, hbar=1.0):
    return np.sqrt(-pt_d2F(q, theta, Js) / (2j * np.pi * hbar) + 0j)


def pt_A_rho(q, theta, rho):
    x, c = _check_interior(q)
    return np.sqrt(c) * x**rho / np.cos(theta) ** (0.5 + rho)


def pt_kernel_series(rho, q, Lambda, order):
    """Class-rho kernel A_rho exp(iF/hbar) as a series in z over a q grid."""
    x, c = _check_interior(np.asarray(q, dtype=float))
    like = x * 0.0
    z = GradedSeries.variable(order, like=like)
    radicand = (1.0 - z) * (1.0 - z) + z * (4.0 * c * c)
    bracket = (gs_sqrt(radicand) + (1.0 - z)) * (0.5 / c)
    phase = gs_exp(gs_log(bracket) * (-Lambda))
    cos_theta = ((1.0 + z) * 0.5).shift(Fraction(-1, 2))
    amplitude = gs_powr(cos_theta, -(Fraction(1, 2) + rho)) * (np.sqrt(c) * x**rho)
    return amplitude * phase


def pt_pointwise(rho, q, Lambda, z):
    """Kernel divided by z**(1/4+rho/2) at complex z (principal branches)."""
    x, c = np.sin(q), np.cos(q)
    root = np.sqrt((1 - z) ** 2 + 4 * c * c * z)
    phase = np.exp(-Lambda * np.log((root + (1 - z)) / (2 * c)))
    amplitude = np.sqrt(c) * x**rho * 2.0 ** (0.5 + rho) * (1 + z) ** (-(0.5 + rho))
    return amplitude * phase


def pt_P_poly(m, rho, Lambda):
    """P_m^(rho)(x): the literal m-th z-derivative at z = 0, as an exact polynomial.

    The factor 2**-Lambda is pulled out first so the series being raised to
    the power -Lambda starts with the scalar 1.
    """
    order = max(m, 2)
    X = RealPolynomial([0.0, 1.0])
    zero, one = RealPolynomial([0.0]), RealPolynomial([1.0])
    z = GradedSeries.make([zero, one] + [zero] * (order - 1))
    radicand = GradedSeries(Fraction(0), (one, 2.0 - X * X * 4.0, one) + (zero,) * (order - 2))
    half_bracket = (gs_sqrt(radicand) + (1.0 - z)) * 0.5
    body = gs_powr(1.0 + z, -(0.5 + rho)) * gs_powr(half_bracket, -Lambda)
    poly = zero + gs_coefficient(body, m) * (math.factorial(m) * 2.0**-Lambda)
    if rho:
        poly = poly * X
    return PTPolynomial(rho, m, poly)


def pt_psi_nonorth(n, Lambda, q_grid, route="closed", order=None):
    """Unnormalized Rodrigues wave function cos^(Lambda+1/2)(q) P_m^(rho)(sin q).

    ``route="kernel"`` synthesizes it from the kernel series instead; the
    two differ only by the constant 2**(Lambda+1/2+rho).
    """
    q = np.asarray(q_grid, dtype=float)
    if route == "kernel":
        from .synth import synthesize

        table = synthesize(pt_kernel(Lambda), n, q, order)
        table.metadata["route"] = "kernel"
        return table
    if route != "closed":
        raise ValueError(f"unknown route {route!r}")
    x, c = np.sin(q), np.cos(q)
    p = pt_P_poly(n // 2, n % 2, Lambda).poly
    values = np.clip(c, 0, None) ** (Lambda + 0.5) * p(x)
    return WaveFunctionTable(q, values, "nonorthogonal", "poschl-teller", n, Lambda, {"route": "closed"})


def pt_exact(n, Lambda, q_grid):
    """Normalized exact eigenfunction: Gegenbauer form with Lambda -> sqrt(Lambda^2+1/4)."""
    q = np.asarray(q_grid, dtype=float)
    s = exact_index(Lambda) + 0.5
    norm = 1.0 / math.sqrt(gegenbauer_norm(n, s))
    values = norm * np.clip(np.cos(q), 0, None) ** s * gegenbauer(n, s, np.sin(q))
    return WaveFunctionTable(q, values, "exact", "poschl-teller", n, Lambda,
                             {"energy": pt_exact_energy(n, Lambda)})


def pt_exact_energy(n, Lambda):
    """((n+s)^2 - Lambda^2)/2 with s(s-1) = Lambda^2."""
    s = exact_index(Lambda) + 0.5
    return 0.5 * ((n + s) ** 2 - Lambda * Lambda)


def pt_potential(Lambda):
    def V(q):
        return 0.5 * Lambda * Lambda * np.tan(q) ** 2

    return V


def pt_kernel(Lambda):
    return KernelBuilder(
        ModelDescriptor("poschl-teller", MU, Lambda),
        lambda rho, q, order: pt_kernel_series(rho, q, Lambda, order),
        lambda rho, q, z: pt_pointwise(rho, q, Lambda, z),
        # radicand zeros sit on |z| = 1, (1+z) vanishes at z = -1
        lambda q: np.ones_like(np.asarray(q, dtype=float)),
    )


def pt_family(Lambda, n_max):
    """Coefficient rows (in x) of P_{n//2}^(n%2) for n = 0..n_max."""
    return [pt_P_poly(n // 2, n % 2, Lambda).poly for n in range(n_max + 1)]


def pt_overlap02_closed_form(Lambda):
    """Normalized <psi_0, psi_2> from the weight moments M2/M0 = 1/(2L+3), M4/M2 = 3/(2L+5)."""
    L = Lambda
    return -3.0 * math.sqrt((2 * L + 5) / (2 * L + 3)) / math.sqrt(8 * L * L - 4 * L + 15)
