"""Harmonic oscillator kernels of definite parity.

In the dimensionless coordinate y the class-rho kernel, rewritten in
z = exp(-2i theta), is

    K_rho = 2**(1/2+rho) z**(1/4+rho/2) exp(-y^2/2) y**rho
            (1+z)**-(1/2+rho) exp(y^2 z / (1+z)),

and its m-th z-coefficient is proportional to the Hermite function of
order 2m+rho. Units: hbar = m = omega = 1.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .common import ModelDescriptor, WaveFunctionTable
from .jetseries import GradedSeries, gs_exp, gs_powr
from .special import RealPolynomial, hermite, hermite_weierstrass
from .synth import KernelBuilder

__all__ = [
    "MU",
    "ho_kernel_series",
    "ho_operator_kernel_series",
    "ho_pointwise",
    "ho_exact",
    "ho_potential",
    "harmonic_kernel",
]

MU = 2


def _prefactor(rho, y):
    return 2.0 ** (0.5 + rho) * np.exp(-0.5 * y * y)


def ho_kernel_series(rho, y, order):
    y = np.asarray(y, dtype=float)
    like = y * 0.0 if y.ndim else 0.0
    z = GradedSeries.variable(order, like=like)
    one_plus_z = 1.0 + z
    body = gs_powr(one_plus_z, -(0.5 + rho)) * gs_exp(z / one_plus_z * (y * y if y.ndim else float(y * y)))
    scale = _prefactor(rho, y) * y**rho
    if not y.ndim:
        scale = float(scale)
    return (body * scale).shift(Fraction(1, 4) + Fraction(rho, 2))


def ho_operator_kernel_series(rho, y, order):
    """Same kernel via exp(-1/4 d^2/dy^2) applied to the z-series of y^rho exp(z y^2)."""
    raw = GradedSeries(
        Fraction(0),
        tuple(RealPolynomial.monomial(2 * m + rho, 1.0 / math.factorial(m)) for m in range(order + 1)),
    )
    smoothed = raw.map(hermite_weierstrass)
    y = np.asarray(y, dtype=float)
    pref = _prefactor(rho, y)
    out = smoothed.map(lambda p: pref * p(y))
    return out.shift(Fraction(1, 4) + Fraction(rho, 2))


def ho_pointwise(rho, y, z):
    """Kernel divided by z**(1/4+rho/2), evaluated at complex z."""
    return _prefactor(rho, y) * y**rho * (1.0 + z) ** (-(0.5 + rho)) * np.exp(y * y * z / (1.0 + z))


def ho_exact(n, y_grid):
    y = np.asarray(y_grid, dtype=float)
    norm = math.pi**-0.25 / math.sqrt(2.0**n * math.factorial(n))
    values = norm * hermite(n, y) * np.exp(-0.5 * y * y)
    return WaveFunctionTable(y, values, "exact", "harmonic", n, None, {"energy": n + 0.5})


def ho_potential(y):
    return 0.5 * np.asarray(y) ** 2


def harmonic_kernel():
    return KernelBuilder(
        ModelDescriptor("harmonic", MU),
        ho_kernel_series,
        ho_pointwise,
        lambda y: np.ones_like(np.asarray(y, dtype=float)),
    )
