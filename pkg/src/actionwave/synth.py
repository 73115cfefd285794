"""Wave functions from kernel expansions.

A kernel K_rho(q, z) is expanded in z = exp(-2i theta) as

    K_rho = z**((mu/4 + rho)/2) * sum_m psi_{2m+rho}(q) z**m

(per-state constants set to 1). :func:`synthesize` reads psi_n off the
Taylor coefficients; :func:`contour_coefficient` recovers the same number
from a trapezoid rule on a small circle around z = 0, which only needs the
kernel as a plain function of z.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .common import ModelDescriptor, NumericalError, WaveFunctionTable
from .jetseries import gs_coefficient
from .quadrature import circle_samples

__all__ = [
    "KernelBuilder",
    "default_order",
    "synthesize",
    "synthesize_family",
    "contour_coefficient",
    "series_coefficient",
]

IMAG_TOL = 1e-10
DEFAULT_RADIUS = 0.1


@dataclass(frozen=True)
class KernelBuilder:
    """Everything :mod:`synth` needs to know about a model.

    ``series(rho, coord, order)`` returns the kernel's GradedSeries in z;
    ``pointwise(rho, coord, z)`` evaluates the kernel divided by its leading
    power of z; ``singularity(coord)`` is the distance from z = 0 to the
    nearest other singularity (None: nothing inside the unit disk).
    """

    descriptor: ModelDescriptor
    series: Callable
    pointwise: Callable
    singularity: Callable | None = None

    def __call__(self, rho, coord, order):
        return self.series(rho, coord, order)

    def safe_radius(self, coord):
        """Default contour radius: 0.1, or a quarter of the singularity distance."""
        if self.singularity is None:
            return DEFAULT_RADIUS
        return min(DEFAULT_RADIUS, 0.25 * float(np.min(self.singularity(coord))))


def default_order(n_max):
    return n_max + 4


def _checked_series(kb, rho, coord, order):
    s = kb(rho, coord, order)
    want = kb.descriptor.leading_exponent(rho)
    if s.sigma != want:
        raise NumericalError(
            f"{kb.descriptor.name} kernel (rho={rho}) has leading exponent {s.sigma}, expected {want}"
        )
    return s


def series_coefficient(kb, m, rho, coord, order=None):
    order = max(order if order is not None else default_order(2 * m + rho), m)
    return gs_coefficient(_checked_series(kb, rho, coord, order), m)


def synthesize(kb, n, coord_grid, order=None):
    """psi_n on ``coord_grid`` as m! times the m-th kernel coefficient."""
    if n < 0:
        raise ValueError("n must be >= 0")
    rho, m = n % 2, n // 2
    if rho not in kb.descriptor.rhos:
        raise ValueError(f"class rho={rho} not available for {kb.descriptor.name}")
    grid = np.asarray(coord_grid, dtype=float)
    c = np.asarray(series_coefficient(kb, m, rho, grid, order)) * math.factorial(m)
    c = np.broadcast_to(c, grid.shape)
    scale = np.max(np.abs(c)) if c.size else 0.0
    imag = np.max(np.abs(np.imag(c))) if c.size else 0.0
    if imag > IMAG_TOL * scale:
        raise NumericalError(
            f"{kb.descriptor.name} n={n}: imaginary residue {imag:.3e} exceeds {IMAG_TOL:g} of {scale:.3e}"
        )
    return WaveFunctionTable(grid, np.real(c).astype(float), "nonorthogonal",
                             kb.descriptor.name, n, kb.descriptor.coupling)


def synthesize_family(kb, n_max, coord_grid, order=None):
    """Rows psi_0 .. psi_{n_max}, one kernel expansion per class."""
    grid = np.asarray(coord_grid, dtype=float)
    order = order if order is not None else n_max + 4
    out = np.empty((n_max + 1,) + grid.shape)
    for rho in kb.descriptor.rhos:
        if rho > n_max:
            continue
        s = _checked_series(kb, rho, grid, max(order, n_max // 2))
        for n in range(rho, n_max + 1, 2):
            m = n // 2
            c = np.asarray(gs_coefficient(s, m)) * math.factorial(m)
            if np.max(np.abs(np.imag(c)), initial=0.0) > IMAG_TOL * np.max(np.abs(c), initial=0.0):
                raise NumericalError(f"{kb.descriptor.name} n={n}: imaginary residue too large")
            out[n] = np.real(c)
    return out


def contour_coefficient(kb, m, rho, coord, r=None, K=None):
    """m-th coefficient of the stripped kernel by the trapezoid rule on |z| = r.

    Equivalent to (1/2 pi i) times the contour integral of S(z) z**(-m-1).
    """
    if r is None:
        r = kb.safe_radius(coord)
    if K is None:
        K = 4 * (default_order(2 * m + rho) + 1)
    K = max(K, 4 * (m + 1))
    z = circle_samples(r, K)
    vals = kb.pointwise(rho, coord, z)
    return complex(np.mean(vals * z ** (-m)))
