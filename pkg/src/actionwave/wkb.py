"""Bohr-Sommerfeld energies and primitive WKB wave functions.

Units hbar = m = 1. With two smooth turning points the quantization
condition reads J(E) = (n + 1/2), where

    J(E) = (1/pi) * integral_{q-}^{q+} sqrt(2 (E - V(q))) dq.

All integrals between turning points use q = mid + half * sin(phi), which
turns the square-root endpoint behaviour into a smooth integrand for
Gauss-Legendre.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .common import WaveFunctionTable
from .quadrature import ConvergenceError, gauss_legendre

__all__ = [
    "WKBModel",
    "WKBState",
    "harmonic_wkb_model",
    "pt_wkb_model",
    "pt_action_closed_form",
    "pt_wkb_energy_closed_form",
    "action_of_E",
    "period",
    "bohr_sommerfeld_energy",
    "wkb_wavefunction",
    "INTERIOR_MARGIN",
    "NORMALIZATION",
]

INTERIOR_MARGIN = 0.05
NORMALIZATION = "C = sqrt(2 m omega_cl / pi), omega_cl = 2 pi / T (cos^2 averaged to 1/2)"
_RTOL = 1e-12


@dataclass(frozen=True)
class WKBModel:
    """A single-well potential with known turning points.

    ``turning_points(E)`` returns (q-, q+); ``e_max`` bounds the bound
    range from above (inf when the well never saturates).
    """

    name: str
    coupling: float | None
    potential: Callable
    turning_points: Callable
    e_max: float = math.inf


@dataclass(frozen=True)
class WKBState:
    n: int
    energy: float
    turning_points: tuple
    C: float
    omega: float
    model: WKBModel


def harmonic_wkb_model():
    def tp(E):
        r = math.sqrt(2.0 * E)
        return -r, r

    return WKBModel("harmonic", None, lambda y: 0.5 * np.asarray(y) ** 2, tp)


def pt_wkb_model(Lambda):
    def tp(E):
        r = math.atan(math.sqrt(2.0 * E) / Lambda)
        return -r, r

    return WKBModel("poschl-teller", Lambda, lambda q: 0.5 * Lambda * Lambda * np.tan(q) ** 2, tp)


def pt_action_closed_form(E, Lambda):
    """sqrt(2) (sqrt(E + V0) - sqrt(V0)) with V0 = Lambda^2/2."""
    v0 = 0.5 * Lambda * Lambda
    return math.sqrt(2.0) * (math.sqrt(E + v0) - math.sqrt(v0))


def pt_wkb_energy_closed_form(n, Lambda):
    """Inverse of the closed-form action at J = n + 1/2."""
    return 0.5 * ((Lambda + n + 0.5) ** 2 - Lambda * Lambda)


def _check_energy(model, E):
    if not 0.0 < E < model.e_max:
        raise ValueError(f"energy {E} outside the bound range (0, {model.e_max}) of {model.name}")


def _between_turning_points(model, E, integrand):
    """Integrate integrand(q, cos(phi)) * half * cos(phi) over phi in (-pi/2, pi/2)."""
    lo, hi = model.turning_points(E)
    mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
    prev = None
    n = 32
    while n <= 2048:
        rule = gauss_legendre(n, -0.5 * math.pi, 0.5 * math.pi)
        phi = rule.nodes
        cphi = np.cos(phi)
        val = float(np.dot(rule.weights, integrand(mid + half * np.sin(phi), cphi) * half * cphi))
        if prev is not None and abs(val - prev) <= _RTOL * abs(val):
            return val
        prev = val
        n *= 2
    raise ConvergenceError(f"turning-point integral for {model.name} at E={E} did not converge")


def _momentum(model, E, q):
    return np.sqrt(np.clip(2.0 * (E - model.potential(q)), 0.0, None))


def action_of_E(model, E):
    _check_energy(model, E)
    return _between_turning_points(model, E, lambda q, c: _momentum(model, E, q)) / math.pi


def period(model, E):
    """T = 2 * integral dq / p, the classical period of the orbit at energy E."""
    _check_energy(model, E)
    lo, hi = model.turning_points(E)
    half = 0.5 * (hi - lo)

    def inv_p(q, c):
        p = _momentum(model, E, q)
        # p ~ half * cos(phi) * sqrt(|V'|/half) near the ends; use the ratio there
        safe = np.where(p > 0, p, 1.0)
        return np.where(p > 0, 1.0 / safe, 0.0)

    return 2.0 * _between_turning_points(model, E, inv_p)


def bohr_sommerfeld_energy(model, n):
    """Energy with J(E) = n + 1/2 by bisection, to 1e-12 relative."""
    if n < 0:
        raise ValueError("n must be >= 0")
    target = n + 0.5
    lo = 0.0
    hi = min(1.0, 0.5 * model.e_max)
    while action_of_E(model, hi) < target:
        lo = hi
        hi = 2.0 * hi if math.isinf(model.e_max) else 0.5 * (hi + model.e_max)
        if hi > 1e12 or (model.e_max - hi) < 1e-14 * model.e_max:
            raise ValueError(f"no Bohr-Sommerfeld root for n={n} in {model.name}")
    while hi - lo > 1e-13 * hi:
        mid = 0.5 * (lo + hi)
        if action_of_E(model, mid) < target:
            lo = mid
        else:
            hi = mid
    E = 0.5 * (lo + hi)
    omega = 2.0 * math.pi / period(model, E)
    return WKBState(n, E, model.turning_points(E), math.sqrt(2.0 * omega / math.pi), omega, model)


def wkb_wavefunction(state, q_grid):
    """C p^(-1/2) cos(integral_{q-}^q p dq' - pi/4) on interior points only."""
    model = state.model
    q = np.asarray(q_grid, dtype=float)
    lo, hi = state.turning_points
    margin = INTERIOR_MARGIN * (hi - lo)
    bad = (q < lo + margin) | (q > hi - margin)
    if np.any(bad):
        raise ValueError(
            f"{int(bad.sum())} grid points lie within {INTERIOR_MARGIN:.0%} of a turning point "
            f"(allowed interior [{lo + margin:.6g}, {hi - margin:.6g}])"
        )
    E = state.energy
    # q' = lo + (q - lo) t^2 makes the integrand smooth at the turning point
    rule = gauss_legendre(64, 0.0, 1.0)
    t = rule.nodes[:, None]
    L = (q - lo)[None, :]
    qp = lo + L * t * t
    phase = np.sum(rule.weights[:, None] * _momentum(model, E, qp) * 2.0 * L * t, axis=0)
    p = _momentum(model, E, q)
    values = state.C * p**-0.5 * np.cos(phase - 0.25 * math.pi)
    meta = {
        "energy": E,
        "turning_points": [lo, hi],
        "normalization": NORMALIZATION,
        "C": state.C,
    }
    return WaveFunctionTable(q, values, "wkb", model.name, state.n, model.coupling, meta)
