"""Shared records: model descriptors, sampled wave functions, errors."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

KINDS = ("nonorthogonal", "orthonormalized", "exact", "wkb")

# natural units for every model; a = pi for Poschl-Teller, d = 1 for Morse
UNITS = {
    "hbar": 1.0,
    "mass": 1.0,
    "harmonic": "coordinate y = sqrt(m*omega/hbar) q, omega = 1",
    "poschl-teller": "a = pi so pi*q/a = q; Lambda = J_s/hbar, V0 = Lambda^2/2",
    "morse": "d = 1; LambdaT = sqrt(2 m D) d / hbar, D = LambdaT^2/2, omegaT = LambdaT",
}


class NumericalError(RuntimeError):
    """A numerical invariant failed (branch choice, truncation, conditioning)."""


@dataclass(frozen=True)
class ModelDescriptor:
    name: str
    mu: int
    coupling: float | None = None
    rhos: tuple = (0, 1)

    def leading_exponent(self, rho):
        """(mu/4 + rho)/2, the z-exponent fixed by the class expansion."""
        return (Fraction(self.mu, 4) + rho) / 2


@dataclass
class WaveFunctionTable:
    grid: np.ndarray
    values: np.ndarray
    kind: str
    model: str
    n: int
    coupling: float | None = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown table kind {self.kind!r}")
        self.grid = np.asarray(self.grid, dtype=float)
        self.values = np.asarray(self.values)
        if self.grid.shape != self.values.shape:
            raise ValueError("grid and values differ in shape")

    def scaled(self, factor, kind=None):
        return WaveFunctionTable(self.grid, self.values * factor, kind or self.kind,
                                 self.model, self.n, self.coupling, dict(self.metadata))
