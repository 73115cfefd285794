"""Per-model wiring: kernel, exact states, potential, default domain, WKB model."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .harmonic import harmonic_kernel, ho_exact, ho_potential
from .morse import check_bound, morse_exact, morse_kernel, morse_potential
from .poschl_teller import pt_exact, pt_kernel, pt_potential
from .synth import KernelBuilder
from .wkb import WKBModel, harmonic_wkb_model, pt_wkb_model

__all__ = ["MODELS", "ModelSetup", "model_setup"]

MODELS = ("harmonic", "poschl-teller", "morse")


@dataclass(frozen=True)
class ModelSetup:
    name: str
    coupling: float | None
    kernel: KernelBuilder
    exact: Callable  # exact(n, grid) -> WaveFunctionTable
    potential: Callable
    wkb: WKBModel | None

    def domain(self, n_max):
        """Interval outside which every state up to n_max is negligible (or undefined)."""
        if self.name == "harmonic":
            return -math.sqrt(4.0 * n_max + 2.0) - 8.0, math.sqrt(4.0 * n_max + 2.0) + 8.0
        if self.name == "poschl-teller":
            return -0.5 * math.pi, 0.5 * math.pi
        L = self.coupling
        # psi ~ u^(L - n - 1/2) at large q, ~ exp(-L u) at large u
        return -math.log(4.0 + 60.0 / L), 40.0 / (L - n_max - 0.5)

    def check_n(self, n):
        if n < 0:
            raise ValueError("n must be >= 0")
        if self.name == "morse":
            check_bound(n, self.coupling)


def model_setup(name, coupling=None):
    if name == "harmonic":
        return ModelSetup(name, None, harmonic_kernel(), ho_exact, ho_potential, harmonic_wkb_model())
    if coupling is None or not coupling > 0:
        raise ValueError(f"{name} needs a positive coupling")
    if name == "poschl-teller":
        return ModelSetup(name, float(coupling), pt_kernel(coupling),
                          lambda n, grid: pt_exact(n, coupling, grid), pt_potential(coupling),
                          pt_wkb_model(coupling))
    if name == "morse":
        return ModelSetup(name, float(coupling), morse_kernel(coupling),
                          lambda n, grid: morse_exact(n, coupling, grid), morse_potential(coupling), None)
    raise ValueError(f"unknown model {name!r}; expected one of {', '.join(MODELS)}")
