"""Quantum wave functions synthesized from classical generating functions.

Kernels built from a generating function F(q, theta) are expanded in
z = exp(-2i theta); their Taylor coefficients are (non-orthogonal)
approximations to bound-state wave functions, which become exact or
near-exact after Gram-Schmidt orthonormalization.
"""
__version__ = "0.1.0"

from .common import NumericalError, WaveFunctionTable
from .jetseries import GradedSeries, RingMismatch
from .synth import contour_coefficient, synthesize, synthesize_family

__all__ = [
    "GradedSeries",
    "NumericalError",
    "RingMismatch",
    "WaveFunctionTable",
    "contour_coefficient",
    "synthesize",
    "synthesize_family",
    "__version__",
]
