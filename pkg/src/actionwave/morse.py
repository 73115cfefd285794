"""Morse oscillator V(q) = D (1 - exp(-q/d))^2.

Units hbar = m = d = 1, so LambdaT = sqrt(2D) and the harmonic frequency
at the minimum is omegaT = LambdaT. The coordinate enters through
u = exp(-q) and s = 1 - u.

Kernel construction
-------------------
With z = exp(-2i theta), cos(theta) = (1+z)/(2 sqrt z), the positive root
lambda of u(1 + lambda cos theta) = 1 - lambda^2 is

    lambda = sqrt(z) * s * g(z),    g = 4 / (sqrt(A) + u(1+z)),
    A = u^2 (1+z)^2 + 16 z s,

after rationalizing the numerator. Writing T = s R with
R = sqrt(1 - z g^2), R(0) = 1 (the continued branch of the square root),
the exponential of iF/hbar becomes

    exp(LambdaT s R) * ((1 + R) / g)**LambdaT

where the z**(LambdaT/2) from exp(-i LambdaT theta) has cancelled against
the sqrt(z) inside lambda, and the factor s has cancelled between
numerator and lambda (so u = 1 needs no 0/0 limit). The pre-exponential
factor is (A / 4z)**(-1/4) lambda**rho.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .common import ModelDescriptor, NumericalError, WaveFunctionTable
from .jetseries import GradedSeries, gs_exp, gs_powr, gs_sqrt
from .special import RealPolynomial, laguerre, log_gamma
from .synth import KernelBuilder, synthesize

__all__ = [
    "MU",
    "MorsePolynomial",
    "bound_state_count",
    "check_bound",
    "morse_lambda",
    "morse_F",
    "morse_action",
    "morse_reformulated",
    "morse_kernel_series",
    "morse_pointwise",
    "morse_singularity",
    "morse_P_poly",
    "morse_exact",
    "morse_exact_energy",
    "morse_potential",
    "morse_kernel",
    "morse_family",
]

MU = 2
FIT_NODES = (0.2, 1.8)
FIT_RTOL = 1e-8


@dataclass(frozen=True)
class MorsePolynomial:
    n: int
    poly: RealPolynomial
    residual: float


def bound_state_count(LambdaT):
    """Number of n with n < LambdaT - 1/2."""
    return max(0, math.ceil(LambdaT - 0.5))


def check_bound(n, LambdaT):
    if not n < LambdaT - 0.5:
        raise ValueError(f"n={n} exceeds bound-state count Λ̃-1/2 = {LambdaT - 0.5:g}")


def morse_lambda(u, costheta):
    """Nonnegative root of lambda^2 + u cos(theta) lambda + u - 1 = 0."""
    u = np.asarray(u, dtype=float)
    costheta = np.asarray(costheta, dtype=float)
    disc = u * u * costheta * costheta + 4.0 * (1.0 - u)
    if np.any(disc < 0):
        raise ValueError("no real root: classically forbidden (u, theta) combination")
    lam = 0.5 * (-u * costheta + np.sqrt(disc))
    if np.any(lam < 0):
        raise ValueError("quadratic has no nonnegative root")
    return lam


def morse_F(q, theta, Js=1.0):
    u = np.exp(-np.asarray(q, dtype=float))
    s = 1.0 - u
    lam = morse_lambda(u, np.cos(theta))
    if np.any(lam < np.abs(s)):
        raise ValueError("lambda < |1-u|: point outside the classically allowed region")
    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = np.where(s == 0, 0.0, s / np.where(lam == 0, 1.0, lam))
    return Js * (np.sqrt(lam * lam - s * s) + np.arccos(np.clip(ratio, -1, 1)) - theta)


def morse_action(q, theta, Js=1.0):
    """J = -dF/dtheta in closed form, Js (1 - sqrt(1 - lambda^2))."""
    u = np.exp(-np.asarray(q, dtype=float))
    lam = morse_lambda(u, np.cos(theta))
    return Js * (1.0 - np.sqrt(1.0 - lam * lam))


def morse_reformulated(q, theta, LambdaT, branch="principal"):
    """exp(-i L theta) exp(L T) ((s + T)/lambda)**L at real theta.

    T is the principal square root of s^2 - lambda^2; ``branch="alternative"``
    flips its sign (used for fault injection).
    """
    u = np.exp(-np.asarray(q, dtype=float))
    s = 1.0 - u
    lam = morse_lambda(u, np.cos(theta))
    T = np.sqrt(s * s - lam * lam + 0j)
    if branch == "alternative":
        T = -T
    return np.exp(-1j * LambdaT * theta) * np.exp(LambdaT * T) * ((s + T) / lam) ** LambdaT


def _pieces(u, order):
    like = u * 0.0 if np.ndim(u) else 0.0
    z = GradedSeries.variable(order, like=like)
    one_plus_z = 1.0 + z
    s = 1.0 - u
    A = one_plus_z * one_plus_z * (u * u) + z * (16.0 * s)
    g = 4.0 / (gs_sqrt(A) + one_plus_z * u)
    R = gs_sqrt(1.0 - z * g * g)
    return A, g, R, s


def morse_kernel_series(rho, u, LambdaT, order):
    u = np.asarray(u, dtype=float)
    if np.any(u <= 0):
        raise ValueError("u = exp(-q) must be positive")
    if not u.ndim:
        u = float(u)
    A, g, R, s = _pieces(u, order)
    phase = gs_exp(R * (LambdaT * s)) * gs_powr((1.0 + R) / g, LambdaT)
    amplitude = gs_powr(A * 0.25, -0.25).shift(Fraction(1, 4))
    if rho:
        amplitude = (amplitude * (g * s)).shift(Fraction(1, 2))
    return amplitude * phase


def morse_pointwise(rho, u, LambdaT, z):
    """Kernel divided by z**(1/4+rho/2) at complex z (principal branches)."""
    s = 1.0 - u
    A = u * u * (1 + z) ** 2 + 16.0 * z * s
    g = 4.0 / (np.sqrt(A) + u * (1 + z))
    R = np.sqrt(1.0 - z * g * g)
    out = (0.25 * A) ** -0.25 * np.exp(LambdaT * s * R) * ((1.0 + R) / g) ** LambdaT
    return out * (s * g) ** rho


def morse_singularity(u):
    """Distance from z = 0 to the nearest zero of A(z) = u^2 (1+z)^2 + 16 z (1-u)."""
    u = np.atleast_1d(np.asarray(u, dtype=float))
    s = 1.0 - u
    out = np.empty_like(u)
    for i, (ui, si) in enumerate(zip(u, s)):
        out[i] = np.min(np.abs(np.roots([ui * ui, 2 * ui * ui + 16 * si, ui * ui])))
    return out


def morse_kernel(LambdaT):
    return KernelBuilder(
        ModelDescriptor("morse", MU, LambdaT),
        lambda rho, q, order: morse_kernel_series(rho, np.exp(-np.asarray(q, dtype=float)), LambdaT, order),
        lambda rho, q, z: morse_pointwise(rho, math.exp(-q), LambdaT, z),
        lambda q: morse_singularity(np.exp(-np.asarray(q, dtype=float))),
    )


def _chebyshev_nodes(k, lo, hi):
    j = np.arange(k)
    t = np.cos(np.pi * (j + 0.5) / k)
    return np.sort(0.5 * (lo + hi) + 0.5 * (hi - lo) * t)


def morse_P_poly(n, LambdaT, order=None):
    """Recover the degree-n polynomial factor of the synthesized psi_n.

    Interpolates coefficient / (u^(LambdaT-n-1/2) e^(-LambdaT u)) at n+1
    Chebyshev nodes, then checks 8 further nodes; a residual above 1e-8
    (relative) means the branch or truncation is wrong.
    """
    check_bound(n, LambdaT)
    lo, hi = FIT_NODES
    fit_u = _chebyshev_nodes(n + 1, lo, hi)
    check_u = np.linspace(lo + 0.05, hi - 0.05, 8)
    u = np.concatenate([fit_u, check_u])
    kb = morse_kernel(LambdaT)
    psi = synthesize(kb, n, -np.log(u), order).values
    base = u ** (LambdaT - n - 0.5) * np.exp(-LambdaT * u)
    ratio = psi / base
    coeffs = np.linalg.solve(np.vander(fit_u, n + 1, increasing=True), ratio[: n + 1])
    poly = RealPolynomial(coeffs)
    pred = poly(check_u)
    residual = float(np.max(np.abs(pred - ratio[n + 1:])) / np.max(np.abs(ratio)))
    if not residual <= FIT_RTOL:
        raise NumericalError(f"Morse P~_{n} validation residual {residual:.2e} exceeds {FIT_RTOL:g}")
    return MorsePolynomial(n, poly, residual)


def _exact_log_norm(n, LambdaT):
    # int xi^(alpha-1) e^(-xi) [L_n^alpha]^2 dxi = Gamma(n+alpha+1) / (n! alpha)
    alpha = 2.0 * LambdaT - 2 * n - 1
    return 0.5 * (log_gamma(n + alpha + 1.0) - log_gamma(n + 1.0) - math.log(alpha))


def morse_exact(n, LambdaT, q_grid):
    check_bound(n, LambdaT)
    q = np.asarray(q_grid, dtype=float)
    xi = 2.0 * LambdaT * np.exp(-q)
    alpha = 2.0 * LambdaT - 2 * n - 1
    log_amp = (LambdaT - n - 0.5) * np.log(xi) - 0.5 * xi - _exact_log_norm(n, LambdaT)
    values = np.exp(log_amp) * laguerre(n, alpha, xi)
    return WaveFunctionTable(q, values, "exact", "morse", n, LambdaT,
                             {"energy": morse_exact_energy(n, LambdaT)})


def morse_exact_energy(n, LambdaT):
    """omegaT (n+1/2) [1 - (n+1/2)/(2 LambdaT)] with omegaT = LambdaT."""
    k = n + 0.5
    return LambdaT * k * (1.0 - k / (2.0 * LambdaT))


def morse_potential(LambdaT):
    def V(q):
        return 0.5 * LambdaT * LambdaT * (1.0 - np.exp(-q)) ** 2

    return V


def morse_family(LambdaT, n_max, order=None):
    """Synthesized psi~_0..psi~_{n_max} over a common prefactor.

    Returns ``(exponent, polys)``: member k is u**exponent exp(-LambdaT u)
    polys[k](u) with exponent = LambdaT - n_max - 1/2, i.e. polys[k] is
    u**(n_max-k) P~_k(u).
    """
    check_bound(n_max, LambdaT)
    shift = RealPolynomial([0.0, 1.0])
    polys = []
    for k in range(n_max + 1):
        p = morse_P_poly(k, LambdaT, order).poly
        for _ in range(n_max - k):
            p = p * shift
        polys.append(p)
    return LambdaT - n_max - 0.5, polys
