"""Inner products, modified Gram-Schmidt and overlap matrices.

Three inner-product kinds are supported:

``pt_moment``
    polynomials in x = sin q with weight (1-x^2)^Lambda on (-1, 1), i.e.
    functions cos^(Lambda+1/2)(q) p(sin q) under dq.
``morse_gamma``
    polynomials p(u) standing for u^a exp(-LambdaT u) p(u), u = exp(-q),
    under dq = du/u; every monomial pair integrates to Gamma(alpha)/(2 LambdaT)^alpha.
``quadrature``
    sampled values with explicit quadrature weights.

For the two polynomial kinds family members are coefficient vectors
(or :class:`RealPolynomial`). ``pt_moment`` uses v^T M w with the exact
Hankel moment matrix M. The Morse monomial moments are too badly
conditioned for that (v^T M v loses about eight digits by n = 6), so
``morse_gamma`` samples the polynomials at Gauss-Legendre nodes in u and
folds the weight u^(2a-1) exp(-2 LambdaT u) into the quadrature weights.

Orthonormal functions are best evaluated as ``T @ values`` where
``values`` holds the family sampled on the target grid; the coefficient
rows ``Q = T @ F`` are exact in exact arithmetic but inherit cancellation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .common import NumericalError
from .quadrature import gauss_legendre
from .special import RealPolynomial, log_gamma, weight_moment

__all__ = [
    "InnerProductSpec",
    "pt_moment_spec",
    "morse_gamma_spec",
    "quadrature_spec",
    "inner_product",
    "gram_matrix",
    "gram_schmidt",
    "overlap_matrix",
]

COND_MAX = 1e12


@dataclass(frozen=True, eq=False)
class InnerProductSpec:
    kind: str
    coupling: float | None = None
    exponent: float | None = None
    weights: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in ("pt_moment", "morse_gamma", "quadrature"):
            raise ValueError(f"unknown inner product kind {self.kind!r}")
        if self.kind == "quadrature" and self.weights is None:
            raise ValueError("quadrature inner product needs weights")

    def morse_rule(self, degree, shift=0):
        """Nodes and weights integrating u^(2b-1) e^(-2 LambdaT u) p(u) for deg p <= degree.

        b is the exponent plus ``shift`` (a power of u common to all members).
        """
        two_l = 2.0 * self.coupling
        b = self.exponent + shift
        if 2.0 * b <= 0:
            raise ValueError(f"non-integrable Morse weight, exponent {b}")
        # the weight is below e^-80 of its peak past this point
        hi = (2.0 * b + degree + 80.0) / two_l
        rule = gauss_legendre(degree + 60, 0.0, hi)
        u = rule.nodes
        logw = (2.0 * b - 1.0) * np.log(u) - two_l * u
        return u, rule.weights * np.exp(logw)

    def moments(self, size):
        """Moment matrix M[i, j] = <x^i, x^j> for the polynomial kinds."""
        if self.kind == "pt_moment":
            mom = [weight_moment(k, self.coupling) if k % 2 == 0 else 0.0 for k in range(2 * size - 1)]
        elif self.kind == "morse_gamma":
            two_l = 2.0 * self.coupling
            mom = []
            for k in range(2 * size - 1):
                alpha = 2.0 * self.exponent + k
                if alpha <= 0:
                    raise ValueError(f"non-integrable Morse moment, exponent {alpha}")
                mom.append(math.exp(log_gamma(alpha) - alpha * math.log(two_l)))
        else:
            raise ValueError("quadrature inner products have no moment matrix")
        mom = np.asarray(mom)
        i = np.arange(size)
        return mom[i[:, None] + i[None, :]]


def pt_moment_spec(Lambda):
    return InnerProductSpec("pt_moment", Lambda)


def morse_gamma_spec(LambdaT, exponent):
    """Functions u^exponent exp(-LambdaT u) p(u)."""
    return InnerProductSpec("morse_gamma", LambdaT, exponent)


def quadrature_spec(weights):
    return InnerProductSpec("quadrature", weights=np.asarray(weights, dtype=float))


def _as_rows(family, spec):
    rows = [f.coeffs if isinstance(f, RealPolynomial) else np.asarray(f, dtype=float) for f in family]
    if spec.kind == "quadrature":
        return np.array(rows, dtype=float)
    width = max(len(r) for r in rows)
    out = np.zeros((len(rows), width))
    for i, r in enumerate(rows):
        out[i, : len(r)] = np.real(r)
    return out


def _work(F, spec):
    """Rows in the representation the inner product acts on, plus metric data."""
    if spec.kind == "quadrature":
        return F, spec.weights
    if spec.kind == "morse_gamma":
        # factor out the lowest power of u present in any member
        nz = np.flatnonzero(np.any(F != 0, axis=0))
        k0 = int(nz[0]) if nz.size else 0
        G = F[:, k0:]
        u, w = spec.morse_rule(2 * G.shape[1], shift=k0)
        return G @ np.vander(u, G.shape[1], increasing=True).T, w
    return F, spec.moments(F.shape[1])


def _ip(a, b, metric):
    if metric.ndim == 1:
        return float(np.dot(metric * a, b))
    return float(a @ metric @ b)


def inner_product(f, g, spec):
    W, metric = _work(_as_rows([f, g], spec), spec)
    return _ip(W[0], W[1], metric)


def gram_matrix(family, spec):
    W, metric = _work(_as_rows(family, spec), spec)
    if metric.ndim == 1:
        return (W * metric) @ W.T
    return W @ metric @ W.T


def _sign(v, original, metric, polynomial):
    if polynomial:
        nz = np.flatnonzero(np.abs(v) > 1e-14 * np.max(np.abs(v)))
        return 1.0 if v[nz[-1]] > 0 else -1.0
    return 1.0 if _ip(v, original, metric) >= 0 else -1.0


def gram_schmidt(family, spec):
    """Modified Gram-Schmidt.

    Returns ``(Q, T)`` with rows of ``Q`` orthonormal under ``spec`` and
    ``Q = T @ F`` for the stacked family ``F``; ``T`` is lower triangular.
    Polynomial members are normalized to a positive leading coefficient,
    sampled members to a positive overlap with the input member.
    """
    F = _as_rows(family, spec)
    k = F.shape[0]
    cond = np.linalg.cond(overlap_matrix(family, spec))
    if not cond < COND_MAX:
        raise NumericalError(f"family is numerically rank deficient (Gram condition {cond:.2e})")
    W, metric = _work(F, spec)
    V = np.zeros_like(W)
    T = np.zeros((k, k))
    for i in range(k):
        v = W[i].copy()
        t = np.zeros(k)
        t[i] = 1.0
        for j in range(i):
            h = _ip(V[j], v, metric)
            v -= h * V[j]
            t -= h * T[j]
        norm = math.sqrt(_ip(v, v, metric))
        T[i] = t / norm
        V[i] = v / norm
    Q = T @ F
    for i in range(k):
        if _sign(Q[i] if spec.kind != "quadrature" else V[i], W[i], metric, spec.kind != "quadrature") < 0:
            Q[i], T[i], V[i] = -Q[i], -T[i], -V[i]
    return Q, T


def overlap_matrix(family, spec):
    """Normalized overlaps <f_i, f_j> / (|f_i| |f_j|)."""
    G = gram_matrix(family, spec)
    d = np.diag(G)
    if np.any(d <= 0):
        raise ValueError("family contains a zero-norm member")
    S = G / np.sqrt(np.outer(d, d))
    np.fill_diagonal(S, 1.0)
    return S
