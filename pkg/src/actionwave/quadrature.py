"""Gauss-Legendre rules, a log-mapped half-line rule and circle sampling."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "QuadratureRule",
    "ConvergenceError",
    "gauss_legendre",
    "integrate_halfline",
    "circle_samples",
]


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    interval: tuple

    def mapped(self, lo, hi):
        """Affine image of the rule on (lo, hi)."""
        a, b = self.interval
        scale = (hi - lo) / (b - a)
        return QuadratureRule(lo + (self.nodes - a) * scale, self.weights * scale, (lo, hi))

    def integrate(self, f):
        return np.dot(self.weights, f(self.nodes))


@lru_cache(maxsize=64)
def _legendre_nodes(n):
    k = np.arange(1, n + 1)
    # Chebyshev-type starting guesses, descending in x
    x = np.cos(np.pi * (k - 0.25) / (n + 0.5))
    for _ in range(100):
        p0 = np.ones_like(x)
        p1 = x.copy()
        for j in range(2, n + 1):
            p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
        dp = n * (x * p1 - p0) / (x * x - 1.0)
        dx = p1 / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    else:
        raise ConvergenceError(f"Newton iteration for {n} Legendre roots did not converge")
    # one more derivative evaluation at the converged nodes
    p0 = np.ones_like(x)
    p1 = x.copy()
    for j in range(2, n + 1):
        p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
    dp = n * (x * p1 - p0) / (x * x - 1.0)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    order = np.argsort(x)
    x, w = x[order], w[order]
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre(n, lo=-1.0, hi=1.0):
    """n-point Gauss-Legendre rule, exact for polynomials of degree <= 2n-1."""
    if n < 1:
        raise ValueError("need at least one node")
    x, w = _legendre_nodes(int(n))
    rule = QuadratureRule(x, w, (-1.0, 1.0))
    if (lo, hi) != (-1.0, 1.0):
        rule = rule.mapped(lo, hi)
    return rule


def integrate_halfline(f, scale, n=32, rtol=1e-10, n_max=4096):
    """Integrate ``f`` over (0, inf) via u = -ln(t)/scale and Gauss-Legendre in t.

    ``n`` doubles until two successive estimates agree to ``rtol``.
    ``f`` must be vectorized and decay at least like exp(-scale*u).
    """
    if scale <= 0:
        raise ValueError("scale must be positive")
    prev = None
    while n <= n_max:
        rule = gauss_legendre(n, 0.0, 1.0)
        t = rule.nodes
        est = float(np.dot(rule.weights, f(-np.log(t) / scale) / (scale * t)))
        if prev is not None and abs(est - prev) <= rtol * abs(est):
            return est
        prev = est
        n *= 2
    raise ConvergenceError(f"half-line quadrature not converged at n={n_max}")


def circle_samples(r, K):
    """K counter-clockwise points r*exp(2*pi*i*j/K), j = 0..K-1."""
    if K < 1 or r <= 0:
        raise ValueError("need K >= 1 and r > 0")
    j = np.arange(K)
    z = r * np.exp(2j * np.pi * j / K)
    # pin the exact quarter points so small-K samples are exact
    quarter = (4 * j) % K == 0
    z[quarter] = r * (1j ** ((4 * j[quarter]) // K))
    return z
