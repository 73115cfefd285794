"""Special functions, classical orthogonal polynomials and weight moments.

Everything here is real-valued and cheap; these routines serve both as
building blocks (inner products, normalization constants) and as oracles
for the synthesized wave functions.
"""
from __future__ import annotations

import math
from numbers import Number

import numpy as np

__all__ = [
    "RealPolynomial",
    "log_gamma",
    "gegenbauer",
    "gegenbauer_poly",
    "gegenbauer_norm",
    "hermite",
    "hermite_poly",
    "laguerre",
    "laguerre_poly",
    "weight_moment",
    "hermite_weierstrass",
]


class RealPolynomial:
    """Dense univariate polynomial, ``coeffs[k]`` multiplies ``x**k``.

    Trailing zeros are stripped so the leading coefficient is nonzero
    unless the polynomial is identically zero. Only exact zeros are
    stripped; nothing is rounded away.

    Instances form a ring with ordinary scalars embedded, which is what
    lets a :class:`~actionwave.jetseries.GradedSeries` carry polynomial
    coefficients.
    """

    __slots__ = ("coeffs",)
    __array_ufunc__ = None

    def __init__(self, coeffs):
        c = np.atleast_1d(np.asarray(coeffs))
        if c.dtype.kind not in "fc":
            c = c.astype(float)
        nz = np.flatnonzero(c)
        self.coeffs = c[: nz[-1] + 1].copy() if nz.size else c[:1] * 0

    @classmethod
    def monomial(cls, k, scale=1.0):
        c = np.zeros(k + 1)
        c[k] = scale
        return cls(c)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if not self.is_zero() else 0

    def is_zero(self):
        return not np.any(self.coeffs)

    def __call__(self, x):
        x = np.asarray(x)
        out = np.zeros_like(x, dtype=np.result_type(x, self.coeffs)) + self.coeffs[-1]
        for c in self.coeffs[-2::-1]:
            out = out * x + c
        return out

    def deriv(self, k=1):
        c = self.coeffs
        for _ in range(k):
            if len(c) <= 1:
                return RealPolynomial([0.0])
            c = c[1:] * np.arange(1, len(c))
        return RealPolynomial(c)

    def _coerce(self, other):
        if isinstance(other, RealPolynomial):
            return other
        if isinstance(other, Number) or np.ndim(other) == 0:
            return RealPolynomial([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        dt = np.result_type(self.coeffs, other.coeffs)
        c = np.zeros(n, dtype=dt)
        c[: len(self.coeffs)] += self.coeffs
        c[: len(other.coeffs)] += other.coeffs
        return RealPolynomial(c)

    __radd__ = __add__

    def __neg__(self):
        return RealPolynomial(-self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RealPolynomial):
            return RealPolynomial(np.convolve(self.coeffs, other.coeffs))
        if isinstance(other, Number) or np.ndim(other) == 0:
            return RealPolynomial(self.coeffs * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Number) or np.ndim(other) == 0:
            return RealPolynomial(self.coeffs / other)
        return NotImplemented

    def __repr__(self):
        return f"RealPolynomial({self.coeffs.tolist()!r})"


# Lanczos approximation, g = 7, nine terms.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def _log_gamma_scalar(x):
    if not x > 0:
        raise ValueError(f"log_gamma needs x > 0, got {x!r}")
    shift = 0.0
    # The rational part is tuned for Re(x) >= 1/2; push small arguments up.
    while x < 1.5:
        shift -= math.log(x)
        x += 1.0
    x -= 1.0
    s = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        s += _LANCZOS[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (x + 0.5) * math.log(t) - t + math.log(s) + shift


def log_gamma(x):
    """ln Gamma(x) for real x > 0 (scalar or array)."""
    if np.ndim(x) == 0:
        return _log_gamma_scalar(float(x))
    return np.vectorize(_log_gamma_scalar, otypes=[float])(x)


def gegenbauer(n, alpha, x):
    """C_n^(alpha)(x) by the three-term recurrence."""
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev
    cur = 2.0 * alpha * x
    for k in range(2, n + 1):
        prev, cur = cur, (2.0 * x * (k + alpha - 1) * cur - (k + 2 * alpha - 2) * prev) / k
    return cur


def gegenbauer_poly(n, alpha):
    """Coefficient form of C_n^(alpha), same recurrence as :func:`gegenbauer`."""
    x = RealPolynomial([0.0, 1.0])
    prev = RealPolynomial([1.0])
    if n == 0:
        return prev
    cur = x * (2.0 * alpha)
    for k in range(2, n + 1):
        prev, cur = cur, (x * cur * (2.0 * (k + alpha - 1)) - prev * (k + 2 * alpha - 2)) / k
    return cur


def gegenbauer_norm(n, alpha):
    """Squared norm of C_n^(alpha) under the weight (1-x^2)^(alpha-1/2) on (-1, 1)."""
    log_val = (
        math.log(math.pi)
        + (1.0 - 2.0 * alpha) * math.log(2.0)
        + log_gamma(n + 2.0 * alpha)
        - log_gamma(n + 1.0)
        - math.log(n + alpha)
        - 2.0 * log_gamma(alpha)
    )
    return math.exp(log_val)


def hermite(n, y):
    """Physicists' Hermite polynomial H_n(y)."""
    y = np.asarray(y, dtype=float)
    prev = np.ones_like(y)
    if n == 0:
        return prev
    cur = 2.0 * y
    for k in range(1, n):
        prev, cur = cur, 2.0 * y * cur - 2.0 * k * prev
    return cur


def hermite_poly(n):
    y = RealPolynomial([0.0, 1.0])
    prev = RealPolynomial([1.0])
    if n == 0:
        return prev
    cur = y * 2.0
    for k in range(1, n):
        prev, cur = cur, y * cur * 2.0 - prev * (2.0 * k)
    return cur


def laguerre(n, alpha, x):
    """Generalized Laguerre polynomial L_n^(alpha)(x)."""
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev
    cur = 1.0 + alpha - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur


def laguerre_poly(n, alpha):
    x = RealPolynomial([0.0, 1.0])
    prev = RealPolynomial([1.0])
    if n == 0:
        return prev
    cur = RealPolynomial([1.0 + alpha, -1.0])
    for k in range(1, n):
        prev, cur = cur, ((x * -1.0 + (2 * k + 1 + alpha)) * cur - prev * (k + alpha)) / (k + 1)
    return cur


def weight_moment(k, Lambda):
    """Integral of x^k (1-x^2)^Lambda over (-1, 1) for even k.

    Equals B((k+1)/2, Lambda+1); evaluated through :func:`log_gamma` so
    large Lambda does not overflow.
    """
    if k < 0 or k % 2:
        raise ValueError(f"weight_moment needs an even k >= 0, got {k}")
    if Lambda <= -1:
        raise ValueError(f"weight (1-x^2)^Lambda is not integrable for Lambda={Lambda}")
    a = (k + 1) / 2.0
    b = Lambda + 1.0
    return math.exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b))


def hermite_weierstrass(p):
    """Apply exp(-1/4 d^2/dy^2) to a polynomial.

    The exponential series terminates: sum_j (-1/4)^j p^(2j) / j!.
    ``2**n * hermite_weierstrass(y**n)`` is H_n(y).
    """
    out = RealPolynomial([0.0])
    term = p
    j = 0
    factor = 1.0
    while not term.is_zero():
        out = out + term * factor
        j += 1
        factor *= -0.25 / j
        term = term.deriv(2)
    return out
