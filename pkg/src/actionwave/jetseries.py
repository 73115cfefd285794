"""Truncated power series with an exact rational leading exponent.

A :class:`GradedSeries` represents

    z**sigma * (c_0 + c_1 z + ... + c_N z**N) + O(z**(sigma+N+1))

with ``sigma`` a :class:`fractions.Fraction` whose denominator divides 4.
Coefficients belong to one of three interchangeable rings:

* plain complex/real scalars,
* numpy arrays, combined elementwise (one series per grid point; this is
  how kernels are expanded over a whole coordinate grid at once),
* :class:`~actionwave.special.RealPolynomial` in an indeterminate x.

Scalars embed into both other rings. Mixing arrays with polynomials, or
arrays of different shapes, is a ring mismatch.

Transcendental operations (sqrt, log, exp, powers) only need to invert or
transform the constant coefficient ``c_0``. For the polynomial ring that
constant must be a degree-0 polynomial.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .special import RealPolynomial

__all__ = [
    "GradedSeries",
    "RingMismatch",
    "as_exponent",
    "gs_mul",
    "gs_inv",
    "gs_sqrt",
    "gs_log",
    "gs_exp",
    "gs_powr",
    "gs_coefficient",
]

GRAIN = 4


class RingMismatch(TypeError):
    """Series over incompatible coefficient rings were combined."""


def as_exponent(value):
    """Convert to an exact exponent with denominator dividing 4."""
    if isinstance(value, float):
        frac = Fraction(value).limit_denominator(GRAIN)
        if float(frac) != value:
            raise ValueError(f"exponent {value!r} is not a multiple of 1/{GRAIN}")
    else:
        frac = Fraction(value)
    if GRAIN % frac.denominator:
        raise ValueError(f"exponent {frac} is not a multiple of 1/{GRAIN}")
    return frac


# ---------------------------------------------------------------- ring helpers

def _ring_of(c):
    if isinstance(c, RealPolynomial):
        return "poly"
    if isinstance(c, np.ndarray) and c.ndim > 0:
        return ("grid", c.shape)
    return "scalar"


def _join_rings(r1, r2):
    if r1 == "scalar":
        return r2
    if r2 == "scalar" or r1 == r2:
        return r1
    raise RingMismatch(f"cannot combine coefficients over {r1} and {r2}")


def _is_zero(c):
    if isinstance(c, RealPolynomial):
        return c.is_zero()
    return not np.any(c)


def _py(x):
    # numpy 0-d values would try to broadcast against RealPolynomial operands
    return x.item() if isinstance(x, np.generic) or (isinstance(x, np.ndarray) and x.ndim == 0) else x


def _constant(c, what):
    """Constant coefficient as a scalar or array (never a polynomial)."""
    if isinstance(c, RealPolynomial):
        if c.degree > 0:
            raise ValueError(f"{what}: constant term {c!r} is not a scalar")
        return _py(c.coeffs[0])
    return _py(c)


def _principal_log(c):
    c = np.asarray(c)
    if c.dtype.kind != "c" and np.all(c > 0):
        out = np.log(c)
    else:
        out = np.log(c.astype(complex))
    return _py(out)


def _principal_sqrt(c):
    c = np.asarray(c)
    if c.dtype.kind != "c" and np.all(c >= 0):
        out = np.sqrt(c)
    else:
        out = np.sqrt(c.astype(complex))
    return _py(out)


# ---------------------------------------------------------------- the series

@dataclass(frozen=True, eq=False)
class GradedSeries:
    sigma: Fraction
    coeffs: tuple

    # keep numpy from broadcasting ``array * series`` elementwise
    __array_ufunc__ = None

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series needs at least one coefficient")
        object.__setattr__(self, "sigma", as_exponent(self.sigma))
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @classmethod
    def make(cls, coeffs, sigma=0):
        """Build a series in canonical form.

        Leading coefficients that are identically zero are absorbed into
        ``sigma``; each one absorbed lowers the order by one, since the
        coefficient beyond the truncation is unknown.
        """
        coeffs = list(coeffs)
        sigma = as_exponent(sigma)
        if all(_is_zero(c) for c in coeffs):
            return cls(sigma, tuple(coeffs))
        while _is_zero(coeffs[0]):
            coeffs.pop(0)
            sigma += 1
        return cls(sigma, tuple(coeffs))

    @classmethod
    def constant(cls, c, order):
        """The series c + 0 z + ... + 0 z**order."""
        zero = c * 0
        return cls.make([c] + [zero] * order)

    @classmethod
    def variable(cls, order, like=0.0):
        """The series z, over the ring of ``like``."""
        zero = like * 0
        return cls.make([zero, zero + 1.0] + [zero] * (order - 1))

    @property
    def order(self):
        return len(self.coeffs) - 1

    @property
    def ring(self):
        r = "scalar"
        for c in self.coeffs:
            r = _join_rings(r, _ring_of(c))
        return r

    def is_zero(self):
        return all(_is_zero(c) for c in self.coeffs)

    def truncate(self, order):
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        return GradedSeries(self.sigma, self.coeffs[: order + 1])

    def shift(self, exponent):
        """Multiply by z**exponent."""
        return GradedSeries(self.sigma + as_exponent(exponent), self.coeffs)

    def map(self, fn):
        """Apply a ring homomorphism (e.g. polynomial evaluation) coefficientwise."""
        return GradedSeries(self.sigma, tuple(fn(c) for c in self.coeffs))

    def evaluate(self, z):
        """Sum the truncated series at a complex point (principal z**sigma)."""
        z = complex(z)
        total = 0
        zk = 1.0
        for c in self.coeffs:
            total = total + c * zk
            zk *= z
        return total * z ** float(self.sigma) if self.sigma else total

    def __repr__(self):
        return f"GradedSeries(sigma={self.sigma}, order={self.order}, coeffs={list(self.coeffs)!r})"

    # arithmetic -------------------------------------------------------

    def _align(self, other):
        d = other.sigma - self.sigma
        if d.denominator != 1:
            raise ValueError(f"exponents {self.sigma} and {other.sigma} differ by a non-integer")
        return int(d)

    def __add__(self, other):
        if not isinstance(other, GradedSeries):
            # same absolute truncation z**(sigma+N) as self
            top = self.sigma + self.order
            other = GradedSeries.constant(other, max(0, top.numerator // top.denominator))
        _join_rings(self.ring, other.ring)
        a, b = (self, other) if self.sigma <= other.sigma else (other, self)
        d = a._align(b)
        order = min(a.order, b.order + d)
        out = list(a.coeffs[: order + 1])
        for k in range(d, order + 1):
            out[k] = out[k] + b.coeffs[k - d]
        return GradedSeries.make(out, a.sigma)

    __radd__ = __add__

    def __neg__(self):
        return GradedSeries(self.sigma, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GradedSeries):
            return gs_mul(self, other)
        _join_rings(self.ring, _ring_of(other))
        return GradedSeries.make([c * other for c in self.coeffs], self.sigma)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, GradedSeries):
            return gs_mul(self, gs_inv(other))
        return self * (1.0 / other)

    def __rtruediv__(self, other):
        return gs_inv(self) * other


def gs_mul(a, b):
    """Cauchy product, truncated to the smaller order."""
    _join_rings(a.ring, b.ring)
    order = min(a.order, b.order)
    ac, bc = a.coeffs, b.coeffs
    out = []
    for k in range(order + 1):
        s = ac[0] * bc[k]
        for j in range(1, k + 1):
            s = s + ac[j] * bc[k - j]
        out.append(s)
    return GradedSeries.make(out, a.sigma + b.sigma)


def gs_inv(a):
    """Multiplicative inverse; needs an invertible constant coefficient."""
    c0 = _constant(a.coeffs[0], "inverse")
    if not np.all(c0 != 0):
        raise ZeroDivisionError("inverse of a series with vanishing constant term")
    inv0 = _py(1.0 / c0)
    out = [inv0]
    for k in range(1, a.order + 1):
        s = a.coeffs[1] * out[k - 1]
        for j in range(2, k + 1):
            s = s + a.coeffs[j] * out[k - j]
        out.append(-(s * inv0))
    return GradedSeries.make(out, -a.sigma)


def gs_sqrt(a, branch="principal"):
    """Square root; ``branch`` picks +sqrt(c_0) ("principal") or its negative ("alternative")."""
    if branch not in ("principal", "alternative"):
        raise ValueError(f"unknown branch {branch!r}")
    half = a.sigma / 2
    if GRAIN % half.denominator:
        raise ValueError(f"sqrt of z**{a.sigma} leaves the 1/{GRAIN} exponent grid")
    c0 = _constant(a.coeffs[0], "sqrt")
    if not np.all(c0 != 0):
        raise ZeroDivisionError("sqrt of a series with vanishing constant term")
    r0 = _principal_sqrt(c0)
    if branch == "alternative":
        r0 = -r0
    inv2r0 = _py(0.5 / r0)
    out = [r0]
    for k in range(1, a.order + 1):
        s = a.coeffs[k]
        for j in range(1, k):
            s = s - out[j] * out[k - j]
        out.append(s * inv2r0)
    return GradedSeries.make(out, half)


def gs_log(a):
    """Principal logarithm; requires sigma == 0 and c_0 != 0."""
    if a.sigma != 0:
        raise ValueError(f"log of a series with leading exponent {a.sigma}")
    c0 = _constant(a.coeffs[0], "log")
    if not np.all(c0 != 0):
        raise ValueError("log of a series with vanishing constant term")
    inv0 = _py(1.0 / c0)
    out = [_principal_log(c0)]
    for k in range(1, a.order + 1):
        # k s_k = sum_{j=1..k} j L_j s_{k-j}
        s = a.coeffs[k] * k
        for j in range(1, k):
            s = s - out[j] * a.coeffs[k - j] * j
        out.append(s * (inv0 / k))
    return GradedSeries(Fraction(0), tuple(out))


def gs_exp(a):
    """Exponential; the argument must be an ordinary power series (integer sigma >= 0)."""
    if a.sigma < 0 or a.sigma.denominator != 1:
        raise ValueError(f"exp of a series with leading exponent {a.sigma}")
    # z**k (c_0 + ...) with integer k is known through z**(k+N)
    coeffs = [a.coeffs[0] * 0] * int(a.sigma) + list(a.coeffs)
    c0 = _constant(coeffs[0], "exp")
    out = [_py(np.exp(c0))]
    for k in range(1, len(coeffs)):
        s = coeffs[1] * out[k - 1]
        for j in range(2, k + 1):
            s = s + coeffs[j] * out[k - j] * j
        out.append(s * (1.0 / k))
    return GradedSeries(Fraction(0), tuple(out))


def gs_powr(a, alpha):
    """a**alpha = z**(alpha*sigma) * exp(alpha * log(a / z**sigma)).

    ``alpha`` may be any real when sigma == 0; otherwise alpha*sigma has to
    land on the exponent grid, so alpha is taken exactly (Fraction/int) or
    recovered from a float with a small denominator.
    """
    if a.sigma:
        alpha_exact = Fraction(alpha).limit_denominator(64) if isinstance(alpha, float) else Fraction(alpha)
        if isinstance(alpha, float) and float(alpha_exact) != alpha:
            raise ValueError(f"z**({a.sigma}*{alpha}) is not on the exponent grid")
        lead = as_exponent(alpha_exact * a.sigma)
    else:
        lead = Fraction(0)
    body = gs_log(a.shift(-a.sigma))
    return gs_exp(body * float(alpha)).shift(lead)


def gs_coefficient(a, k):
    """Coefficient of z**(sigma+k)."""
    if not 0 <= k <= a.order:
        raise IndexError(f"coefficient {k} outside 0..{a.order}")
    return a.coeffs[k]
