"""Numeric kernel: complex log-gamma, Pochhammer symbols, binomials, and
truncated power-series arithmetic.

Everything here is pure and reentrant.  Complex scalars are plain Python
``complex``; exact scalars are ``fractions.Fraction``.  The truncated series
type carries either kind of coefficient, so the same code path generates
expansion coefficients exactly (for small oracle cases) or in doubles (for
parameter sweeps).
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

__all__ = [
    "GammaPoleError",
    "is_nonpositive_integer",
    "as_integer",
    "log_gamma",
    "gamma_ratio",
    "pochhammer",
    "binomial",
    "TruncatedSeries",
    "cpow",
]

_TWO_PI = 6.283185307179586476925287
_LOG_PI = 1.1447298858494001741434273
_LOG_SQRT_2PI = 0.9189385332046727417803297

# Stirling series coefficients B_{2n} / (2n (2n-1)), n = 1..10; enough for
# |z| >= 8 at double precision.
_STIRLING = (
    8.333333333333333e-02,
    -2.777777777777778e-03,
    7.936507936507937e-04,
    -5.952380952380953e-04,
    8.417508417508418e-04,
    -1.917526917526918e-03,
    6.410256410256410e-03,
    -2.955065359477124e-02,
    1.796443723688306e-01,
    -1.392432216905901e+00,
)

_INT_TOL = 1e-12


class GammaPoleError(ValueError):
    """Gamma evaluated at a nonpositive integer."""


def as_integer(w, tol: float = _INT_TOL):
    """Return the integer that ``w`` represents, or None.

    Accepts int, float, Fraction and complex; complex values must have
    (near-)zero imaginary part.  The tolerance is absolute and tight: the
    intent is to recognize parameters that are integers by construction,
    not to snap nearby values.
    """
    if isinstance(w, int):
        return w
    if isinstance(w, Fraction):
        return int(w) if w.denominator == 1 else None
    z = complex(w)
    if abs(z.imag) > tol:
        return None
    r = round(z.real)
    if abs(z.real - r) > tol:
        return None
    return int(r)


def is_nonpositive_integer(w, tol: float = _INT_TOL) -> bool:
    n = as_integer(w, tol)
    return n is not None and n <= 0


def _stirling_loggamma(z: complex) -> complex:
    # Asymptotic series; caller guarantees Re z is large enough.
    w = (z - 0.5) * cmath.log(z) - z + _LOG_SQRT_2PI
    rz2 = 1.0 / (z * z)
    t = 1.0 / z
    for c in _STIRLING:
        w += c * t
        t *= rz2
    return w


def log_gamma(z) -> complex:
    """Principal branch of ln Gamma(z) for complex z.

    Uses the Stirling series for |Re z| or |Im z| large, the recurrence
    ln Gamma(z) = ln Gamma(z+1) - log z (with branch bookkeeping) to shift
    into the asymptotic region, and the reflection formula for Re z < 0.1.
    Raises GammaPoleError at the poles z = 0, -1, -2, ...
    """
    z = complex(z)
    if is_nonpositive_integer(z):
        raise GammaPoleError(f"log_gamma pole at z={z}")
    x, y = z.real, z.imag
    if x >= 8.0 or abs(y) >= 8.0:
        return _stirling_loggamma(z)
    if x < 0.1:
        # Reflection with the correction term that keeps the principal
        # branch (the log of sin(pi z) by itself wraps as Re z decreases).
        refl = complex(
            _LOG_PI, math.copysign(_TWO_PI, y) * math.floor(0.5 * x + 0.25)
        )
        return refl - _log_sin_pi(z) - log_gamma(1.0 - z)
    # Shift z upward until the Stirling series applies, accumulating the
    # product z (z+1) ... (z+m-1) and unwinding its log by counting
    # negative-real-axis crossings of the partial product.
    yabs = abs(y)
    prod = complex(x, yabs)
    xs = x + 1.0
    crossings = 0
    neg_im = False
    while xs < 8.0:
        prod *= complex(xs, yabs)
        now_neg = prod.imag < 0.0
        if now_neg and not neg_im:
            crossings += 1
        neg_im = now_neg
        xs += 1.0
    shift = cmath.log(prod) + complex(0.0, crossings * _TWO_PI)
    if y < 0.0:
        shift = shift.conjugate()
    return _stirling_loggamma(complex(xs, y)) - shift


def _log_sin_pi(z: complex) -> complex:
    # Principal log(sin(pi z)), stable for large |Im z| where sin overflows.
    if abs(z.imag) < 20.0:
        return cmath.log(cmath.sin(cmath.pi * z))
    # sin(pi z) = (exp(i pi z) - exp(-i pi z)) / (2i); factor out the
    # dominant exponential, then wrap the argument back to (-pi, pi].
    # The neglected factor 1 - exp(-2 pi |Im z|) differs from 1 by < 1e-54.
    if z.imag > 0:
        w = cmath.log(0.5j) - 1j * cmath.pi * z
    else:
        w = cmath.log(-0.5j) + 1j * cmath.pi * z
    return complex(w.real, math.remainder(w.imag, _TWO_PI))


def gamma_ratio(numerators, denominators) -> complex:
    """exp(sum log Gamma(numerators) - sum log Gamma(denominators)).

    Raises GammaPoleError if a numerator argument sits at a pole.  A pole in
    a denominator argument makes the ratio vanish; returns 0 in that case.
    """
    total = 0.0 + 0.0j
    for w in numerators:
        total += log_gamma(w)
    for w in denominators:
        if is_nonpositive_integer(w):
            return 0.0 + 0.0j
        total -= log_gamma(w)
    return cmath.exp(total)


def pochhammer(a, n: int):
    """Rising factorial (a)_n = a (a+1) ... (a+n-1) by direct product.

    Never routed through gamma ratios, so it is exact at (and near)
    nonpositive integer a, which terminating series rely on.  Preserves
    Fraction/int inputs exactly.
    """
    if n < 0:
        raise ValueError("pochhammer order must be >= 0")
    if isinstance(a, (int, Fraction)):
        result = Fraction(1) if isinstance(a, Fraction) else 1
    elif isinstance(a, complex) or isinstance(a, float):
        result = type(a)(1)
    else:
        result = 1
    for k in range(n):
        result = result * (a + k)
    return result


def binomial(x, k: int):
    """Generalized binomial coefficient C(x, k) = (x-k+1)_k / k!."""
    if k < 0:
        raise ValueError("binomial order must be >= 0")
    num = pochhammer(x - k + 1, k)
    if isinstance(x, (int, Fraction)):
        return Fraction(num) / math.factorial(k)
    return num / math.factorial(k)


def cpow(base, exponent) -> complex:
    """Principal-branch complex power exp(exponent * Log base).

    0**w is 0 for Re w > 0 and 1 for w == 0; other zero-base cases raise.
    """
    b = complex(base)
    w = complex(exponent)
    if b == 0:
        if w == 0:
            return 1.0 + 0.0j
        if w.real > 0:
            return 0.0 + 0.0j
        raise ValueError("0 raised to a power with nonpositive real part")
    return cmath.exp(w * cmath.log(b))


def _zero_like(c):
    return Fraction(0) if isinstance(c, Fraction) else 0.0 + 0.0j


def _one_like(c):
    return Fraction(1) if isinstance(c, Fraction) else 1.0 + 0.0j


class TruncatedSeries:
    """Power series truncated at a fixed order with exact Cauchy-product
    arithmetic.

    Coefficients are either all Fractions (exact mode) or complex.  Binary
    operations propagate the minimum of the two orders.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coefficients):
        coeffs = list(coefficients)
        if not coeffs:
            raise ValueError("series needs at least the constant term")
        self.coeffs = coeffs

    @classmethod
    def identity(cls, order: int, exact: bool = False):
        one = Fraction(1) if exact else 1.0 + 0.0j
        zero = Fraction(0) if exact else 0.0 + 0.0j
        return cls([one] + [zero] * order)

    @classmethod
    def variable(cls, order: int, exact: bool = False):
        """The series t (requires order >= 1)."""
        one = Fraction(1) if exact else 1.0 + 0.0j
        zero = Fraction(0) if exact else 0.0 + 0.0j
        if order < 1:
            raise ValueError("order must be >= 1 for the variable series")
        return cls([zero, one] + [zero] * (order - 1))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int):
        return self.coeffs[k]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, TruncatedSeries) and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.coeffs!r})"

    def truncate(self, order: int) -> "TruncatedSeries":
        if order >= self.order:
            return self
        return TruncatedSeries(self.coeffs[: order + 1])

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            return other
        return TruncatedSeries([other] + [_zero_like(other)] * self.order)

    def __add__(self, other) -> "TruncatedSeries":
        o = self._coerce(other)
        k = min(self.order, o.order)
        return TruncatedSeries([self.coeffs[i] + o.coeffs[i] for i in range(k + 1)])

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-c for c in self.coeffs])

    def __sub__(self, other) -> "TruncatedSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "TruncatedSeries":
        return self._coerce(other) - self

    def scale(self, factor) -> "TruncatedSeries":
        return TruncatedSeries([factor * c for c in self.coeffs])

    def __mul__(self, other) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        k = min(self.order, other.order)
        out = []
        for n in range(k + 1):
            acc = _zero_like(self.coeffs[0]) * _zero_like(other.coeffs[0])
            for i in range(n + 1):
                acc += self.coeffs[i] * other.coeffs[n - i]
            out.append(acc)
        return TruncatedSeries(out)

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; constant term must be nonzero."""
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ValueError("series with zero constant term is not invertible")
        K = self.order
        inv0 = _one_like(c0) / c0 if isinstance(c0, Fraction) else 1.0 / c0
        out = [inv0]
        for n in range(1, K + 1):
            acc = _zero_like(c0)
            for i in range(1, n + 1):
                acc += self.coeffs[i] * out[n - i]
            out.append(-acc / c0)
        return TruncatedSeries(out)

    def __truediv__(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return self * other.inverse()
        return TruncatedSeries([c / other for c in self.coeffs])

    def exp(self) -> "TruncatedSeries":
        """exp of the series.

        Exact mode requires a zero constant term (e^c0 is irrational
        otherwise); complex mode allows any constant term.
        """
        c0 = self.coeffs[0]
        if isinstance(c0, Fraction):
            if c0 != 0:
                raise ValueError("exact exp needs zero constant term")
            lead = Fraction(1)
        else:
            lead = cmath.exp(c0)
        K = self.order
        # y' = u' y termwise: n y_n = sum_{k=1..n} k u_k y_{n-k}
        out = [lead]
        for n in range(1, K + 1):
            acc = _zero_like(c0) * lead
            for k in range(1, n + 1):
                acc += k * self.coeffs[k] * out[n - k]
            out.append(acc / n)
        return TruncatedSeries(out)

    def log(self) -> "TruncatedSeries":
        """log of the series; constant term must be nonzero (1 in exact mode)."""
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ValueError("log of series with zero constant term")
        if isinstance(c0, Fraction):
            if c0 != 1:
                raise ValueError("exact log needs constant term 1")
            lead = Fraction(0)
        else:
            lead = cmath.log(c0)
        K = self.order
        # u' = y'/y: n u_n = n y_n/y_0 - sum_{k=1..n-1} k u_k y_{n-k}/y_0
        out = [lead]
        for n in range(1, K + 1):
            acc = n * self.coeffs[n]
            for k in range(1, n):
                acc -= k * out[k] * self.coeffs[n - k]
            out.append(acc / (n * c0))
        return TruncatedSeries(out)

    def pow(self, exponent) -> "TruncatedSeries":
        """Series power.

        Integer exponents work for any series (nonzero constant term when
        negative) and stay exact in Fraction mode.  Non-integer exponents
        need a nonzero constant term and use exp(w log s), which leaves
        exact mode only through the constant term c0**w.
        """
        n = as_integer(exponent)
        if n is not None:
            if n == 0:
                return TruncatedSeries.identity(
                    self.order, exact=isinstance(self.coeffs[0], Fraction)
                )
            base = self if n > 0 else self.inverse()
            result = base
            for _ in range(abs(n) - 1):
                result = result * base
            return result
        c0 = self.coeffs[0]
        if isinstance(c0, Fraction):
            raise ValueError("exact mode supports integer powers only")
        if c0 == 0:
            raise ValueError("non-integer power of series with zero constant term")
        w = complex(exponent)
        # s^w = c0^w * exp(w log(s/c0)); log(s/c0) has zero constant term.
        normalized = self / c0
        return normalized.log().scale(w).exp().scale(cpow(c0, w))

    def evaluate(self, t):
        """Horner evaluation of the truncated polynomial at t."""
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * t + c
        return acc
