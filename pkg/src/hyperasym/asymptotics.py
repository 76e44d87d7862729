"""Large-parameter asymptotic evaluators.

Covers the fixed-z convergent expansion (large c), the Laplace-integral
expansion with generated Taylor coefficients, its uniform large-z companion
built on confluent-U scale functions, the two-endpoint leading approximation
for large upper-parameter degree, and the error-function approximation that
stays uniform through the peak-meets-endpoint coalescence at z = 1.

Asymptotic series used outside their guaranteed regions warn instead of
raising: asymptotic validity routinely exceeds convergence regions.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .core import TruncatedSeries, cpow, gamma_ratio, log_gamma, pochhammer
from .jacobi import jacobi_coefficients
from .quadrature import exp_sinh
from .reference import EvalResult, terminating_pfq

__all__ = [
    "AsymptoticWarning",
    "watson_prefactor",
    "BCaseGeometry",
    "confluent_u",
    "pfaff_fixed_z_expansion",
    "watson_coefficients",
    "watson_expansion",
    "uniform_A_expansion",
    "bcase_geometry",
    "bcase_erfc_approx",
    "bcase_exact",
    "bcase_jacobi_bridge",
    "twopoint_A_leading",
]

MAX_COEFFICIENT_ORDER = 30
UNIFORMITY_THRESHOLD = 0.1


class AsymptoticWarning(UserWarning):
    """Expansion used outside its guaranteed region or near a coalescence."""


# ---------------------------------------------------------------------------
# Confluent hypergeometric U (scale function for the uniform expansion)
# ---------------------------------------------------------------------------

def confluent_u(alpha, beta, w, tol: float = 1e-13) -> complex:
    """U(alpha, beta, w) for Re w > 0, Re alpha > 0.

    Large |w| uses the divergent inverse-power series at optimal truncation;
    otherwise the Laplace integral representation
    U = 1/Gamma(alpha) * int_0^oo e^{-wt} t^{alpha-1} (1+t)^{beta-alpha-1} dt
    under double-exponential quadrature.  Target accuracy 1e-12 relative in
    the ranges the expansions use.
    """
    alpha, beta, w = complex(alpha), complex(beta), complex(w)
    if w.real <= 0:
        raise ValueError(f"confluent-U needs Re w > 0, got {w}")
    if alpha.real <= 0:
        raise ValueError(f"integral representation needs Re alpha > 0, got {alpha}")
    if abs(w) >= 40.0:
        term = 1.0 + 0.0j
        total = term
        smallest = abs(term)
        for k in range(1, 200):
            term = term * (alpha + k - 1) * (alpha - beta + k) / (-w * k)
            if abs(term) > smallest:
                break
            total += term
            smallest = abs(term)
            if abs(term) < tol * abs(total):
                break
        return cpow(w, -alpha) * total

    s = beta - alpha - 1

    def integrand(t: float) -> complex:
        return cmath.exp(-w * t + (alpha - 1) * math.log(t) + s * math.log1p(t))

    integral = exp_sinh(integrand, tol=tol)
    return integral * cmath.exp(-log_gamma(alpha))


# ---------------------------------------------------------------------------
# Fixed-z convergent expansion (both upper and lower parameter large)
# ---------------------------------------------------------------------------

def pfaff_fixed_z_expansion(a, beta, gamma, z, lam, terms: int) -> EvalResult:
    """Approximate F(a, beta+lam; gamma+lam; z) for large lam by the
    Pfaff-transformed series

        (1-z)^(-a) * sum_k (a)_k (gamma-beta)_k / ((gamma+lam)_k k!) * w^k,

    w = z/(z-1).  Converges for |w| < 1; outside it is still asymptotic in
    lam and a warning is issued instead of an error.
    """
    if terms < 1:
        raise ValueError("need at least one term")
    a, beta, gamma, z = complex(a), complex(beta), complex(gamma), complex(z)
    if z.imag == 0.0 and z.real >= 1.0:
        raise ValueError(f"z={z} on the branch cut [1, oo)")
    w = z / (z - 1)
    if abs(w) >= 1.0:
        warnings.warn(
            f"|z/(z-1)|={abs(w):.3f} >= 1: series is asymptotic but not convergent",
            AsymptoticWarning,
            stacklevel=2,
        )
    pref = cpow(1 - z, -a)
    term = 1.0 + 0.0j
    total = 1.0 + 0.0j
    for k in range(1, terms):
        term = term * (a + k - 1) * (gamma - beta + k - 1) \
            / ((gamma + lam + k - 1) * k) * w
        total += term
    omitted = term * (a + terms - 1) * (gamma - beta + terms - 1) \
        / ((gamma + lam + terms - 1) * terms) * w
    return EvalResult(pref * total, abs(pref) * abs(omitted), terms, "pfaff-fixed-z")


# ---------------------------------------------------------------------------
# Laplace-integral expansion for large c (case A) and its uniform companion
# ---------------------------------------------------------------------------

_STIRLING_TAIL = (
    8.333333333333333e-02, -2.777777777777778e-03, 7.936507936507937e-04,
    -5.952380952380953e-04, 8.417508417508418e-04, -1.917526917526918e-03,
)


def _log1p_series(u: complex) -> complex:
    # |u| <= 0.1 here; plain log(1+u) would round 1+u and cost ~1e-16
    # absolute, which the large factor multiplying this term amplifies.
    term = u
    total = u
    for k in range(2, 40):
        term *= -u
        total += term / k
        if abs(term) < 1e-20 * abs(total):
            break
    return total


def _stirling_tail(x: complex) -> complex:
    rx2 = 1.0 / (x * x)
    t = 1.0 / x
    out = 0.0 + 0.0j
    for coeff in _STIRLING_TAIL:
        out += coeff * t
        t *= rx2
    return out


def watson_prefactor(b, c, lam) -> complex:
    """Gamma(c+lam)/Gamma(c+lam-b), the scale of the large-c expansions.

    For large c+lam the log-gamma difference is formed analytically (Stirling
    difference with a series log1p), keeping full relative precision where
    naive subtraction of two huge log-gammas loses five digits.
    """
    b, x = complex(b), complex(c) + complex(lam)
    if abs(x) < 25.0 or abs(b) > 0.1 * abs(x):
        return gamma_ratio([x], [x - b])
    ln_ratio = (
        -(x - b - 0.5) * _log1p_series(-b / x)
        + b * cmath.log(x) - b
        + _stirling_tail(x) - _stirling_tail(x - b)
    )
    return cmath.exp(ln_ratio)


def _f_series(a, b, c, z, order: int) -> TruncatedSeries:
    # Taylor series at t=0 of ((e^t-1)/t)^(b-1) e^((1-c)t) (1-z+z e^(-t))^(-a)
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    ew = TruncatedSeries([1.0 / math.factorial(k + 1) + 0.0j for k in range(order + 1)])
    factor1 = ew.log().scale(b - 1).exp()
    t = TruncatedSeries.variable(order)
    factor2 = t.scale(1 - c).exp()
    inner = TruncatedSeries(
        [1.0 + 0.0j] + [z * (-1.0) ** k / math.factorial(k) for k in range(1, order + 1)]
    )
    factor3 = inner.log().scale(-a).exp()
    return factor1 * factor2 * factor3


def watson_coefficients(a, b, c, z, order: int, warn: bool = True) -> list[complex]:
    """Coefficients f_0..f_order of the Laplace-integrand factor; f_0 = 1.

    The series converges for |t| < min(2 pi, |t0|), t0 = log(z/(z-1)); when
    |t0| < 0.1 the plain expansion is useless and a uniformity warning is
    issued (use uniform_A_expansion there).
    """
    if order > MAX_COEFFICIENT_ORDER:
        raise ValueError(f"order capped at {MAX_COEFFICIENT_ORDER}")
    z = complex(z)
    if z == 0:
        t0_abs = math.inf
    else:
        t0_abs = abs(cmath.log(z / (z - 1)))
    if warn and t0_abs < UNIFORMITY_THRESHOLD:
        warnings.warn(
            f"|t0|={t0_abs:.2e} < {UNIFORMITY_THRESHOLD}: expansion degrades for "
            "large |z|; the uniform confluent-U expansion applies there",
            AsymptoticWarning,
            stacklevel=2,
        )
    return list(_f_series(a, b, c, z, order).coeffs)


def watson_expansion(a, b, c, z, lam, order: int) -> EvalResult:
    """F(a, b; c+lam; z) ~ Gamma(c+lam)/Gamma(c+lam-b) *
    sum_{s<=order} f_s(z) (b)_s lam^(-b-s), lam -> oo.

    Error estimate is the first omitted term times the gamma-ratio prefactor.
    """
    coeffs = watson_coefficients(a, b, c, z, order + 1)
    pref = watson_prefactor(b, c, lam)
    total = 0.0 + 0.0j
    for s_idx in range(order + 1):
        total += coeffs[s_idx] * pochhammer(complex(b), s_idx) * cpow(lam, -(complex(b) + s_idx))
    omitted = coeffs[order + 1] * pochhammer(complex(b), order + 1) \
        * cpow(lam, -(complex(b) + order + 1))
    return EvalResult(pref * total, abs(pref) * abs(omitted), order + 1, "watson")


def uniform_A_expansion(a, b, c, z, lam, order: int) -> EvalResult:
    """Uniform large-lam expansion of F(a, b; c+lam; z), valid as |z| grows:

        Gamma(c+lam)/Gamma(c+lam-b) *
        sum_{s<=order} g_s(z) (b)_s zeta^(b-a+s) U(b+s, b-a+1+s, zeta*lam)

    with zeta = log((z-1)/z) (Re zeta > 0 required; this is the large
    negative-z regime where the plain expansion collapses) and
    g(t) = (t+zeta)^a f(t).  The error estimate is the first omitted term;
    no rigorous remainder is available, so treat it as a heuristic.
    """
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    zeta = cmath.log((z - 1) / z)
    if zeta.real <= 0:
        raise ValueError(f"Re zeta = {zeta.real:.3g} <= 0: outside the uniform regime")
    f_series = _f_series(a, b, c, z, order + 1)
    shift = TruncatedSeries(
        [1.0 + 0.0j, 1.0 / zeta] + [0.0 + 0.0j] * order
    ).pow(a).scale(cpow(zeta, a))
    g = shift * f_series
    pref = watson_prefactor(b, c, lam)

    def term(s_idx: int) -> complex:
        return (
            g[s_idx]
            * pochhammer(b, s_idx)
            * cpow(zeta, b - a + s_idx)
            * confluent_u(b + s_idx, b - a + 1 + s_idx, zeta * lam)
        )

    total = sum(term(s_idx) for s_idx in range(order + 1))
    omitted = term(order + 1)
    return EvalResult(pref * total, abs(pref) * abs(omitted), order + 1, "uniform-u")


# ---------------------------------------------------------------------------
# B-case: error-function approximation uniform through z = 1
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BCaseGeometry:
    z: float
    t0: float       # integrand peak (z-1)/(2z)
    alpha: float    # peak coordinate after the quadratic change of variable
    f_at_alpha: float

    def identity_residual(self) -> float:
        q = ((self.z - 1.0) / (self.z + 1.0)) ** 2
        return abs(0.5 * self.alpha ** 2 + math.log1p(-q))


def bcase_geometry(z: float) -> BCaseGeometry:
    """Peak geometry of the Laplace integral for F(-n, 1; n+2; -z), z > 0.

    alpha satisfies alpha^2/2 = -log[1 - ((z-1)/(z+1))^2] with
    sign(alpha) = sign(z-1); both vanish exactly at z = 1.
    """
    if z <= 0:
        raise ValueError("z must be positive")
    q = ((z - 1.0) / (z + 1.0) ) ** 2
    alpha_sq = -math.log1p(-q)
    alpha = math.copysign(math.sqrt(2.0 * alpha_sq), z - 1.0)
    return BCaseGeometry(
        z=z,
        t0=(z - 1.0) / (2.0 * z),
        alpha=alpha,
        f_at_alpha=(1.0 + z) / (2.0 * math.sqrt(2.0) * z),
    )


def bcase_erfc_approx(n: int, z: float) -> float:
    """Leading uniform approximation to F(-n, 1; n+2; -z):

        sqrt(pi n) (1+z)/(4z) exp(-n alpha^2 / 2) erfc(-alpha sqrt(n/2)),

    uniformly valid in a neighborhood of z = 1 (where the integrand's peak
    crosses the endpoint); equals sqrt(pi n)/2 exactly at z = 1.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    geom = bcase_geometry(z)
    return (
        math.sqrt(math.pi * n)
        * (1.0 + z) / (4.0 * z)
        * math.exp(-0.5 * n * geom.alpha ** 2)
        * math.erfc(-geom.alpha * math.sqrt(n / 2.0))
    )


def bcase_exact(n: int, z, exact: bool = False):
    """Exact terminating sum F(-n, 1; n+2; -z)."""
    if exact:
        return terminating_pfq([-n, 1], [n + 2], -Fraction(z), exact=True)
    return terminating_pfq([-n, 1], [n + 2], -z).real


def bcase_jacobi_bridge(n: int, z) -> float:
    """Relative residual of the Jacobi-polynomial form of the B-case sum:

        F(-n,1;n+2;-z) = (n+1)!/(2^{2n} (3/2)_n) (1+z)^n P_n^{(n+1,-n-1)}((1-z)/(1+z));

    exact (residual 0.0) when z is rational, float-rounded otherwise.
    """
    if n == 0:
        return 0.0
    if isinstance(z, (int, Fraction)):
        zq = Fraction(z)
        lhs = terminating_pfq([-n, 1], [n + 2], -zq, exact=True)
        x = (1 - zq) / (1 + zq)
        poly = jacobi_coefficients(n, n + 1, -n - 1)
        rhs = Fraction(math.factorial(n + 1), 4 ** n) \
            / pochhammer(Fraction(3, 2), n) * (1 + zq) ** n * poly.evaluate(x)
        if lhs == rhs:
            return 0.0
        return float(abs(lhs - rhs) / abs(lhs))
    z = float(z)
    lhs = bcase_exact(n, z)
    x = (1.0 - z) / (1.0 + z)
    poly = jacobi_coefficients(n, n + 1, -n - 1)
    rhs = math.factorial(n + 1) / 4 ** n / float(pochhammer(Fraction(3, 2), n)) \
        * (1.0 + z) ** n * float(poly.evaluate(Fraction(x).limit_denominator(10**15)))
    return abs(lhs - rhs) / abs(lhs)


# ---------------------------------------------------------------------------
# Two-endpoint leading approximation for large upper-parameter degree
# ---------------------------------------------------------------------------

def _segment_distance(p: complex) -> float:
    # distance from p to the real segment [0, 1]
    x = min(max(p.real, 0.0), 1.0)
    return abs(p - x)


def twopoint_A_leading(n, b, c, z) -> EvalResult:
    """Leading two-endpoint approximation of F(-n, b; c; z) for large n
    (n need not be an integer), via the Laplace form of the Euler integral
    with omega = (n+1) log(1-z).

    Both endpoint contributions are always retained: u=0 contributes
    f(0) Gamma(b) (-omega)^(-b), u=1 contributes
    f(1) e^omega Gamma(c-b) omega^(b-c); the dominant one is named in the
    method tag (sign of Re omega flips across |1-z| = 1).  Requires
    Re c > Re b > 0 and z != 1.  The error estimate is |value|/(n+1), a
    heuristic order-of-magnitude only.
    """
    b, c, z = complex(b), complex(c), complex(z)
    if not (c.real > b.real > 0):
        raise ValueError("requires Re c > Re b > 0")
    if z == 1:
        raise ValueError("z = 1 is the singular point of the integrand")
    big_l = cmath.log(1 - z)
    omega = (n + 1) * big_l
    # singularities of the integrand factor sit at 2k pi i / L and
    # 1 + 2m pi i / L, k, m != 0
    for p in (2j * cmath.pi / big_l, 1 + 2j * cmath.pi / big_l,
              -2j * cmath.pi / big_l, 1 - 2j * cmath.pi / big_l):
        if _segment_distance(p) < 0.2:
            warnings.warn(
                f"integrand singularity at {p:.3f} within 0.2 of [0,1]; "
                "endpoint expansion unreliable",
                AsymptoticWarning,
                stacklevel=2,
            )
            break
    f0 = cpow(z / ((z - 1) * big_l), c - b - 1)
    f1 = cpow(-z / big_l, b - 1)
    end0 = f0 * cmath.exp(log_gamma(b)) * cpow(-omega, -b)
    end1 = f1 * cmath.exp(omega + log_gamma(c - b)) * cpow(omega, b - c)
    pref = gamma_ratio([c], [b, c - b]) * cpow(1 - z, c - b - 1) * cpow(-big_l / z, c - 1)
    value = pref * (end0 + end1)
    if abs(end0) > 3.0 * abs(end1):
        dominant = "u0-dominant"
    elif abs(end1) > 3.0 * abs(end0):
        dominant = "u1-dominant"
    else:
        dominant = "balanced"
    return EvalResult(value, abs(value) / (abs(n) + 1.0), 2, f"twopoint-a-{dominant}")
