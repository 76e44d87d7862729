"""Non-classical Jacobi and Gegenbauer polynomial laboratory.

Coefficients are constructed exactly (Fractions) from terminating
hypergeometric representations; several representations are implemented and
cross-checked, since for non-classical parameters the textbook form can have
an inadmissible lower parameter.  Root-finding runs at 40 significant digits
(the monomial coefficients are astronomically ill-conditioned in doubles at
degree ~30), then reports double-precision roots with relative residuals and
distances to the zero limit curves.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp

from .core import binomial, pochhammer

__all__ = [
    "PolySpec",
    "ZeroSet",
    "FIGURE_CONFIGS",
    "jacobi_coefficients",
    "gegenbauer_special_coeffs",
    "find_roots",
    "curve_distance",
    "curve_points",
    "figure_dataset",
]

_DPS = 40
_CURVE_SAMPLES = 4096


@dataclass
class PolySpec:
    degree: int
    coefficients: list[Fraction]  # ascending monomial order, length degree+1
    family: str  # "jacobi" or "gegenbauer-special"
    parameters: tuple[Fraction, Fraction] | None

    def evaluate(self, x):
        """Horner evaluation; exact for Fraction x, numeric otherwise."""
        acc = self.coefficients[-1] * (x ** 0)
        for c in reversed(self.coefficients[:-1]):
            acc = acc * x + c
        return acc


@dataclass
class ZeroSet:
    roots: list[complex]
    residuals: list[float]
    curve: str = "none"
    curve_distances: list[float] | None = None
    converged: bool = True


FIGURE_CONFIGS = {
    "1": {"n": 30, "alpha": Fraction(1, 2), "beta": Fraction(-89), "curve": "none"},
    "2": {"n": 25, "alpha": Fraction(-49, 2), "beta": Fraction(-49), "curve": "fig2-curve"},
    "4": {"n": 30, "alpha": Fraction(31), "beta": Fraction(-31), "curve": "fig4-curve"},
}


def _poly_add_scaled(target: list[Fraction], poly: list[Fraction], scale: Fraction):
    for i, c in enumerate(poly):
        target[i] += scale * c


def _binomial_power(n: int, x_coeff: Fraction, const: Fraction) -> list[list[Fraction]]:
    """Powers (const + x_coeff*x)^k for k = 0..n as coefficient lists."""
    powers = [[Fraction(1)]]
    for k in range(1, n + 1):
        prev = powers[-1]
        cur = [Fraction(0)] * (k + 1)
        for i, c in enumerate(prev):
            cur[i] += c * const
            cur[i + 1] += c * x_coeff
        powers.append(cur)
    return powers


def _terminating_2f1_poly(n: int, u2, lower, arg_powers) -> list[Fraction]:
    """Sum_k (-n)_k (u2)_k / ((lower)_k k!) * arg^k as a polynomial, where
    arg_powers[k] is the coefficient list of arg^k."""
    out = [Fraction(0)] * len(arg_powers[n])
    factor = Fraction(1)
    for k in range(n + 1):
        if k > 0:
            den = (lower + (k - 1)) * k
            if den == 0:
                raise ValueError(f"lower parameter {lower} hits zero at k={k}")
            factor = factor * (-(n - (k - 1))) * (u2 + (k - 1)) / den
        pk = arg_powers[k]
        for i, c in enumerate(pk):
            out[i] += factor * c
    return out


def jacobi_coefficients(n: int, alpha, beta) -> PolySpec:
    """Exact monomial coefficients of the Jacobi polynomial of degree n.

    Dispatches over the hypergeometric representations: the standard
    (1-x)/2-argument form when alpha+1 is admissible, otherwise forms in
    2/(1-x), 2/(1+x) or the swapped-endpoint form.  All admissible forms
    agree exactly; raises when none is admissible or when the nominal leading
    coefficient vanishes (degree degeneration).
    """
    alpha = Fraction(alpha)
    beta = Fraction(beta)
    if n < 0:
        raise ValueError("degree must be >= 0")
    for builder in (_rep_standard, _rep_inverse_first, _rep_inverse_second,
                    _rep_swapped_first, _rep_swapped_second):
        coeffs = builder(n, alpha, beta)
        if coeffs is not None:
            if n > 0 and coeffs[-1] == 0:
                raise ValueError(
                    f"degenerate parameters: leading coefficient vanishes for "
                    f"n={n}, alpha={alpha}, beta={beta}"
                )
            return PolySpec(n, coeffs, "jacobi", (alpha, beta))
    raise ValueError(f"no admissible representation for n={n}, alpha={alpha}, beta={beta}")


def _pochhammer_nonzero(x: Fraction, count: int) -> bool:
    # (x)_k != 0 for all k <= count  <=>  x not in {0, -1, ..., -(count-1)}
    if x.denominator != 1:
        return True
    return not (-(count - 1) <= x.numerator <= 0) if count > 0 else True


def _rep_standard(n, alpha, beta):
    # binom(n+alpha, n) F(-n, alpha+beta+n+1; alpha+1; (1-x)/2)
    if not _pochhammer_nonzero(alpha + 1, n + 1):
        return None
    half = Fraction(1, 2)
    arg_powers = _binomial_power(n, -half, half)  # ((1-x)/2)^k
    poly = _terminating_2f1_poly(n, alpha + beta + n + 1, alpha + 1, arg_powers)
    lead = binomial(alpha + n, n)
    return [lead * c for c in poly]


def _rep_inverse_first(n, alpha, beta):
    # binom(alpha+beta+2n, n) ((x-1)/2)^n F(-n, -alpha-n; -2n-alpha-beta; 2/(1-x))
    lower = -2 * n - alpha - beta
    if not _pochhammer_nonzero(lower, n + 1):
        return None
    # ((x-1)/2)^n (2/(1-x))^k = (-1)^k 2^(k-n) (x-1)^(n-k)
    xm1 = _binomial_power(n, Fraction(1), Fraction(-1))  # (x-1)^j
    out = [Fraction(0)] * (n + 1)
    factor = Fraction(1)
    for k in range(n + 1):
        if k > 0:
            factor = factor * (-(n - (k - 1))) * ((-alpha - n) + (k - 1)) \
                / ((lower + (k - 1)) * k)
        scale = factor * (-1) ** k * Fraction(2) ** (k - n)
        _poly_add_scaled(out, xm1[n - k] + [Fraction(0)] * k, scale)
    lead = binomial(alpha + beta + 2 * n, n)
    return [lead * c for c in out]


def _rep_inverse_second(n, alpha, beta):
    # binom(alpha+beta+2n, n) ((x+1)/2)^n F(-n, -beta-n; -2n-alpha-beta; 2/(1+x))
    lower = -2 * n - alpha - beta
    if not _pochhammer_nonzero(lower, n + 1):
        return None
    xp1 = _binomial_power(n, Fraction(1), Fraction(1))  # (x+1)^j
    out = [Fraction(0)] * (n + 1)
    factor = Fraction(1)
    for k in range(n + 1):
        if k > 0:
            factor = factor * (-(n - (k - 1))) * ((-beta - n) + (k - 1)) \
                / ((lower + (k - 1)) * k)
        scale = factor * Fraction(2) ** (k - n)
        _poly_add_scaled(out, xp1[n - k] + [Fraction(0)] * k, scale)
    lead = binomial(alpha + beta + 2 * n, n)
    return [lead * c for c in out]


def _rep_swapped_first(n, alpha, beta):
    # binom(n+alpha, n) ((1+x)/2)^(-beta) F(alpha+n+1, -beta-n; alpha+1; (1-x)/2)
    # polynomial route: needs integer beta in [-n, 0] so both the series
    # terminates (at beta+n) and the power prefactor is a polynomial
    if beta.denominator != 1 or not (-n <= beta.numerator <= 0):
        return None
    m = int(beta) + n  # termination index
    if not _pochhammer_nonzero(alpha + 1, m + 1):
        return None
    half = Fraction(1, 2)
    arg_powers = _binomial_power(m, -half, half) if m > 0 else [[Fraction(1)]]
    series = [Fraction(0)] * (m + 1)
    factor = Fraction(1)
    for k in range(m + 1):
        if k > 0:
            factor = factor * (alpha + n + 1 + (k - 1)) * ((-beta - n) + (k - 1)) \
                / ((alpha + 1 + (k - 1)) * k)
        _poly_add_scaled(series, arg_powers[k] + [Fraction(0)] * (m - k), factor)
    # multiply by ((1+x)/2)^(-beta)
    power = _binomial_power(-int(beta), half, half)[-int(beta)] if beta != 0 else [Fraction(1)]
    out = [Fraction(0)] * (n + 1)
    for i, ci in enumerate(series):
        for j, cj in enumerate(power):
            out[i + j] += ci * cj
    lead = binomial(alpha + n, n)
    return [lead * c for c in out]


def _rep_swapped_second(n, alpha, beta):
    # binom(n+beta, n) ((1-x)/2)^(-alpha) (-1)^n F(beta+n+1, -alpha-n; beta+1; (1+x)/2)
    if alpha.denominator != 1 or not (-n <= alpha.numerator <= 0):
        return None
    m = int(alpha) + n
    if not _pochhammer_nonzero(beta + 1, m + 1):
        return None
    half = Fraction(1, 2)
    arg_powers = _binomial_power(m, half, half) if m > 0 else [[Fraction(1)]]
    series = [Fraction(0)] * (m + 1)
    factor = Fraction(1)
    for k in range(m + 1):
        if k > 0:
            factor = factor * (beta + n + 1 + (k - 1)) * ((-alpha - n) + (k - 1)) \
                / ((beta + 1 + (k - 1)) * k)
        _poly_add_scaled(series, arg_powers[k] + [Fraction(0)] * (m - k), factor)
    power = _binomial_power(-int(alpha), -half, half)[-int(alpha)] if alpha != 0 else [Fraction(1)]
    out = [Fraction(0)] * (n + 1)
    for i, ci in enumerate(series):
        for j, cj in enumerate(power):
            out[i + j] += ci * cj
    lead = binomial(beta + n, n) * (-1) ** n
    return [lead * c for c in out]


def gegenbauer_special_coeffs(n: int) -> PolySpec:
    """The alpha = beta = -1/2 - n Jacobi polynomial, 2^{-2n} C_n^{-n}(x),
    via its explicit parity sum; all zeros are purely imaginary.

    Normalized so the result equals jacobi_coefficients(n, -1/2-n, -1/2-n)
    exactly (the limit Gamma(-m)/Gamma(-n) in the Gegenbauer sum contributes
    one factor n!, and (-2n)_n / (1/2-n)_n = 4^n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    coeffs = [Fraction(0)] * (n + 1)
    nfact = math.factorial(n)
    for m in range(n // 2 + 1):
        num = Fraction(nfact)
        den = (Fraction(2) ** (n + 2 * m)) * math.factorial(m) ** 2 \
            * math.factorial(n - 2 * m)
        coeffs[n - 2 * m] = (-1) ** n * num / den
    half = Fraction(-1, 2) - n
    return PolySpec(n, coeffs, "gegenbauer-special", (half, half))


def find_roots(p: PolySpec, seed: int = 0, max_iter: int = 400) -> ZeroSet:
    """All complex roots by the Aberth–Ehrlich simultaneous iteration at 40
    significant digits, with a Newton polish.

    Initial points sit on the Cauchy-bound circle with seeded random phases,
    so runs are reproducible.  Residuals are |p(root)| relative to the local
    coefficient scale sum_k |c_k| |root|^k.
    """
    if p.degree < 1:
        raise ValueError("degree must be >= 1")
    if p.coefficients[-1] == 0:
        raise ValueError("leading coefficient is zero")
    with mp.workdps(_DPS):
        coeffs = [mp.mpf(c.numerator) / mp.mpf(c.denominator) for c in p.coefficients]
        n = p.degree
        deriv = [coeffs[k] * k for k in range(1, n + 1)]

        def horner(cs, x):
            acc = cs[-1]
            for c in reversed(cs[:-1]):
                acc = acc * x + c
            return acc

        cauchy = 1 + max(abs(c / coeffs[-1]) for c in coeffs[:-1])
        rnd = random.Random(seed)
        z = []
        for k in range(n):
            angle = 2 * mp.pi * (k + 0.35 + 0.1 * rnd.random()) / n
            radius = cauchy * (0.5 + 0.45 * rnd.random())
            z.append(radius * mp.e ** (1j * angle))

        tol = mp.mpf(10) ** (-(_DPS - 8))
        converged = False
        for _ in range(max_iter):
            moved = mp.mpf(0)
            for i in range(n):
                pv = horner(coeffs, z[i])
                dv = horner(deriv, z[i])
                if dv == 0:
                    z[i] += tol * (1 + abs(z[i]))
                    moved = max(moved, tol)
                    continue
                newton = pv / dv
                s = mp.mpc(0)
                for j in range(n):
                    if j != i:
                        s += 1 / (z[i] - z[j])
                denom = 1 - newton * s
                step = newton / denom if denom != 0 else newton
                z[i] -= step
                moved = max(moved, abs(step) / (1 + abs(z[i])))
            if moved < tol:
                converged = True
                break
        for i in range(n):  # Newton polish
            for _ in range(3):
                dv = horner(deriv, z[i])
                if dv == 0:
                    break
                z[i] -= horner(coeffs, z[i]) / dv

        roots = []
        residuals = []
        for zi in z:
            scale = mp.mpf(0)
            powv = mp.mpf(1)
            azi = abs(zi)
            for c in coeffs:
                scale += abs(c) * powv
                powv *= azi
            res = abs(horner(coeffs, zi)) / scale if scale > 0 else mp.mpf(0)
            roots.append(complex(zi))
            residuals.append(float(res))
    order = sorted(range(len(roots)), key=lambda i: (roots[i].real, roots[i].imag))
    return ZeroSet(
        roots=[roots[i] for i in order],
        residuals=[residuals[i] for i in order],
        converged=converged,
    )


def curve_points(curve: str, samples: int = _CURVE_SAMPLES):
    """Dense parametric sample of a named limit curve.

    fig4-curve is |1 - z^2| = 1, the lemniscate r^2 = 2 cos(2 theta);
    fig2-curve is its Moebius image z = (3 - w)/(1 + w).  Returns a list of
    (theta, point) pairs over both lobes.
    """
    if curve == "fig4-curve":
        transform = lambda w: w
    elif curve == "fig2-curve":
        transform = lambda w: (3 - w) / (1 + w)
    else:
        raise ValueError(f"unknown curve tag {curve!r}")
    pts = []
    half = samples // 2
    for lobe_center in (0.0, math.pi):
        for i in range(half):
            theta = lobe_center - math.pi / 4 + (i + 0.5) * (math.pi / 2) / half
            r2 = 2.0 * math.cos(2.0 * theta)
            if r2 <= 0:
                continue
            w = math.sqrt(r2) * complex(math.cos(theta), math.sin(theta))
            pts.append((theta, transform(w)))
    return pts


def _curve_point(curve: str, theta: float) -> complex:
    r2 = 2.0 * math.cos(2.0 * theta)
    if r2 < 0:
        r2 = 0.0
    w = math.sqrt(r2) * complex(math.cos(theta), math.sin(theta))
    if curve == "fig2-curve":
        return (3 - w) / (1 + w)
    return w


def curve_distance(roots, curve: str, samples: int = _CURVE_SAMPLES) -> list[float]:
    """Minimum distance from each root to the named curve.

    Dense sampling followed by golden-section refinement in the curve
    parameter; resolution is far below the 1e-6 tolerance the trend
    assertions need.  The imaginary-axis tag measures |Re root|.
    """
    if curve == "imaginary-axis":
        return [abs(r.real) for r in roots]
    pts = curve_points(curve, samples)
    gold = (math.sqrt(5.0) - 1.0) / 2.0
    out = []
    dtheta = math.pi / len(pts)
    for r in roots:
        best_i = min(range(len(pts)), key=lambda i: abs(r - pts[i][1]))
        theta0 = pts[best_i][0]
        lo, hi = theta0 - 2 * dtheta, theta0 + 2 * dtheta
        f = lambda t: abs(r - _curve_point(curve, t))
        x1 = hi - gold * (hi - lo)
        x2 = lo + gold * (hi - lo)
        f1, f2 = f(x1), f(x2)
        while hi - lo > 1e-12:
            if f1 < f2:
                hi, x2, f2 = x2, x1, f1
                x1 = hi - gold * (hi - lo)
                f1 = f(x1)
            else:
                lo, x1, f1 = x1, x2, f2
                x2 = lo + gold * (hi - lo)
                f2 = f(x2)
        out.append(min(f(0.5 * (lo + hi)), abs(r - pts[best_i][1])))
    return out


def figure_dataset(n: int, alpha, beta, curve: str = "none",
                   family: str = "jacobi", seed: int = 0):
    """Rows (re, im, residual, curve_distance) for one zero-set configuration."""
    if family == "gegenbauer-special":
        spec = gegenbauer_special_coeffs(n)
    else:
        spec = jacobi_coefficients(n, alpha, beta)
    zeros = find_roots(spec, seed=seed)
    zeros.curve = curve
    if curve != "none":
        zeros.curve_distances = curve_distance(zeros.roots, curve)
    rows = []
    for i, root in enumerate(zeros.roots):
        dist = zeros.curve_distances[i] if zeros.curve_distances else float("nan")
        rows.append((root.real, root.imag, zeros.residuals[i], dist))
    return rows, spec, zeros
