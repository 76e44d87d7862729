"""Reference evaluator for the Gauss function 2F1 and terminating pFq.

Evaluation is by direct series summation in a region where the argument is
small, and otherwise by rewriting through a registry of transformation and
connection rules until every internal series argument is small.  The same
registry drives the direction-vector rewrite engine, so what the classifier
claims and what the evaluator computes cannot drift apart.

Branch convention: principal logs everywhere, powers (1-z)^w taken as
exp(w Log(1-z)) with ph(1-z) in (-pi, pi).  The real interval [1, oo) is the
branch cut and is rejected.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .core import (
    GammaPoleError,
    as_integer,
    cpow,
    gamma_ratio,
    is_nonpositive_integer,
    log_gamma,
)

__all__ = [
    "ParamTriple",
    "EvalResult",
    "BranchCutError",
    "DegenerateParameterError",
    "InadmissibleParameterError",
    "NoConvergenceError",
    "RULE_IDS",
    "gauss_series",
    "gauss_value_at_1",
    "terminating_pfq",
    "eval_2f1",
    "apply_transformation",
]

SERIES_EPS = 1e-16
MAX_TERMS = 10**6
DIRECT_REGION = 0.75  # documented direct-summation bound for gauss_series
FALLBACK_LIMIT = 0.97  # hard modulus cap for any internal series argument


class ParamTriple(NamedTuple):
    a: complex
    b: complex
    c: complex


@dataclass(frozen=True)
class EvalResult:
    value: complex
    abs_error_estimate: float
    terms_used: int
    method: str


class BranchCutError(ValueError):
    """Argument on the cut [1, oo)."""


class DegenerateParameterError(ValueError):
    """A dispatched connection formula has a gamma pole; the logarithmic
    limiting forms are out of scope."""


class InadmissibleParameterError(ValueError):
    """Lower parameter at a nonpositive integer with no earlier termination."""


class NoConvergenceError(ArithmeticError):
    """Series did not converge within the term budget."""


def _on_cut(z: complex) -> bool:
    return z.imag == 0.0 and z.real >= 1.0


def _termination_index(a, b):
    """Smallest n with a or b equal to -n (None if neither terminates)."""
    candidates = []
    for w in (a, b):
        n = as_integer(w)
        if n is not None and n <= 0:
            candidates.append(-n)
    return min(candidates) if candidates else None


def gauss_series(a, b, c, z, eps: float = SERIES_EPS, max_terms: int = MAX_TERMS,
                 max_abs_z: float = DIRECT_REGION) -> EvalResult:
    """Sum the defining Gauss series at argument z.

    Stops once three consecutive terms are below eps relative to the partial
    sum (guards alternating-term false stops); the error estimate is ten
    times the magnitude of the first omitted term.  Terminating parameter
    sets are summed exactly term-for-term regardless of |z|.
    """
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    n_term = _termination_index(a, b)
    cn = as_integer(c)
    if cn is not None and cn <= 0 and (n_term is None or n_term > -cn):
        raise InadmissibleParameterError(f"lower parameter c={c} at a nonpositive integer")

    if n_term is not None:
        value = _sum_terminating([a, b], [c], z, n_term)
        return EvalResult(value, 10.0 * eps * abs(value), n_term + 1, "terminating")

    if abs(z) > max_abs_z:
        raise NoConvergenceError(
            f"|z|={abs(z):.3f} outside the direct-summation region (max {max_abs_z})"
        )

    term = 1.0 + 0.0j
    total = 1.0 + 0.0j
    small_streak = 0
    n = 0
    while n < max_terms:
        term = term * (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        n += 1
        total += term
        if abs(term) < eps * abs(total):
            small_streak += 1
            if small_streak >= 3:
                break
        else:
            small_streak = 0
    else:
        raise NoConvergenceError(f"no convergence after {max_terms} terms at z={z}")
    omitted = term * (a + n) * (b + n) / ((c + n) * (n + 1)) * z
    return EvalResult(total, 10.0 * abs(omitted), n + 1, "direct-series")


def _sum_terminating(upper, lower, z, n_term):
    term = 1.0 + 0.0j
    total = 1.0 + 0.0j
    comp = 0.0 + 0.0j  # Kahan carry
    for k in range(n_term):
        num = 1.0 + 0.0j
        for u in upper:
            num *= u + k
        den = (k + 1) + 0.0j
        for l in lower:
            den *= l + k
        if den == 0:
            raise InadmissibleParameterError(
                f"lower parameter hits zero at k={k} before termination index {n_term}"
            )
        term = term * num / den * z
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


def gauss_value_at_1(a, b, c) -> complex:
    """Gauss's evaluation of 2F1 at z=1, valid for Re(c-a-b) > 0."""
    a, b, c = complex(a), complex(b), complex(c)
    s = c - a - b
    if s.real <= 0:
        raise ValueError(f"divergent at z=1: Re(c-a-b)={s.real:.4g} <= 0")
    for w in (c, s):
        if is_nonpositive_integer(w):
            raise GammaPoleError(f"gamma pole at {w}")
    return gamma_ratio([c, s], [c - a, c - b])


def terminating_pfq(upper, lower, z, exact: bool = False):
    """Finite sum of a terminating pFq.

    At least one upper parameter must be a nonpositive integer.  In exact
    mode all inputs must be rational (int/Fraction) and the result is a
    Fraction.  Lower parameters may be nonpositive integers as long as the
    series terminates before the offending factor vanishes.
    """
    n_term = None
    for u in upper:
        n = as_integer(u)
        if n is not None and n <= 0:
            n_term = -n if n_term is None else min(n_term, -n)
    if n_term is None:
        raise ValueError("no upper parameter terminates the series")

    if exact:
        ups = [Fraction(u) for u in upper]
        lows = [Fraction(l) for l in lower]
        zq = Fraction(z)
        term = Fraction(1)
        total = Fraction(1)
        for k in range(n_term):
            num = Fraction(1)
            for u in ups:
                num *= u + k
            den = Fraction(k + 1)
            for l in lows:
                den *= l + k
            if den == 0:
                raise InadmissibleParameterError(
                    f"lower parameter hits zero at k={k} before termination index {n_term}"
                )
            term = term * num / den * zq
            total += term
        return total

    return _sum_terminating([complex(u) for u in upper],
                            [complex(l) for l in lower], complex(z), n_term)


# ---------------------------------------------------------------------------
# Transformation-rule registry
# ---------------------------------------------------------------------------

RULE_IDS = (
    "swap",
    "pfaff-a",
    "pfaff-b",
    "euler",
    "conn-1mz",
    "conn-a4",
    "conn-a5",
    "conn-1oz",
    "conn-euler-1oz",
)


def _phase(w, z) -> complex:
    """exp(sigma * w * pi * i) with sigma chosen so that the factor equals
    the principal power it abbreviates: sigma=+1 for ph(z) > 0 (upper half
    plane and the negative real axis), else -1."""
    sigma = 1.0 if cmath.phase(z) > 0 else -1.0
    return cmath.exp(sigma * complex(w) * cmath.pi * 1j)


def apply_transformation(rule_id: str, a, b, c, z):
    """Expand one rewrite rule at (a, b, c; z).

    Returns (prefactor, terms); each term is (coefficient, ParamTriple,
    argument).  The defining property, checked by the test suite, is

        F(a,b;c;z) = prefactor * sum_i coefficient_i * F(params_i; arg_i).

    Connection rules return two terms; their coefficients absorb the gamma
    ratios and z-powers.  A gamma pole in a coefficient numerator raises
    DegenerateParameterError; a pole in a denominator zeroes that term.
    """
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    one = 1.0 + 0.0j

    if rule_id == "swap":
        return one, [(one, ParamTriple(b, a, c), z)]

    if rule_id == "pfaff-a":
        return cpow(1 - z, -a), [(one, ParamTriple(a, c - b, c), z / (z - 1))]

    if rule_id == "pfaff-b":
        return cpow(1 - z, -b), [(one, ParamTriple(c - a, b, c), z / (z - 1))]

    if rule_id == "euler":
        return cpow(1 - z, c - a - b), [(one, ParamTriple(c - a, c - b, c), z)]

    if rule_id == "quadratic":
        if abs(c - 2 * b) > 1e-12:
            raise ValueError("quadratic rule needs c = 2b exactly")
        pref = cpow(1 - z, -a / 2)
        return pref, [
            (one, ParamTriple(a / 2, b - a / 2, b + 0.5), z * z / (4 * z - 4))
        ]

    if rule_id == "conn-1mz":
        coeff1 = -_gammas([c - 1, a - c + 1, b - c + 1], [a, b, 1 - c]) \
            * cpow(z, 1 - c) * cpow(1 - z, c - a - b)
        coeff2 = _gammas([b - c + 1, a - c + 1], [a + b - c + 1, 1 - c])
        return one, [
            (coeff1, ParamTriple(1 - a, 1 - b, 2 - c), z),
            (coeff2, ParamTriple(a, b, a + b - c + 1), 1 - z),
        ]

    if rule_id == "conn-a4":
        coeff1 = _phase(a, z) * _gammas([c, b - c + 1], [a + b - c + 1, c - a]) \
            * cpow(z, -a)
        coeff2 = _gammas([c, b - c + 1], [a, b - a + 1]) \
            * cpow(z, a - c) * cpow(1 - z, c - a - b)
        return one, [
            (coeff1, ParamTriple(a, a - c + 1, a + b - c + 1), 1 - 1 / z),
            (coeff2, ParamTriple(1 - a, c - a, b - a + 1), 1 / z),
        ]

    if rule_id == "conn-a5":
        coeff1 = _phase(c, z) * _gammas([c - 1, b - c + 1, 1 - a], [b, c - a, 1 - c]) \
            * cpow(z, 1 - c) * cpow(1 - z, c - a - b)
        coeff2 = _phase(c - a, z) * _gammas([1 - a, b - c + 1], [1 - c, b - a + 1]) \
            * cpow(z, a - c) * cpow(1 - z, c - a - b)
        return one, [
            (coeff1, ParamTriple(1 - a, 1 - b, 2 - c), z),
            (coeff2, ParamTriple(1 - a, c - a, b - a + 1), 1 / z),
        ]

    if rule_id == "conn-1oz":
        coeff1 = _phase(a, z) * _gammas([c, b - a], [b, c - a]) * cpow(z, -a)
        coeff2 = _phase(b, z) * _gammas([c, a - b], [a, c - b]) * cpow(z, -b)
        return one, [
            (coeff1, ParamTriple(a, a - c + 1, a - b + 1), 1 / z),
            (coeff2, ParamTriple(b, b - c + 1, b - a + 1), 1 / z),
        ]

    if rule_id == "conn-euler-1oz":
        coeff1 = _phase(c - b, z) * _gammas([c, b - a], [b, c - a]) \
            * cpow(z, b - c) * cpow(1 - z, c - a - b)
        coeff2 = _phase(c - a, z) * _gammas([c, a - b], [a, c - b]) \
            * cpow(z, a - c) * cpow(1 - z, c - a - b)
        return one, [
            (coeff1, ParamTriple(1 - b, c - b, a - b + 1), 1 / z),
            (coeff2, ParamTriple(1 - a, c - a, b - a + 1), 1 / z),
        ]

    raise ValueError(f"unknown rule id {rule_id!r}")


def _gammas(numerators, denominators) -> complex:
    for w in numerators:
        if is_nonpositive_integer(w):
            raise DegenerateParameterError(
                f"gamma pole at {w} in a connection coefficient"
            )
    return gamma_ratio(numerators, denominators)


# ---------------------------------------------------------------------------
# Region-dispatched evaluation
# ---------------------------------------------------------------------------

def _large_z_formula(a, b, c, z):
    """Connection in 1/z without phase factors: coefficients use (-z)^w
    directly, valid for |ph(-z)| < pi."""
    coeff1 = _gammas([c, b - a], [b, c - a]) * cpow(-z, -a)
    coeff2 = _gammas([c, a - b], [a, c - b]) * cpow(-z, -b)
    return [
        (coeff1, ParamTriple(a, a - c + 1, a - b + 1), 1 / z),
        (coeff2, ParamTriple(b, b - c + 1, b - a + 1), 1 / z),
    ]


def _admissible_1oz(a, b, c) -> bool:
    if as_integer(a - b) is not None:
        return False
    return not (is_nonpositive_integer(b - a) or is_nonpositive_integer(a - b))


def _admissible_1mz(a, b, c) -> bool:
    if as_integer(c) is not None:
        return False
    for w in (a - c + 1, b - c + 1):  # gamma poles in coefficient numerators
        if is_nonpositive_integer(w):
            return False
    if is_nonpositive_integer(a + b - c + 1):  # second term's series lower
        return False
    return True


def _combine(prefactor, terms, eps, max_terms, cap):
    value = 0.0 + 0.0j
    err = 0.0
    used = 0
    for coeff, params, arg in terms:
        if coeff == 0:
            continue
        part = gauss_series(*params, arg, eps=eps, max_terms=max_terms, max_abs_z=cap)
        value += coeff * part.value
        err += abs(coeff) * part.abs_error_estimate
        used += part.terms_used
    return prefactor * value, abs(prefactor) * err, used


def eval_2f1(a, b, c, z, method: str = "auto", eps: float = SERIES_EPS,
             max_terms: int = MAX_TERMS) -> EvalResult:
    """Evaluate 2F1(a, b; c; z) anywhere off the cut [1, oo).

    Dispatch: terminating series whenever a or b is a nonpositive integer;
    direct series for |z| <= 0.5; Pfaff for |z/(z-1)| <= 0.5; the 1/z
    connection for |z| >= 1.5; the 1-z connection near z = 1.  When the
    preferred formula is degenerate (integer parameter differences), falls
    back to whichever convergent series has the smallest argument, which can
    be slow but stays accurate.  The method tag records the route taken.
    """
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    if _on_cut(z):
        raise BranchCutError(f"z={z} lies on the branch cut [1, oo)")

    n_term = _termination_index(a, b)
    if n_term is not None:
        value = _sum_terminating([a, b], [c], z, n_term)
        return EvalResult(value, 10.0 * eps * abs(value), n_term + 1, "terminating")

    if is_nonpositive_integer(c):
        raise InadmissibleParameterError(f"lower parameter c={c} at a nonpositive integer")

    if method != "auto":
        return _eval_via(method, a, b, c, z, eps, max_terms)

    az = abs(z)
    pfaff_mod = abs(z / (z - 1)) if z != 1 else float("inf")

    if az <= 0.5:
        return _eval_via("direct-series", a, b, c, z, eps, max_terms)
    if pfaff_mod <= 0.5:
        return _eval_via("pfaff", a, b, c, z, eps, max_terms)
    if az >= 1.5 and _admissible_1oz(a, b, c):
        return _eval_via("connection-1oz", a, b, c, z, eps, max_terms)
    if abs(1 - z) <= 0.5 and max(az, abs(1 - z)) < FALLBACK_LIMIT \
            and _admissible_1mz(a, b, c):
        return _eval_via("connection-1mz", a, b, c, z, eps, max_terms)

    # Fallback ladder: smallest convergent series argument wins.
    candidates = [(pfaff_mod, "pfaff"), (az, "direct-series")]
    if _admissible_1oz(a, b, c):
        candidates.append((1 / az, "connection-1oz"))
    if _admissible_1mz(a, b, c):
        candidates.append((max(az, abs(1 - z)), "connection-1mz"))
    candidates.sort(key=lambda t: t[0])
    mod, route = candidates[0]
    if mod >= FALLBACK_LIMIT:
        raise NoConvergenceError(
            f"no convergent representation for z={z} with these parameters "
            f"(best series modulus {mod:.3f})"
        )
    return _eval_via(route, a, b, c, z, eps, max_terms)


def _eval_via(method, a, b, c, z, eps, max_terms) -> EvalResult:
    if method == "direct-series":
        r = gauss_series(a, b, c, z, eps=eps, max_terms=max_terms, max_abs_z=FALLBACK_LIMIT)
        return EvalResult(r.value, r.abs_error_estimate, r.terms_used, "direct-series")
    if method == "pfaff":
        pref, terms = apply_transformation("pfaff-a", a, b, c, z)
        value, err, used = _combine(pref, terms, eps, max_terms, FALLBACK_LIMIT)
        return EvalResult(value, err, used, "pfaff")
    if method == "euler":
        pref, terms = apply_transformation("euler", a, b, c, z)
        value, err, used = _combine(pref, terms, eps, max_terms, FALLBACK_LIMIT)
        return EvalResult(value, err, used, "euler")
    if method == "connection-1mz":
        if not _admissible_1mz(a, b, c):
            raise DegenerateParameterError(
                "1-z connection degenerate: integer c, c-a, c-b or c-a-b"
            )
        pref, terms = apply_transformation("conn-1mz", a, b, c, z)
        value, err, used = _combine(pref, terms, eps, max_terms, FALLBACK_LIMIT)
        return EvalResult(value, err, used, "connection-1mz")
    if method == "connection-1oz":
        if not _admissible_1oz(a, b, c):
            raise DegenerateParameterError("1/z connection degenerate: a-b is an integer")
        terms = _large_z_formula(a, b, c, z)
        value, err, used = _combine(1.0 + 0.0j, terms, eps, max_terms, FALLBACK_LIMIT)
        return EvalResult(value, err, used, "connection-1oz")
    raise ValueError(f"unknown method {method!r}")
