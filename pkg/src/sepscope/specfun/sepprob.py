"""Closed-form separability probabilities as functions of the field parameter.

``alpha = d / 2`` where ``d = 1, 2, 4`` for real, complex and quaternionic
two-qubit systems.  Four independent routes are provided and must agree:

* :func:`sep_prob_series`, an infinite sum of Gamma-function ratios,
* :func:`sep_prob_induced`, a single regularised ``6F5`` at unit argument,
* :func:`sep_prob_dunkl`, a finite double sum for even ``d``,
* :func:`sep_prob_from_chi`, a two-dimensional integral of ``chi_d``.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ..errors import DomainError, NonConvergent
from .chi import chi_d
from .gamma import pochhammer
from .hypergeom import hyper_pfq
from .quadrature import triangle_rule

TOL = 1e-16
MIN_TERMS = 5
MAX_TERMS = 10**6

_Q_COEFFS = (185000, 779750, 1289125, 1042015, 410694, 63000)


def series_term(a: float) -> float:
    """Summand ``f(a)`` of the series form, evaluated in log-space."""
    q = np.polyval(_Q_COEFFS, a)
    log_mag = (
        -(4 * a + 6) * math.log(2)
        + math.lgamma(3 * a + 2.5)
        + math.lgamma(5 * a + 2)
        - math.log(3)
        - math.lgamma(a + 1)
        - math.lgamma(2 * a + 3)
        - math.lgamma(5 * a + 6.5)
    )
    return float(q) * math.exp(log_mag)


def sep_prob_series(alpha: float, return_terms: bool = False):
    """``sum_{i>=0} f(alpha + i)``.

    Stops once a term drops below ``1e-16`` of the running sum (at least five
    terms).  With ``return_terms`` the summed terms are returned as well.
    """
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    total = 0.0
    terms = []
    for i in range(MAX_TERMS):
        t = series_term(alpha + i)
        total += t
        terms.append(t)
        if i + 1 >= MIN_TERMS and abs(t) < TOL * abs(total):
            return (total, np.array(terms)) if return_terms else total
    raise NonConvergent(f"series not converged after {MAX_TERMS} terms")


def q_induced(d: float) -> float:
    """Half of :func:`sep_prob_induced`; the probability is ``2 Q``."""
    if not d > 0:
        raise DomainError("d must be positive")
    log_pre = (
        0.5 * math.log(math.pi)
        - (4.5 * d + 2.5) * math.log(2)
        + math.lgamma(1.5 * (d + 1))
        + math.lgamma(1.25 * d + 19 / 8)
        + math.lgamma(2 * d + 2)
        + math.lgamma(2.5 * d + 2)
        - math.lgamma(d)
    )
    upper = (1.0, d + 1.5, 1.25 * d + 1, (5 * d + 6) / 4, 1.25 * d + 19 / 8, 1.5 * (d + 1))
    lower = ((d + 4) / 2, 1.25 * d + 11 / 8, (5 * d + 7) / 4, (5 * d + 9) / 4, 2 * (d + 1))
    h = hyper_pfq(upper, lower, 1.0, regularized=True)
    return 0.5 * (1.0 - math.exp(log_pre) * h)


def sep_prob_induced(d: float) -> float:
    """Separability probability from the regularised ``6F5`` at unit argument."""
    return 2.0 * q_induced(d)


def sep_prob_dunkl_exact(d: int) -> Fraction:
    """Finite double-sum formula for even ``d`` in exact rational arithmetic."""
    if d < 2 or d % 2:
        raise DomainError("d must be an even integer >= 2")
    h = d // 2
    half = Fraction(1, 2)
    pre = (
        Fraction(3456) ** d
        * pochhammer(half, h) ** 3
        * pochhammer(Fraction(7, 6), h) ** 2
        * pochhammer(Fraction(5, 6), h) ** 2
        * math.factorial(2 * d)
        / (math.factorial(h) * pochhammer(Fraction(3), 5 * d))
    )
    s = Fraction(0)
    for i in range(h + 1):
        for j in range(h + 1 - i):
            num = (
                pochhammer(Fraction(-d, 2), i + j)
                * pochhammer(Fraction(d, 2), j)
                * pochhammer(Fraction(d), j)
                * pochhammer(Fraction(2 + 3 * d), i)
                * pochhammer(Fraction(1 + d), i)
            )
            den = (
                pochhammer(Fraction(2) + Fraction(5 * d, 2), i + j)
                * pochhammer(1 + Fraction(d, 2), j)
                * math.factorial(i)
                * math.factorial(j)
                * pochhammer(Fraction(-2 * d), i)
            )
            s += num / den
    return pre * s


def sep_prob_dunkl(d: int) -> float:
    """Double-precision value of :func:`sep_prob_dunkl_exact`."""
    return float(sep_prob_dunkl_exact(d))


def _triangle_parts(d: float, order: int):
    x, y, w = triangle_rule(order)
    base = w * ((1 - x**2) * (1 - y**2)) ** d * (x - y) ** d
    eps = np.sqrt((1 - x) / (1 + x)) / np.sqrt((1 - y) / (1 + y))
    return base, eps


def sep_prob_from_chi(d: float, order: int = 120) -> float:
    """Ratio of ``chi_d``-weighted to unweighted integrals over ``-1 <= y <= x <= 1``.

    Both integrands carry ``((1-x^2)(1-y^2))^d (x-y)^d``; the numerator adds
    ``chi_d(sqrt((1-x)/(1+x)) / sqrt((1-y)/(1+y)))``.
    """
    if not d > 0:
        raise DomainError("d must be positive")
    base, eps = _triangle_parts(d, order)
    eps = np.clip(eps, 0.0, 1.0)
    return float(np.dot(base, chi_d(eps, d)) / base.sum())


def triangle_denominator(d: float, order: int = 120) -> float:
    """The unweighted integral in :func:`sep_prob_from_chi`."""
    base, _ = _triangle_parts(d, order)
    return float(base.sum())
