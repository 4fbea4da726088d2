"""Separability functions of the singular-value ratio ``eps``.

``chi_d(eps)`` is the probability that a state with block ratio ``eps`` is
separable, for the real (``d = 1``), complex (``d = 2``) and quaternionic
(``d = 4``) cases and their analytic continuation in ``d``.
"""
from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError
from .hypergeom import hyper_pfq
from .polylog import li2
from .quadrature import composite, gauss_legendre

_SERIES_EPS = 0.1  # below this chi1_closed cancels; use the power series
_SERIES_S = 0.25  # below this the chi1 integrand cancels; use its power series
_SPLIT = 1.0 - 1e-6


def _check_eps(eps, allow_zero: bool = True) -> np.ndarray:
    e = np.asarray(eps, dtype=float)
    lo_ok = e >= 0 if allow_zero else e > 0
    if np.any(~lo_ok) or np.any(e > 1) or np.any(np.isnan(e)):
        raise DomainError("eps must lie in (0, 1]")
    return e


def _scalar_or_array(out: np.ndarray, like):
    return float(out) if np.ndim(like) == 0 else out


def _odd_coeffs(m: np.ndarray) -> np.ndarray:
    return 1.0 / ((2 * m - 1) * (2 * m + 1) * (2 * m + 3))


def chi1_integrand(s):
    """Integrand of the real separability function; ``chi1(eps) = (4/pi^2) int_0^eps``.

    ``g(s) = (s + 1/s - (s - 1/s)^2 log((1+s)/(1-s)) / 2) / s``, evaluated by its
    power series ``-8 sum s^(2m) / ((2m-1)(2m+1)(2m+3))`` for small ``s`` and
    with the limit ``g(1) = 2`` at the endpoint.
    """
    s = np.asarray(s, dtype=float)
    out = np.empty_like(s)
    small = s < _SERIES_S
    if np.any(small):
        m = np.arange(20)
        out[small] = -8.0 * np.sum(s[small, None] ** (2 * m) * _odd_coeffs(m), axis=-1)
    big = ~small & (s < 1)
    if np.any(big):
        x = s[big]
        log_term = np.log1p(x) - np.log1p(-x)
        out[big] = (x + 1 / x - 0.5 * (x - 1 / x) ** 2 * log_term) / x
    out[s >= 1] = 2.0
    return _scalar_or_array(out, s)


def _chi1_series(e: np.ndarray) -> np.ndarray:
    m = np.arange(24)
    terms = e[..., None] ** (2 * m + 1) * _odd_coeffs(m) / (2 * m + 1)
    return -32.0 / math.pi**2 * np.sum(terms, axis=-1)


def _chi1_integral_scalar(e: float) -> float:
    if e == 0.0:
        return 0.0
    a = min(e, _SERIES_S)
    total = float(_chi1_series(np.array(a)))
    if e <= a:
        return total
    # grade the panels toward the logarithmic endpoint at s = 1
    pts = [a]
    k = 2
    while 1.0 - 2.0**-k < e:
        if 1.0 - 2.0**-k > a:
            pts.append(1.0 - 2.0**-k)
        k += 1
    if e > _SPLIT and pts[-1] < _SPLIT:
        pts.append(_SPLIT)
    pts.append(e)
    return total + 4.0 / math.pi**2 * composite(chi1_integrand, pts, order=20)


def chi1_integral(eps):
    """Real separability function by quadrature of :func:`chi1_integrand`."""
    e = _check_eps(eps)
    out = np.vectorize(_chi1_integral_scalar, otypes=[float])(e)
    return _scalar_or_array(out, e)


def chi1_closed(eps):
    """Real separability function in closed form via the dilogarithm.

    ``(2 / (pi^2 e^2)) [e^2 (4 Li2(e) - Li2(e^2)) + (1 - e^4) atanh(e) + e^3 - e]``,
    with the limit 1 at ``e = 1`` and the power series for small ``e``.
    """
    e = _check_eps(eps)
    out = np.empty_like(e)
    small = e < _SERIES_EPS
    out[small] = _chi1_series(e[small])
    one = e == 1.0
    out[one] = 1.0
    mid = ~small & ~one
    if np.any(mid):
        x = e[mid]
        num = x**2 * (4 * li2(x) - li2(x**2)) + (1 - x**4) * np.arctanh(x) + x**3 - x
        out[mid] = 2.0 * num / (math.pi**2 * x**2)
    return _scalar_or_array(out, e)


def chi2(eps):
    """Complex separability function ``eps^2 (4 - eps^2) / 3``."""
    e = _check_eps(eps)
    return _scalar_or_array(e**2 * (4.0 - e**2) / 3.0, e)


def chi_d(eps, d: float):
    """Separability function for general ``d > 0``.

    ``eps^d Gamma(d+1)^3 / Gamma(d/2+1)^2 * 3F2~(-d/2, d/2, d; d/2+1, 3d/2+1; eps^2)``
    where ``3F2~`` is the regularised hypergeometric function.
    """
    if not d > 0:
        raise DomainError("d must be positive")
    e = _check_eps(eps)
    pref = math.exp(3 * math.lgamma(d + 1) - 2 * math.lgamma(d / 2 + 1))
    h = hyper_pfq((-d / 2, d / 2, d), (d / 2 + 1, 1.5 * d + 1), e**2, regularized=True)
    return _scalar_or_array(pref * e**d * np.asarray(h), e)


# keep the module's quadrature rule warm for repeated calls
gauss_legendre(20)
