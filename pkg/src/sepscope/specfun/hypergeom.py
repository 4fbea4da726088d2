"""Generalised hypergeometric series ``pFq`` and its regularised form.

The series is summed term by term from the ratio recurrence

    t_{k+1} / t_k = prod(a_i + k) / prod(b_j + k) * z / (k + 1).

Non-terminating ``p = q + 1`` series converge only algebraically near
``z = 1`` (at ``z = 1`` the terms decay like ``k^-(1+s)`` with
``s = sum(b) - sum(a)``).  For those, direct summation stops after
``SWITCH_TERMS`` terms and the remainder is obtained from the Euler-Maclaurin
formula applied to the smooth continuation

    g(x) = t_K exp(h(x) - h(K)),
    h(x) = sum lnG(a_i + x) - sum lnG(b_j + x) - lnG(1 + x) + x ln z,

whose integral over ``[K, inf)`` is computed by Gauss-Legendre after the
substitution ``x = K / t^2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from ..errors import NonConvergent, PoleError
from .gamma import gamma_sign
from .quadrature import gauss_legendre

TOL = 1e-16
MIN_TERMS = 5
MAX_TERMS = 10**6
SWITCH_TERMS = 200  # rounding in the direct sum grows with K; the EM tail does not


def _nonpositive_int(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


@dataclass(frozen=True)
class HypergeometricSpec:
    """Parameters of ``pFq(upper; lower; z)``; ``regularized`` divides by ``prod Gamma(lower)``."""

    upper: tuple[float, ...]
    lower: tuple[float, ...]
    regularized: bool = False

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(float(a) for a in self.upper))
        object.__setattr__(self, "lower", tuple(float(b) for b in self.lower))

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)

    @property
    def degree(self) -> int | None:
        """Polynomial degree if some upper parameter is a nonpositive integer."""
        ns = [int(-a) for a in self.upper if _nonpositive_int(a)]
        return min(ns) if ns else None

    @property
    def excess(self) -> float:
        """``sum(lower) - sum(upper)``; the series converges at ``z = 1`` iff positive."""
        return sum(self.lower) - sum(self.upper)

    def __call__(self, z):
        return evaluate(self, z)


def hyper_pfq(upper, lower, z, regularized: bool = False):
    """Evaluate ``pFq`` (or its regularised form) at real ``z`` (scalar or array)."""
    return evaluate(HypergeometricSpec(tuple(upper), tuple(lower), regularized), z)


def _first_index(spec: HypergeometricSpec) -> int:
    """Index of the first term that is not identically zero."""
    poles = [int(-b) for b in spec.lower if _nonpositive_int(b)]
    if not poles:
        return 0
    if spec.regularized:
        # 1/Gamma(b + k) vanishes for k <= -b
        return max(poles) + 1
    deg = spec.degree
    if deg is None or deg > min(poles):
        raise PoleError("lower parameter is a nonpositive integer; use regularized=True")
    return 0


def _leading_coefficient(spec: HypergeometricSpec, k0: int) -> float:
    """z-free coefficient of ``z^k0``."""
    logmag = -math.lgamma(k0 + 1)
    sign = 1
    for a in spec.upper:
        for i in range(k0):
            f = a + i
            if f == 0:
                return 0.0
            logmag += math.log(abs(f))
            sign *= 1 if f > 0 else -1
    for b in spec.lower:
        if spec.regularized:
            x = b + k0
            logmag -= math.lgamma(x)
            sign *= gamma_sign(x)
        else:
            for i in range(k0):
                f = b + i
                logmag -= math.log(abs(f))
                sign *= 1 if f > 0 else -1
    return sign * math.exp(logmag)


def _ratio(spec: HypergeometricSpec, k: int) -> float:
    num = 1.0
    for a in spec.upper:
        num *= a + k
    den = float(k + 1)
    for b in spec.lower:
        den *= b + k
    return num / den


def _log_term_shape(spec: HypergeometricSpec, x: np.ndarray) -> np.ndarray:
    # paired gamma ratios via poch avoid cancelling lnG(x) ~ x ln x at large x
    h = np.zeros_like(x)
    for a, b in zip(spec.upper, spec.lower + (1.0,)):
        h = h + np.log(special.poch(b + x, a - b))
    return h


def _em_tail(spec: HypergeometricSpec, k: int, tk: np.ndarray, z: np.ndarray) -> np.ndarray:
    """``sum_{j >= k} t_j`` for ``0 < z <= 1`` by Euler-Maclaurin (see module docstring)."""
    lnz = np.log(z)
    rule = gauss_legendre(48)
    ts, ws = [], []
    for lo, hi in ((0.0, 0.25), (0.25, 0.5), (0.5, 1.0)):
        t, w = rule.on_interval(lo, hi)
        ts.append(t)
        ws.append(w)
    t = np.concatenate(ts)
    w = np.concatenate(ws)
    x = k / t**2
    jac = 2.0 * k / t**3
    h0 = _log_term_shape(spec, x) - _log_term_shape(spec, np.array([float(k)]))[0]
    expo = h0[None, :] + (x - k)[None, :] * lnz[:, None]
    integral = np.sum(w * jac * np.exp(expo), axis=-1)

    def poly(n):
        out = -special.polygamma(n, 1.0 + k)
        for a in spec.upper:
            out += special.polygamma(n, a + k)
        for b in spec.lower:
            out -= special.polygamma(n, b + k)
        return out

    h1 = poly(0) + lnz
    h2 = poly(1)
    h3 = poly(2)
    d3 = h3 + 3.0 * h1 * h2 + h1**3
    return tk * (integral + 0.5 - h1 / 12.0 + d3 / 720.0)


def evaluate(spec: HypergeometricSpec, z):
    """Sum the series; see :func:`hyper_pfq`."""
    zarr = np.atleast_1d(np.asarray(z, dtype=float))
    deg = spec.degree
    k0 = _first_index(spec)
    if deg is not None and k0 > deg:
        return 0.0 if np.ndim(z) == 0 else np.zeros(np.shape(z))

    if deg is None:
        if spec.p > spec.q + 1 and np.any(zarr != 0):
            raise NonConvergent("pFq with p > q + 1 diverges for z != 0")
        if spec.p == spec.q + 1:
            if np.any(np.abs(zarr) > 1):
                raise NonConvergent("series diverges for |z| > 1")
            if np.any(np.abs(zarr) == 1) and spec.excess <= 0:
                raise NonConvergent("series diverges on |z| = 1 when sum(lower) <= sum(upper)")

    c = _leading_coefficient(spec, k0)
    term = c * zarr**k0
    total = np.zeros_like(zarr)
    active = np.ones(zarr.shape, dtype=bool)
    monotone_from = int(max([abs(a) for a in spec.upper] + [abs(b) for b in spec.lower] + [0.0])) + 2
    k = k0
    while True:
        total[active] += term[active]
        if deg is not None and k >= deg:
            break
        r = _ratio(spec, k)
        nxt = term * r * zarr
        n_summed = k - k0 + 1
        if n_summed >= MIN_TERMS and k >= monotone_from:
            rho = np.abs(r * zarr)
            if spec.p == spec.q + 1:
                rho = np.maximum(rho, np.abs(zarr))
            with np.errstate(divide="ignore"):
                tail = np.where(rho < 1, np.abs(nxt) / np.where(rho < 1, 1 - rho, 1.0), np.inf)
            done = tail <= TOL * np.abs(total)
            done |= (nxt == 0) & (rho < 1)
            active &= ~done
        k += 1
        term = nxt
        if not np.any(active):
            break
        if deg is None and spec.p == spec.q + 1 and n_summed >= SWITCH_TERMS:
            em = active & (zarr > 0)
            if np.any(em):
                total[em] += _em_tail(spec, k, term[em], zarr[em])
                active &= ~em
            if not np.any(active):
                break
        if n_summed >= MAX_TERMS:
            raise NonConvergent(f"series not converged after {MAX_TERMS} terms")

    return float(total[0]) if np.ndim(z) == 0 else total.reshape(np.shape(z))
