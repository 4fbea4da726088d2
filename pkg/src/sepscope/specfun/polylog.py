"""Real dilogarithm on [-1, 1]."""
from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError

ZETA2 = math.pi**2 / 6
_SERIES_TERMS = 64  # 2**-64 / 64**2 is far below double precision


def _series(z: np.ndarray) -> np.ndarray:
    k = np.arange(1, _SERIES_TERMS + 1, dtype=float)
    return np.sum(z[..., None] ** k / k**2, axis=-1)


def li2(z):
    """Dilogarithm ``Li2(z) = sum_{k>=1} z^k / k^2`` for real ``z`` in [-1, 1].

    The power series is used for ``|z| <= 1/2``; other arguments are mapped
    into that disc by Euler's reflection (``z > 1/2``) or Landen's identity
    (``z < -1/2``).
    """
    x = np.asarray(z, dtype=float)
    if np.any((x < -1) | (x > 1)) or np.any(np.isnan(x)):
        raise DomainError("li2 is implemented for real arguments in [-1, 1]")
    out = np.empty_like(x)
    mid = np.abs(x) <= 0.5
    hi = x > 0.5
    lo = x < -0.5
    out[mid] = _series(x[mid])
    if np.any(hi):
        y = x[hi]
        one_minus = 1.0 - y
        with np.errstate(divide="ignore", invalid="ignore"):
            prod = np.where(one_minus > 0, np.log(y) * np.log(np.where(one_minus > 0, one_minus, 1.0)), 0.0)
        out[hi] = ZETA2 - prod - _series(one_minus)
    if np.any(lo):
        y = x[lo]
        out[lo] = -_series(y / (y - 1.0)) - 0.5 * np.log1p(-y) ** 2
    return float(out) if out.ndim == 0 else out
