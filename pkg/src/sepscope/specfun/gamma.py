"""Gamma-function kernels."""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
from scipy import special

from ..errors import PoleError


def _is_pole(x) -> bool:
    return x <= 0 and float(x).is_integer()


def log_gamma(x: float) -> float:
    """``log|Gamma(x)|``; raises :class:`PoleError` at nonpositive integers."""
    if _is_pole(x):
        raise PoleError(f"Gamma has a pole at {x}")
    return math.lgamma(x)


def gamma_sign(x: float) -> int:
    """Sign of ``Gamma(x)`` for non-pole ``x``."""
    if _is_pole(x):
        raise PoleError(f"Gamma has a pole at {x}")
    if x > 0:
        return 1
    return -1 if math.floor(-x) % 2 == 0 else 1


def rgamma(x: float) -> float:
    """Reciprocal gamma ``1/Gamma(x)``, zero at the poles."""
    if _is_pole(x):
        return 0.0
    return gamma_sign(x) * math.exp(-math.lgamma(x))


def log_gamma_array(x) -> np.ndarray:
    """Vectorised ``log|Gamma|`` for arguments away from the poles."""
    return special.gammaln(np.asarray(x, dtype=float))


def pochhammer(a, k: int):
    """Rising factorial ``(a)_k = a (a+1) ... (a+k-1)``.

    Evaluated as a plain product, so integer and :class:`~fractions.Fraction`
    arguments give exact results.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    result = Fraction(1) if isinstance(a, Fraction) else 1
    for i in range(k):
        result *= a + i
    return result
