"""Product formula for the operator-norm unit ball volume, in exact arithmetic.

``V(n) = n! prod_{k=1}^n pi^k / ((k/2)! binom(2k, k))`` with ``(k/2)! = Gamma(k/2 + 1)``.
Half-integer factorials contribute ``sqrt(pi)``, so every value is stored as
``coefficient * pi ** pi_power`` with rational ``coefficient`` and ``pi_power``.
The closed constants quoted alongside the formula in the literature are kept
separately in :data:`QUOTED_CONSTANTS`; they disagree with the product formula
and with Monte Carlo, see :func:`sepscope.ballmc.volume_report`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..errors import DomainError


@dataclass(frozen=True)
class PiMonomial:
    """Exact ``coefficient * pi ** pi_power``."""

    coefficient: Fraction
    pi_power: Fraction

    def __mul__(self, other: "PiMonomial") -> "PiMonomial":
        return PiMonomial(self.coefficient * other.coefficient, self.pi_power + other.pi_power)

    def __truediv__(self, other: "PiMonomial") -> "PiMonomial":
        return PiMonomial(self.coefficient / other.coefficient, self.pi_power - other.pi_power)

    def __float__(self) -> float:
        return float(self.coefficient) * math.pi ** float(self.pi_power)

    def __str__(self) -> str:
        return f"{self.coefficient} * pi^({self.pi_power})"


# quoted per-n constants, kept verbatim for comparison
QUOTED_CONSTANTS = {
    2: PiMonomial(Fraction(2, 3), Fraction(-2)),
    3: PiMonomial(Fraction(8, 45), Fraction(-4)),
    4: PiMonomial(Fraction(4, 1575), Fraction(-8)),
}


def half_factorial(k: int) -> PiMonomial:
    """``(k/2)! = Gamma(k/2 + 1)`` exactly."""
    if k < 0:
        raise DomainError("k must be nonnegative")
    if k % 2 == 0:
        return PiMonomial(Fraction(math.factorial(k // 2)), Fraction(0))
    # Gamma(m + 3/2) = (2m+2)! / (4^(m+1) (m+1)!) sqrt(pi) with k = 2m + 1
    m1 = (k + 1) // 2
    return PiMonomial(Fraction(math.factorial(2 * m1), 4**m1 * math.factorial(m1)), Fraction(1, 2))


@dataclass(frozen=True)
class BallVolume:
    n: int
    exact: PiMonomial
    value: float
    quoted: float | None  # quoted literature constant, kept for comparison


def ball_volume_exact(n: int) -> PiMonomial:
    if not 1 <= n <= 4:
        raise DomainError("n must be in 1..4")
    out = PiMonomial(Fraction(math.factorial(n)), Fraction(0))
    for k in range(1, n + 1):
        factor = PiMonomial(Fraction(1), Fraction(k)) / half_factorial(k)
        out = out * PiMonomial(Fraction(1, math.comb(2 * k, k)), Fraction(0)) * factor
    return out


def ball_volume_formula(n: int) -> BallVolume:
    """Product-formula volume for ``n x n`` matrices and the quoted constant for comparison."""
    exact = ball_volume_exact(n)
    quoted = QUOTED_CONSTANTS.get(n)
    return BallVolume(n, exact, float(exact), None if quoted is None else float(quoted))
