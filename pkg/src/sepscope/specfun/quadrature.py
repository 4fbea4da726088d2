"""Gauss-Legendre rules and the composite/triangle integrators built on them."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre nodes and weights on [-1, 1]."""

    nodes: np.ndarray
    weights: np.ndarray
    order: int

    def on_interval(self, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
        half = 0.5 * (b - a)
        return a + half * (self.nodes + 1.0), half * self.weights

    def integrate(self, f, a: float, b: float) -> float:
        x, w = self.on_interval(a, b)
        return float(np.dot(w, f(x)))


@lru_cache(maxsize=None)
def gauss_legendre(order: int) -> QuadratureRule:
    """Cached ``order``-point rule, exact for polynomials of degree ``2*order - 1``."""
    if order < 1:
        raise ValueError("order must be positive")
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return QuadratureRule(x, w, order)


def composite(f, breakpoints, order: int = 20) -> float:
    """Sum of Gauss-Legendre integrals over consecutive breakpoint intervals."""
    rule = gauss_legendre(order)
    pts = np.asarray(breakpoints, dtype=float)
    xs, ws = zip(*(rule.on_interval(a, b) for a, b in zip(pts[:-1], pts[1:]) if b > a))
    x = np.concatenate(xs)
    return float(np.dot(np.concatenate(ws), f(x)))


def triangle_rule(order: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Tensor rule on the triangle ``-1 <= y <= x <= 1``.

    The triangle is mapped to ``[-1, 1] x [0, 1]`` by ``y = -1 + (x + 1) u``;
    the Jacobian ``x + 1`` is folded into the returned weights.
    """
    rule = gauss_legendre(order)
    x = rule.nodes
    u, wu = rule.on_interval(0.0, 1.0)
    X = np.repeat(x, order)
    U = np.tile(u, order)
    W = np.repeat(rule.weights, order) * np.tile(wu, order) * (X + 1.0)
    Y = -1.0 + (X + 1.0) * U
    return X, Y, W
