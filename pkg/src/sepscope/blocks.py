"""Diagonal-block analytics of bipartite density matrices.

For a state on ``C^dA (x) C^dB`` the ``dB x dB`` diagonal blocks ``D1, D2, ...``
are the principal submatrices belonging to the basis states of the first
factor.  The central object is ``V = D2^(1/2) D1^(-1/2)`` and the ratios of its
singular values.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from . import matcore
from .errors import DimensionMismatch, NotPositiveDefinite, ZeroDiagonal

BLOCH_RADIUS_DEFINITION = (
    "r = ||D/Tr(D) - I/2||_F / sqrt(2) = |lambda_1 - lambda_2| / (2 Tr D); "
    "r in [0, 1/2], 0 for the maximally mixed and 1/2 for a pure 2x2 state"
)


class SingularRatioTriple(NamedTuple):
    v1: np.ndarray  # sigma2 / sigma1
    v2: np.ndarray  # sigma3 / sigma1
    v3: np.ndarray  # sigma3 / sigma2

    def as_array(self) -> np.ndarray:
        return np.stack([self.v1, self.v2, self.v3], axis=-1)


class DiagonalWTriple(NamedTuple):
    w1: np.ndarray
    w2: np.ndarray
    w3: np.ndarray

    def as_array(self) -> np.ndarray:
        return np.stack([self.w1, self.w2, self.w3], axis=-1)


def diag_blocks(rho, k: int) -> list[np.ndarray]:
    """Contiguous ``k x k`` diagonal blocks of ``rho`` (works on stacks)."""
    rho = np.asarray(rho)
    n = rho.shape[-1]
    if k < 1 or n % k:
        raise DimensionMismatch(f"block size {k} does not divide dimension {n}")
    return [rho[..., i : i + k, i : i + k] for i in range(0, n, k)]


def v_matrix(d1, d2, tol: float | None = None, method: str = "jacobi") -> np.ndarray:
    """``V = D2^(1/2) D1^(-1/2)``.

    Raises :class:`NotPositiveDefinite` if ``D1`` has an eigenvalue at or below
    ``tol`` (default ``1e-12 * Tr D1``).
    """
    # D2 only needs to be semidefinite, so its root is taken with clipping
    w2, u2 = matcore.herm_eig(np.asarray(d2), method=method)
    root2 = (u2 * np.sqrt(np.clip(w2, 0.0, None))[..., None, :]) @ matcore.dagger(u2)
    return root2 @ matcore.inv_sqrtm_pd(d1, tol=tol, method=method)


def block_singular_values(rho, k: int, method: str = "lapack", tol_rel: float = 1e-12):
    """Singular values of ``V`` built from the first two ``k x k`` blocks of a stack.

    Returns ``(sv, ok)``: ``sv`` has shape ``(m, k)`` (descending) and ``ok``
    flags samples whose ``D1`` is numerically nonsingular.  Rejected rows are
    filled with NaN; callers count and drop them.
    """
    rho = np.asarray(rho)
    d1, d2 = diag_blocks(rho, k)[:2]
    w1, u1 = matcore.herm_eig(d1, method=method)
    w2, u2 = matcore.herm_eig(d2, method=method)
    tr1 = np.real(np.trace(d1, axis1=-2, axis2=-1))
    ok = w1[..., 0] > tol_rel * tr1
    safe1 = np.where(ok[..., None], w1, 1.0)
    inv_root1 = (u1 * safe1[..., None, :] ** -0.5) @ matcore.dagger(u1)
    root2 = (u2 * np.sqrt(np.clip(w2, 0.0, None))[..., None, :]) @ matcore.dagger(u2)
    sv = matcore.svd(root2 @ inv_root1, method=method).singular_values
    sv = np.where(ok[..., None], sv, np.nan)
    return sv, ok


def ratios_from_singular_values(sv) -> SingularRatioTriple:
    """``(sigma2/sigma1, sigma3/sigma1, sigma3/sigma2)`` from descending singular values."""
    sv = np.asarray(sv, dtype=float)
    if sv.shape[-1] < 3:
        raise DimensionMismatch("need at least three singular values")
    s1, s2, s3 = sv[..., 0], sv[..., 1], sv[..., 2]
    with np.errstate(divide="ignore", invalid="ignore"):
        v3 = np.where(s2 > 0, s3 / np.where(s2 > 0, s2, 1.0), 0.0)
    return SingularRatioTriple(s2 / s1, s3 / s1, v3)


def ratio_triple(v, method: str = "jacobi") -> SingularRatioTriple:
    """Singular-value ratio triple of a 3x3 matrix ``V`` (``sigma1 > 0`` required)."""
    v = np.asarray(v)
    if v.shape[-2:] != (3, 3):
        raise DimensionMismatch(f"expected 3x3 matrices, got {v.shape[-2:]}")
    sv = matcore.svd(v, method=method).singular_values
    if np.any(sv[..., 0] <= 0):
        raise ValueError("largest singular value must be positive")
    return ratios_from_singular_values(sv)


def _det2(m):
    return (m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]).real


def epsilon_la(d1, d2) -> np.ndarray | float:
    """Singular-value ratio ``sigma2/sigma1`` of ``V`` for 2x2 blocks, in closed form.

    Uses ``eps = exp(-arccosh(sqrt(det D1 / det D2) * Tr(D2 D1^-1) / 2))``; the
    arccosh argument is clamped to 1 when it falls below 1 by rounding.
    """
    d1 = np.asarray(d1)
    d2 = np.asarray(d2)
    if d1.shape[-2:] != (2, 2) or d2.shape[-2:] != (2, 2):
        raise DimensionMismatch("epsilon_la needs 2x2 blocks")
    det1 = _det2(d1)
    det2 = _det2(d2)
    if np.any(det1 <= 0) or np.any(det2 <= 0):
        raise NotPositiveDefinite("blocks must be positive definite")
    # Tr(D2 D1^-1) with the explicit 2x2 inverse adj(D1)/det(D1)
    adj = np.stack(
        [
            np.stack([d1[..., 1, 1], -d1[..., 0, 1]], axis=-1),
            np.stack([-d1[..., 1, 0], d1[..., 0, 0]], axis=-1),
        ],
        axis=-2,
    )
    tr = np.real(np.einsum("...ij,...ji->...", d2, adj)) / det1
    arg = 0.5 * np.sqrt(det1 / det2) * tr
    if np.any(arg < 1 - 1e-10):
        raise ValueError("arccosh argument below 1; blocks are not Hermitian PD")
    arg = np.maximum(arg, 1.0)
    eps = arg - np.sqrt((arg - 1.0) * (arg + 1.0))  # = exp(-arccosh(arg))
    return float(eps) if np.ndim(eps) == 0 else eps


def w_triple(rho) -> DiagonalWTriple:
    """Diagonal-entry ratios of a 6x6 state, each mapped into (0, 1] by ``min(w, 1/w)``.

    ``w1 = sqrt(r22 r44 / (r11 r55))``, ``w2 = sqrt(r33 r44 / (r11 r66))``,
    ``w3 = sqrt(r33 r55 / (r22 r66))`` where ``rii`` are diagonal entries
    (1-based).  These are the singular-value ratios of ``V`` when both 3x3
    blocks are diagonal.
    """
    rho = np.asarray(rho)
    if rho.shape[-2:] != (6, 6):
        raise DimensionMismatch("w_triple needs 6x6 states")
    d = np.real(np.diagonal(rho, axis1=-2, axis2=-1))
    if np.any(d <= 0):
        raise ZeroDiagonal("all diagonal entries must be positive")
    r1, r2, r3, r4, r5, r6 = (d[..., i] for i in range(6))
    raw = (
        np.sqrt(r2 * r4 / (r1 * r5)),
        np.sqrt(r3 * r4 / (r1 * r6)),
        np.sqrt(r3 * r5 / (r2 * r6)),
    )
    return DiagonalWTriple(*(np.minimum(w, 1.0 / w) for w in raw))


def bloch_radius(d, trace: float | np.ndarray | None = None) -> np.ndarray | float:
    """Bloch radius of a 2x2 Hermitian matrix, see :data:`BLOCH_RADIUS_DEFINITION`.

    ``trace`` defaults to ``Tr(d)``; the matrix is normalised by it first.
    """
    d = np.asarray(d)
    if d.shape[-2:] != (2, 2):
        raise DimensionMismatch("Bloch radius is defined for 2x2 matrices")
    t = np.real(np.trace(d, axis1=-2, axis2=-1)) if trace is None else np.asarray(trace)
    dn = d / np.asarray(t)[..., None, None]
    dev = dn - 0.5 * np.eye(2)
    r = np.linalg.norm(dev, axis=(-2, -1)) / np.sqrt(2.0)
    return float(r) if np.ndim(r) == 0 else r


def bloch_matrix(rho, dA: int, dB: int) -> np.ndarray:
    """The 2x2 matrix whose Bloch radius the constancy check bins on.

    For a ``dA x 2`` split this is ``D1 + D2 + ...`` (the sum of the 2x2-indexed
    diagonal blocks, i.e. the reduced state of the second factor; for two
    qubits ``D1 + D2``).  For a ``2 x dB`` split with ``dB != 2`` it is the
    reduced state of the qubit, i.e. the sum of the 2x2 diagonal blocks after
    reordering the factors as ``dB x 2``.
    """
    rho = np.asarray(rho)
    n = dA * dB
    if rho.shape[-2:] != (n, n):
        raise DimensionMismatch(f"expected {n}x{n} states")
    t = rho.reshape(rho.shape[:-2] + (dA, dB, dA, dB))
    if dB == 2:
        return np.einsum("...ajak->...jk", t)
    if dA == 2:
        return np.einsum("...ajbj->...ab", t)
    raise DimensionMismatch("one factor must be a qubit")
