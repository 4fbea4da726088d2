"""Dense linear algebra for small real and complex matrices.

All routines accept a single ``(n, n)`` matrix or a stack ``(..., n, n)`` and
operate on the trailing two axes.  Two back ends are available:

``method="jacobi"``
    Cyclic Jacobi rotations implemented here (two-sided for Hermitian
    eigenproblems, one-sided on columns for the SVD).  Vectorised over the
    stack, unconditionally convergent for the n <= 9 matrices used in this
    package, and independent of LAPACK.
``method="lapack"``
    ``numpy.linalg``.  Roughly 20x faster on large stacks; used by the Monte
    Carlo drivers, which cross-check against the Jacobi kernel in the tests.
"""
from __future__ import annotations

import enum
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, NoConvergence, NotHermitian, NotPositiveDefinite

MAX_SWEEPS = 100
OFF_TOL = 1e-12
METHODS = ("jacobi", "lapack")


class Field(enum.Enum):
    """Scalar field of matrix entries."""

    REAL = "real"
    COMPLEX = "complex"

    @property
    def dtype(self) -> np.dtype:
        return np.dtype(np.float64 if self is Field.REAL else np.complex128)

    @property
    def dim(self) -> int:
        """Number of real parameters per entry."""
        return 1 if self is Field.REAL else 2

    @classmethod
    def parse(cls, value: "Field | str") -> "Field":
        if isinstance(value, Field):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown field {value!r}; expected 'real' or 'complex'") from None


class HermitianEig(NamedTuple):
    eigenvalues: np.ndarray  # ascending, shape (..., n)
    eigenvectors: np.ndarray  # columns, shape (..., n, n)


class SvdResult(NamedTuple):
    singular_values: np.ndarray  # descending, shape (..., n)


def _as_stack(a) -> tuple[np.ndarray, tuple[int, ...]]:
    a = np.asarray(a)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise DimensionMismatch(f"expected square matrices, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    dtype = np.complex128 if np.iscomplexobj(a) else np.float64
    batch = a.shape[:-2]
    return np.array(a, dtype=dtype).reshape((-1,) + a.shape[-2:]), batch


def _check_method(method: str) -> None:
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose over the last two axes."""
    return np.conj(np.swapaxes(a, -1, -2))


def _rotation(app, aqq, apq):
    """Rotation that annihilates the (p, q) entry of a Hermitian 2x2 block.

    Returns ``c`` (real) and ``sp`` (complex or real) such that the unitary
    ``J = [[c, sp], [-conj(sp), c]]`` gives ``J^H [[app, apq], [conj(apq), aqq]] J``
    diagonal.
    """
    mag = np.abs(apq)
    theta = 0.5 * np.arctan2(2.0 * mag, aqq - app)
    c = np.cos(theta)
    s = np.sin(theta)
    nz = mag > 0
    safe = np.where(nz, mag, 1.0)
    # componentwise real division; complex division overflows for subnormal |apq|
    if np.iscomplexobj(apq):
        phase = np.where(nz, apq.real / safe + 1j * (apq.imag / safe), 1.0)
    else:
        phase = np.where(nz, apq / safe, 1.0)
    return c, s * phase


def _off_norm(a: np.ndarray) -> np.ndarray:
    # summed directly: ||A||^2 - ||diag||^2 cancels to ~sqrt(eps)*||A||
    n = a.shape[-1]
    off = ~np.eye(n, dtype=bool)
    return np.sqrt(np.sum(np.abs(a[..., off]) ** 2, axis=-1))


def _jacobi_eigh(a: np.ndarray, vectors: bool) -> tuple[np.ndarray, np.ndarray | None]:
    a = a.copy()
    m, n, _ = a.shape
    v = np.broadcast_to(np.eye(n, dtype=a.dtype), a.shape).copy() if vectors else None
    scale = np.linalg.norm(a, axis=(-2, -1))
    for _ in range(MAX_SWEEPS):
        active = _off_norm(a) > OFF_TOL * scale
        if not np.any(active):
            w = np.diagonal(a, axis1=-2, axis2=-1).real
            return w, v
        idx = np.flatnonzero(active)
        sub = a[idx]
        vsub = v[idx] if vectors else None
        for p in range(n - 1):
            for q in range(p + 1, n):
                c, sp = _rotation(sub[:, p, p].real, sub[:, q, q].real, sub[:, p, q])
                c = c[:, None]
                sp = sp[:, None]
                colp = sub[:, :, p].copy()
                colq = sub[:, :, q]
                sub[:, :, p] = c * colp - np.conj(sp) * colq
                sub[:, :, q] = sp * colp + c * colq
                rowp = sub[:, p, :].copy()
                rowq = sub[:, q, :]
                sub[:, p, :] = c * rowp - sp * rowq
                sub[:, q, :] = np.conj(sp) * rowp + c * rowq
                if vectors:
                    vp = vsub[:, :, p].copy()
                    vq = vsub[:, :, q]
                    vsub[:, :, p] = c * vp - np.conj(sp) * vq
                    vsub[:, :, q] = sp * vp + c * vq
        a[idx] = sub
        if vectors:
            v[idx] = vsub
    raise NoConvergence(f"Jacobi eigensolver did not converge in {MAX_SWEEPS} sweeps")


def _jacobi_singular_values(a: np.ndarray) -> np.ndarray:
    # One-sided (Hestenes) Jacobi: orthogonalise columns; their norms are the
    # singular values.
    a = a.copy()
    m, n, _ = a.shape
    for _ in range(MAX_SWEEPS):
        norms2 = np.sum(np.abs(a) ** 2, axis=-2)
        gram_off = np.zeros(m)
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = np.sum(np.conj(a[:, :, p]) * a[:, :, q], axis=-1)
                denom = np.sqrt(norms2[:, p] * norms2[:, q])
                rel = np.where(denom > 0, np.abs(g) / np.where(denom > 0, denom, 1.0), 0.0)
                gram_off = np.maximum(gram_off, rel)
        if np.all(gram_off <= OFF_TOL):
            s = np.sqrt(np.sum(np.abs(a) ** 2, axis=-2))
            return -np.sort(-s, axis=-1)
        idx = np.flatnonzero(gram_off > OFF_TOL)
        sub = a[idx]
        for p in range(n - 1):
            for q in range(p + 1, n):
                colp = sub[:, :, p].copy()
                colq = sub[:, :, q]
                alpha = np.sum(np.abs(colp) ** 2, axis=-1)
                beta = np.sum(np.abs(colq) ** 2, axis=-1)
                gamma = np.sum(np.conj(colp) * colq, axis=-1)
                c, sp = _rotation(alpha, beta, gamma)
                c = c[:, None]
                sp = sp[:, None]
                sub[:, :, p] = c * colp - np.conj(sp) * colq
                sub[:, :, q] = sp * colp + c * colq
        a[idx] = sub
    raise NoConvergence(f"one-sided Jacobi SVD did not converge in {MAX_SWEEPS} sweeps")


def check_hermitian(h: np.ndarray, tol: float = 1e-10) -> None:
    """Raise :class:`NotHermitian` unless ``||H - H^H|| <= tol * ||H||`` for every matrix."""
    h = np.asarray(h)
    err = np.linalg.norm(h - dagger(h), axis=(-2, -1))
    ref = np.linalg.norm(h, axis=(-2, -1))
    if np.any(err > tol * np.maximum(ref, np.finfo(float).tiny)):
        raise NotHermitian(f"matrix is not Hermitian (max asymmetry {np.max(err):.3e})")


def herm_eig(h, tol: float = 1e-10, method: str = "jacobi") -> HermitianEig:
    """Eigen-decomposition of Hermitian matrices.

    Parameters
    ----------
    h : array_like, shape (..., n, n)
        Hermitian matrix or stack of them.
    tol : float
        Relative tolerance for the Hermiticity check.
    method : {"jacobi", "lapack"}

    Returns
    -------
    HermitianEig
        Ascending eigenvalues and a unitary matrix whose columns are the
        corresponding eigenvectors.
    """
    _check_method(method)
    a, batch = _as_stack(h)
    check_hermitian(a, tol)
    a = 0.5 * (a + dagger(a))
    n = a.shape[-1]
    if method == "lapack":
        w, v = np.linalg.eigh(a)
    else:
        w, v = _jacobi_eigh(a, vectors=True)
        order = np.argsort(w, axis=-1)
        w = np.take_along_axis(w, order, axis=-1)
        v = np.take_along_axis(v, order[:, None, :], axis=-1)
    return HermitianEig(w.reshape(batch + (n,)), v.reshape(batch + (n, n)))


def eigvalsh(h, tol: float = 1e-10, method: str = "jacobi") -> np.ndarray:
    """Ascending eigenvalues of Hermitian matrices (no eigenvectors)."""
    _check_method(method)
    a, batch = _as_stack(h)
    check_hermitian(a, tol)
    a = 0.5 * (a + dagger(a))
    if method == "lapack":
        w = np.linalg.eigvalsh(a)
    else:
        w, _ = _jacobi_eigh(a, vectors=False)
        w = np.sort(w, axis=-1)
    return w.reshape(batch + (a.shape[-1],))


def svd(a, method: str = "jacobi") -> SvdResult:
    """Singular values in descending order."""
    _check_method(method)
    m, batch = _as_stack(a)
    if method == "lapack":
        s = np.linalg.svd(m, compute_uv=False)
    else:
        s = _jacobi_singular_values(m)
    return SvdResult(s.reshape(batch + (m.shape[-1],)))


def operator_norm(a, method: str = "jacobi") -> np.ndarray | float:
    """Largest singular value (Schatten-infinity norm)."""
    s = svd(a, method=method).singular_values[..., 0]
    return float(s) if s.ndim == 0 else s


def _pd_power(d, power: float, tol: float | None, method: str) -> np.ndarray:
    d = np.asarray(d)
    w, v = herm_eig(d, method=method)
    if tol is None:
        trace = np.real(np.trace(d, axis1=-2, axis2=-1))
        tol = 1e-12 * trace
    bad = w[..., 0] <= tol
    if np.any(bad):
        raise NotPositiveDefinite(
            f"smallest eigenvalue {np.min(w[..., 0]):.3e} is below tolerance"
        )
    return (v * (w ** power)[..., None, :]) @ dagger(v)


def sqrtm_pd(d, tol: float | None = None, method: str = "jacobi") -> np.ndarray:
    """Hermitian positive-definite square root of ``d``.

    ``tol`` defaults to ``1e-12 * trace(d)``; any eigenvalue at or below it
    raises :class:`NotPositiveDefinite`.
    """
    return _pd_power(d, 0.5, tol, method)


def inv_sqrtm_pd(d, tol: float | None = None, method: str = "jacobi") -> np.ndarray:
    """Inverse square root ``d^(-1/2)``, with the same tolerance rule as :func:`sqrtm_pd`."""
    return _pd_power(d, -0.5, tol, method)


def partial_transpose(rho, dA: int, dB: int) -> np.ndarray:
    """Transpose on the second tensor factor of a ``(dA*dB)``-dimensional operator.

    Index convention: row ``i*dB + j`` carries ``|i>_A |j>_B``.  The map is an
    exact involution (pure index permutation).
    """
    rho = np.asarray(rho)
    n = dA * dB
    if rho.shape[-2:] != (n, n):
        raise DimensionMismatch(f"expected trailing shape ({n}, {n}), got {rho.shape[-2:]}")
    batch = rho.shape[:-2]
    t = rho.reshape(batch + (dA, dB, dA, dB))
    t = np.swapaxes(t, -3, -1)
    return t.reshape(batch + (n, n))
