"""Hilbert-Schmidt random density matrices and PPT classification.

States are drawn as ``rho = G G^H / Tr(G G^H)`` with ``G`` an ``n x K`` Ginibre
matrix.  ``K`` is chosen so the induced measure on density matrices is flat
(Hilbert-Schmidt): the density of ``G G^H`` is proportional to
``det(rho)^(beta*(K - n + 1)/2 - 1)`` with ``beta = 1`` (real) or ``2``
(complex), so ``K = n`` for complex states and ``K = n + 1`` for real ones.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import matcore
from .errors import DegenerateDraw, DimensionMismatch
from .matcore import Field

RNG_ALGORITHM = "numpy Philox4x64-10, key from SeedSequence(master_seed, spawn_key=(stream_index,))"
COMPLEX_NORMAL = "re, im ~ N(0, 1/2) independently, so E|g|^2 = 1"
PPT_TOL = 1e-10


@dataclass(frozen=True)
class RngStream:
    """Reproducible, independent random stream identified by ``(master_seed, stream_index)``."""

    master_seed: int
    stream_index: int = 0

    def __post_init__(self):
        for name in ("master_seed", "stream_index"):
            value = getattr(self, name)
            if not 0 <= value < 2**64:
                raise ValueError(f"{name} must be a 64-bit unsigned integer, got {value}")

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(self.master_seed, spawn_key=(self.stream_index,))
        return np.random.Generator(np.random.Philox(seq))

    def child(self, index: int) -> "RngStream":
        return RngStream(self.master_seed, index)


def _rng(stream) -> np.random.Generator:
    if isinstance(stream, np.random.Generator):
        return stream
    if isinstance(stream, RngStream):
        return stream.generator()
    return RngStream(int(stream)).generator()


def ginibre(rows: int, cols: int, field, stream, size: int | None = None) -> np.ndarray:
    """Matrix (or stack of ``size`` matrices) with iid standard Gaussian entries.

    Complex entries follow :data:`COMPLEX_NORMAL`.
    """
    field = Field.parse(field)
    rng = _rng(stream)
    shape = (rows, cols) if size is None else (size, rows, cols)
    if field is Field.REAL:
        return rng.standard_normal(shape)
    g = rng.standard_normal(shape + (2,))
    return (g[..., 0] + 1j * g[..., 1]) * math.sqrt(0.5)


def hs_columns(n: int, field) -> int:
    """Ginibre column count giving the flat (Hilbert-Schmidt) measure."""
    return n if Field.parse(field) is Field.COMPLEX else n + 1


class StateClass(enum.Enum):
    PPT = "PPT"
    NPT = "NPT"

    def label(self, n: int) -> str:
        """Physical reading of the class: separable/entangled for n <= 6, else PPT/NPT."""
        if n <= 6:
            return "separable" if self is StateClass.PPT else "entangled"
        return self.value


@dataclass(frozen=True)
class DensityMatrix:
    mat: np.ndarray
    dA: int
    dB: int

    def __post_init__(self):
        n = self.dA * self.dB
        if self.mat.shape != (n, n):
            raise DimensionMismatch(f"{self.dA}x{self.dB} split needs a {n}x{n} matrix")
        if abs(np.trace(self.mat).real - 1.0) > 1e-12:
            raise ValueError("density matrix must have unit trace")
        matcore.check_hermitian(self.mat, 1e-12)
        if np.linalg.eigvalsh(self.mat)[0] < -1e-12:
            raise ValueError("density matrix must be positive semidefinite")

    @property
    def n(self) -> int:
        return self.dA * self.dB

    @property
    def field(self) -> Field:
        return Field.COMPLEX if np.iscomplexobj(self.mat) else Field.REAL


def hs_random_batch(n: int, field, stream, size: int) -> np.ndarray:
    """Stack of ``size`` Hilbert-Schmidt random density matrices, shape ``(size, n, n)``.

    Draws with ``Tr(G G^H) < 1e-12`` are redrawn from the same generator.
    """
    field = Field.parse(field)
    rng = _rng(stream)
    g = ginibre(n, hs_columns(n, field), field, rng, size)
    w = g @ matcore.dagger(g)
    tr = np.real(np.trace(w, axis1=-2, axis2=-1))
    bad = tr < 1e-12
    while np.any(bad):  # probability ~ 0; kept for the contract
        idx = np.flatnonzero(bad)
        g = ginibre(n, hs_columns(n, field), field, rng, idx.size)
        w[idx] = g @ matcore.dagger(g)
        tr[idx] = np.real(np.trace(w[idx], axis1=-2, axis2=-1))
        bad = tr < 1e-12
    w /= tr[:, None, None]
    return w


def hs_random_density(n: int, field, dA: int, dB: int, stream) -> DensityMatrix:
    """One Hilbert-Schmidt random state on a ``dA x dB`` system."""
    if dA * dB != n:
        raise DimensionMismatch(f"dA*dB = {dA * dB} does not match n = {n}")
    field = Field.parse(field)
    g = ginibre(n, hs_columns(n, field), field, stream)
    w = g @ matcore.dagger(g)
    tr = float(np.real(np.trace(w)))
    if tr < 1e-12:
        raise DegenerateDraw("Ginibre draw has vanishing trace; resample")
    w = w / tr
    w = 0.5 * (w + matcore.dagger(w))
    return DensityMatrix(w, dA, dB)


def min_pt_eigenvalue(rho, dA: int, dB: int, method: str = "lapack") -> np.ndarray:
    """Smallest eigenvalue of the partial transpose on the ``dB`` factor."""
    pt = matcore.partial_transpose(rho, dA, dB)
    return matcore.eigvalsh(pt, method=method)[..., 0]


def is_ppt(rho, dA: int, dB: int, tol: float = PPT_TOL, method: str = "lapack") -> np.ndarray:
    """Boolean PPT mask for a stack of states."""
    return min_pt_eigenvalue(rho, dA, dB, method) >= -tol


def classify(rho: DensityMatrix, tol: float = PPT_TOL, method: str = "jacobi") -> StateClass:
    """PPT iff the partial transpose has no eigenvalue below ``-tol``."""
    lam = min_pt_eigenvalue(rho.mat, rho.dA, rho.dB, method)
    return StateClass.PPT if lam >= -tol else StateClass.NPT
