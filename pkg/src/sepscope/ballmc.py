"""Monte Carlo on operator-norm unit balls of small matrices.

Matrices are drawn uniformly from the box ``[-L, L]`` (entrywise, or re/im
parts for complex entries).  Those with operator norm below one are kept and
each survivor is then deformed by ``A -> S(eps) * A`` with ``S`` multiplying
entries above the diagonal by ``eps`` and entries below it by ``1/eps``.  The
fraction of survivors whose deformed norm is still below one, as a function
of ``eps``, is the numerical analogue of the separability function.

Because the unit ball lies inside the cube ``[-1, 1]``, the survivors are
uniform on the ball for any ``L >= 1``; ``L`` only sets the acceptance rate.
"""
from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import matcore
from .matcore import Field
from .parallel import ChunkPlan, map_chunks
from .specfun.ballvolume import ball_volume_formula
from .statesampler import RngStream, _rng

DEFAULT_EPS_GRID = np.round(np.arange(1, 100) / 100.0, 2)
DEFAULT_CHUNK = 200_000
DEFAULT_HALF_WIDTH = {(2, Field.REAL): 10.0, (3, Field.REAL): 2.0}
COMPLEX_HALF_WIDTH = 0.5
CSV_COLUMNS = ("eps", "trials", "hits", "p", "stderr")


class ScalingPattern(enum.Enum):
    TWO_BY_TWO = "2x2"
    THREE_BY_THREE_UNIFORM = "3x3"
    TRIPLE_BLOCK_SUM = "triple-block"

    @property
    def size(self) -> int:
        return 2 if self is ScalingPattern.TWO_BY_TWO else 3

    @classmethod
    def for_size(cls, n: int) -> "ScalingPattern":
        return cls.TWO_BY_TWO if n == 2 else cls.THREE_BY_THREE_UNIFORM


def default_half_width(n: int, field: Field) -> float:
    if field is Field.COMPLEX:
        return COMPLEX_HALF_WIDTH
    return DEFAULT_HALF_WIDTH.get((n, field), 1.0)


def scaling_matrix(n: int, eps: float) -> np.ndarray:
    """Entrywise multipliers: ``eps`` above the diagonal, ``1/eps`` below, 1 on it."""
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    s = np.ones((n, n))
    iu = np.triu_indices(n, 1)
    s[iu] = eps
    s[iu[::-1]] = 1.0 / eps
    return s


def sample_box(n: int, field, half_width: float, stream, size: int | None = None) -> np.ndarray:
    """Uniform ``n x n`` matrices on ``[-L, L]`` (re and im separately when complex)."""
    if not half_width > 0:
        raise ValueError("half_width must be positive")
    field = Field.parse(field)
    rng = _rng(stream)
    shape = (n, n) if size is None else (size, n, n)
    a = rng.uniform(-half_width, half_width, shape)
    if field is Field.COMPLEX:
        a = a + 1j * rng.uniform(-half_width, half_width, shape)
    return a


def block_sum(a: np.ndarray, k: int = 3) -> np.ndarray:
    """Sum of the ``k x k`` diagonal blocks of a stack of square matrices."""
    n = a.shape[-1]
    return sum(a[..., i : i + k, i : i + k] for i in range(0, n, k))


def apply_scaling(a, eps: float, pattern: ScalingPattern) -> np.ndarray:
    """Deform ``a`` at ``eps``; for the triple-block pattern ``a`` is 9x9 and the blocks are summed first."""
    a = np.asarray(a)
    if pattern is ScalingPattern.TRIPLE_BLOCK_SUM:
        a = block_sum(a, 3)
    n = a.shape[-1]
    if n != pattern.size:
        raise ValueError(f"pattern {pattern.value} needs {pattern.size}x{pattern.size} matrices")
    if eps == 1.0:
        return a.copy()
    return a * scaling_matrix(n, eps)


def _norm_below_one_2x2(a: np.ndarray) -> np.ndarray:
    # sigma1 < 1 iff ||A||_F^2 < 1 + |det A|^2 and |det A| < 1
    det2 = np.abs(a[..., 0, 0] * a[..., 1, 1] - a[..., 0, 1] * a[..., 1, 0]) ** 2
    frob2 = np.sum(np.real(a * np.conj(a)), axis=(-2, -1))
    return (frob2 < 1.0 + det2) & (det2 < 1.0)


def _norm_below_one(a: np.ndarray) -> np.ndarray:
    if a.shape[-1] == 2:
        return _norm_below_one_2x2(a)
    return matcore.operator_norm(a, method="lapack") < 1.0


def _survivors(a: np.ndarray) -> np.ndarray:
    """Members of the stack with operator norm < 1."""
    n = a.shape[-1]
    # ||A||_2 < 1 forces |a_ij| < 1 and ||A||_F^2 < n; both are cheap
    mag2 = np.real(a * np.conj(a))
    keep = np.all(mag2 < 1.0, axis=(-2, -1))
    keep &= np.sum(mag2, axis=(-2, -1)) < n
    cand = a[keep]
    if len(cand) == 0:
        return cand
    return cand[_norm_below_one(cand)]


def _hit_counts(surv: np.ndarray, eps_grid: np.ndarray) -> np.ndarray:
    n = surv.shape[-1]
    hits = np.zeros(len(eps_grid), dtype=np.int64)
    if len(surv) == 0:
        return hits
    for i, eps in enumerate(eps_grid):
        scaled = surv if eps == 1.0 else surv * scaling_matrix(n, eps)
        hits[i] = int(np.count_nonzero(_norm_below_one(scaled)))
    return hits


@dataclass
class BallCurve:
    """Survivor-conditioned deformation curve.

    ``trials`` counts box samples with norm < 1 and ``hits[i]`` those that
    also satisfy the deformed condition at ``eps_grid[i]``.
    """

    eps_grid: np.ndarray
    trials: int
    hits: np.ndarray
    samples: int
    n: int
    field: Field
    half_width: float
    pattern: ScalingPattern
    survivors: np.ndarray | None = field(default=None, repr=False)

    @property
    def probability(self) -> np.ndarray:
        return self.hits / self.trials if self.trials else np.full(len(self.eps_grid), np.nan)

    @property
    def stderr(self) -> np.ndarray:
        p = self.probability
        return np.sqrt(p * (1 - p) / self.trials) if self.trials else p

    @property
    def survivor_rate(self) -> float:
        return self.trials / self.samples

    @property
    def survivor_rate_stderr(self) -> float:
        p = self.survivor_rate
        return math.sqrt(p * (1 - p) / self.samples)

    @property
    def box_dimension(self) -> int:
        """Real dimension of the sampled matrix (per block-summed matrix for triple-block)."""
        return self.n * self.n * self.field.dim

    def rows(self):
        for e, h, p, s in zip(self.eps_grid, self.hits, self.probability, self.stderr):
            yield {"eps": float(e), "trials": self.trials, "hits": int(h), "p": float(p), "stderr": float(s)}

    def to_csv(self, path) -> Path:
        path = Path(path)
        with path.open("w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
            writer.writeheader()
            for row in self.rows():
                writer.writerow(row)
        return path

    def merge(self, other: "BallCurve") -> "BallCurve":
        if not np.array_equal(self.eps_grid, other.eps_grid):
            raise ValueError("eps grids differ")
        surv = None
        if self.survivors is not None and other.survivors is not None:
            surv = np.concatenate([self.survivors, other.survivors])
        return BallCurve(
            self.eps_grid, self.trials + other.trials, self.hits + other.hits,
            self.samples + other.samples, self.n, self.field, self.half_width, self.pattern, surv,
        )


def _run(chunk_fn, n, field, half_width, num_samples, eps_grid, pattern, seed, chunk_size, threads, dump):
    if num_samples < 1:
        raise ValueError("num_samples must be >= 1")
    eps_grid = DEFAULT_EPS_GRID if eps_grid is None else np.asarray(eps_grid, dtype=float)
    if np.any(eps_grid <= 0) or np.any(eps_grid > 1) or np.any(np.diff(eps_grid) <= 0):
        raise ValueError("eps grid must be ascending in (0, 1]")

    def work(stream: RngStream, size: int):
        surv = chunk_fn(stream, size)
        return len(surv), _hit_counts(surv, eps_grid), (surv if dump else None)

    parts = map_chunks(work, ChunkPlan(num_samples, chunk_size), seed, threads)
    trials = sum(p[0] for p in parts)
    hits = np.sum([p[1] for p in parts], axis=0) if parts else np.zeros(len(eps_grid), np.int64)
    surv = np.concatenate([p[2] for p in parts]) if dump else None
    return BallCurve(eps_grid, trials, hits, num_samples, n, field, half_width, pattern, surv)


def ball_chi_curve(
    n: int,
    field="real",
    half_width: float | None = None,
    num_samples: int = 10**6,
    eps_grid=None,
    pattern: ScalingPattern | None = None,
    seed: int = 0,
    chunk_size: int = DEFAULT_CHUNK,
    threads: int | None = None,
    dump: bool = False,
) -> BallCurve:
    """Sample ``num_samples`` box matrices and build the deformation curve of the survivors."""
    field = Field.parse(field)
    pattern = pattern or ScalingPattern.for_size(n)
    if pattern.size != n or pattern is ScalingPattern.TRIPLE_BLOCK_SUM:
        raise ValueError(f"pattern {pattern.value} does not apply to {n}x{n} matrices")
    L = default_half_width(n, field) if half_width is None else half_width

    def chunk(stream, size):
        return _survivors(sample_box(n, field, L, stream, size))

    return _run(chunk, n, field, L, num_samples, eps_grid, pattern, seed, chunk_size, threads, dump)


def triple_block_curve(
    field="real",
    half_width: float | None = None,
    num_samples: int = 10**6,
    eps_grid=None,
    seed: int = 0,
    chunk_size: int = DEFAULT_CHUNK,
    threads: int | None = None,
    dump: bool = False,
    full_matrix: bool = False,
) -> BallCurve:
    """Curve for ``D = D1 + D2 + D3`` built from the diagonal blocks of 9x9 box matrices.

    Off-diagonal blocks never enter ``D``, so by default only the three
    diagonal blocks are drawn; ``full_matrix=True`` draws the whole 9x9 box
    matrix (same distribution of ``D``, about 3x slower).
    """
    field = Field.parse(field)
    L = (COMPLEX_HALF_WIDTH if field is Field.COMPLEX else 1.0) if half_width is None else half_width

    def chunk(stream, size):
        rng = stream.generator()
        if full_matrix:
            d = block_sum(sample_box(9, field, L, rng, size), 3)
        else:
            d = sample_box(3, field, L, rng, 3 * size).reshape(size, 3, 3, 3).sum(axis=1)
        return _survivors(d)

    pattern = ScalingPattern.TRIPLE_BLOCK_SUM
    return _run(chunk, 3, field, L, num_samples, eps_grid, pattern, seed, chunk_size, threads, dump)


def survivor_rate_z(trials: int, samples: int, ref_hits: int, ref_samples: int) -> float:
    """Two-proportion z-score (pooled standard error) of our rate against a reference count."""
    p1 = trials / samples
    p2 = ref_hits / ref_samples
    pooled = (trials + ref_hits) / (samples + ref_samples)
    se = math.sqrt(pooled * (1 - pooled) * (1 / samples + 1 / ref_samples))
    return (p1 - p2) / se if se > 0 else 0.0


def pointwise_dominance(high: BallCurve, low: BallCurve, n_sigma: float = 2.0) -> np.ndarray:
    """Per-eps check that ``high`` is not below ``low`` by more than ``n_sigma`` pooled errors."""
    se = np.sqrt(high.stderr**2 + low.stderr**2)
    return high.probability - low.probability >= -n_sigma * se


@dataclass(frozen=True)
class VolumeReport:
    n: int
    samples: int
    hits: int
    half_width: float
    mc_volume: float
    mc_stderr: float
    formula_volume: float
    quoted_volume: float | None

    def z(self, value: float | None) -> float | None:
        if value is None:
            return None
        diff = self.mc_volume - value
        if self.mc_stderr == 0:
            return 0.0 if diff == 0 else math.copysign(math.inf, diff)
        return diff / self.mc_stderr

    @property
    def verdict(self) -> str:
        agree = []
        for name, value in (("product formula", self.formula_volume), ("quoted constant", self.quoted_volume)):
            z = self.z(value)
            if z is not None and abs(z) < 3:
                agree.append(name)
        return " and ".join(agree) if agree else "neither"

    def lines(self) -> list[str]:
        out = [
            f"n = {self.n} real matrices, {self.samples} samples on [-{self.half_width}, {self.half_width}]",
            f"Monte Carlo volume      {self.mc_volume:.6f} +/- {self.mc_stderr:.6f}",
            f"product formula         {self.formula_volume:.6f} (z = {self.z(self.formula_volume):+.1f})",
        ]
        if self.quoted_volume is not None:
            out.append(f"quoted constant         {self.quoted_volume:.6f} (z = {self.z(self.quoted_volume):+.1f})")
        out.append(f"consistent with: {self.verdict}")
        return out


def volume_report(
    n: int = 2,
    num_samples: int = 10**7,
    seed: int = 0,
    chunk_size: int = DEFAULT_CHUNK,
    threads: int | None = None,
) -> VolumeReport:
    """Estimate the real ``n x n`` operator-norm ball volume and compare with both closed values.

    Sampling on ``[-1, 1]`` (which contains the ball) keeps the acceptance
    rate high; the volume is ``rate * 2^(n^2)``.
    """
    trials = _count_survivors(n, num_samples, seed, chunk_size, threads)
    rate = trials / num_samples
    rate_se = math.sqrt(rate * (1 - rate) / num_samples)
    cube = 2.0 ** (n * n)
    formula = ball_volume_formula(n)
    return VolumeReport(
        n, num_samples, trials, 1.0, rate * cube, rate_se * cube,
        formula.value, formula.quoted,
    )


def _count_survivors(n, num_samples, seed, chunk_size, threads) -> int:
    def work(stream, size):
        return len(_survivors(sample_box(n, Field.REAL, 1.0, stream, size)))

    return sum(map_chunks(work, ChunkPlan(num_samples, chunk_size), seed, threads))
