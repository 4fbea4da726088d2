"""Monte Carlo studies on Hilbert-Schmidt random states."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy import stats

from .. import blocks
from ..parallel import ChunkPlan, iter_chunks, map_chunks
from ..statesampler import StateClass, hs_random_batch, is_ppt
from .config import ExperimentConfig
from .stats import MIN_BIN_TRIALS, BinnedCurve, ScatterSummary
from .systems import SystemSpec

RATIO_NAMES = ("v1", "v2", "v3")
SINGULAR_NAMES = ("s1", "s2", "s3")
W_NAMES = ("w1", "w2", "w3")
FEATURES = {"ratios": RATIO_NAMES, "singular": SINGULAR_NAMES, "w": W_NAMES}
BLOCH_BINS = 10


def draw_states(spec: SystemSpec, stream, size: int) -> tuple[np.ndarray, np.ndarray]:
    """``size`` HS states of ``spec`` and their PPT mask."""
    rho = hs_random_batch(spec.n, spec.field, stream, size)
    return rho, is_ppt(rho, spec.dA, spec.dB)


def class_labels(spec: SystemSpec) -> tuple[str, str]:
    """Names of the (PPT, NPT) classes for this system."""
    return StateClass.PPT.label(spec.n), StateClass.NPT.label(spec.n)


def _features(kind: str, spec: SystemSpec, rho: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Feature rows and a validity mask (``D1`` numerically nonsingular)."""
    if kind == "w":
        return blocks.w_triple(rho).as_array(), np.ones(len(rho), dtype=bool)
    sv, ok = blocks.block_singular_values(rho, spec.block)
    if kind == "singular":
        return sv[:, :3], ok
    return blocks.ratios_from_singular_values(sv).as_array(), ok


# ---------------------------------------------------------------- PPT rate


@dataclass(frozen=True)
class PptEstimate:
    system: str
    samples: int
    hits: int
    target: Fraction | None

    @property
    def p(self) -> float:
        return self.hits / self.samples

    @property
    def stderr(self) -> float:
        return math.sqrt(self.p * (1 - self.p) / self.samples)

    @property
    def z(self) -> float | None:
        """z-score against the target using the target's binomial error."""
        if self.target is None:
            return None
        t = float(self.target)
        return (self.p - t) / math.sqrt(t * (1 - t) / self.samples)

    def within(self, n_sigma: float) -> bool:
        return self.z is not None and abs(self.z) <= n_sigma

    def row(self) -> dict:
        return {
            "system": self.system, "samples": self.samples, "ppt": self.hits,
            "p": self.p, "stderr": self.stderr,
            "target": "" if self.target is None else str(self.target),
            "target_value": "" if self.target is None else float(self.target),
            "z": "" if self.z is None else self.z,
        }


def ppt_probability(cfg: ExperimentConfig) -> PptEstimate:
    """Fraction of ``cfg.samples`` HS states with positive partial transpose."""
    spec = cfg.spec

    def work(stream, size):
        return int(np.count_nonzero(draw_states(spec, stream, size)[1]))

    hits = sum(map_chunks(work, ChunkPlan(cfg.samples, cfg.chunk_size), cfg.seed, cfg.threads))
    return PptEstimate(spec.label, cfg.samples, hits, spec.conjecture)


# ---------------------------------------------------------- balanced scatter


@dataclass
class BalancedSample:
    summary: ScatterSummary
    draws: int
    rejected: int
    chunks: int


def balanced_scatter(cfg: ExperimentConfig, kind: str = "ratios", pooled: bool = False) -> BalancedSample:
    """Draw until each class holds exactly ``cfg.per_class`` points.

    Points are kept in stream order, so the sample depends only on the seed
    and chunk size.  ``kind`` is ``"ratios"`` (v-triple), ``"singular"``
    (singular values of ``V``) or ``"w"`` (diagonal-entry ratios).
    """
    if kind not in FEATURES:
        raise ValueError(f"unknown feature kind {kind!r}")
    spec = cfg.spec
    if kind == "w" and spec.n != 6:
        raise ValueError("w-triples need 6x6 systems")
    if spec.block < 3:
        raise ValueError("scatter studies need blocks of size >= 3")
    quota = cfg.per_class
    sep_name, ent_name = class_labels(spec)

    def work(stream, size):
        rho, ppt = draw_states(spec, stream, size)
        feats, ok = _features(kind, spec, rho)
        return feats[ok], ppt[ok], int(np.count_nonzero(~ok))

    kept = {sep_name: [], ent_name: []}
    have = {sep_name: 0, ent_name: 0}
    draws = rejected = chunks = 0
    for feats, ppt, rej in iter_chunks(work, cfg.chunk_size, cfg.seed, cfg.threads):
        chunks += 1
        draws += len(ppt) + rej
        rejected += rej
        for name, mask in ((sep_name, ppt), (ent_name, ~ppt)):
            take = feats[mask][: quota - have[name]]
            kept[name].append(take)
            have[name] += len(take)
        if all(v >= quota for v in have.values()):
            break
    points = {k: np.concatenate(v) for k, v in kept.items()}
    summary = ScatterSummary.from_points(FEATURES[kind], points, pooled=pooled)
    return BalancedSample(summary, draws, rejected, chunks)


def singular_value_scatter(cfg: ExperimentConfig) -> BalancedSample:
    return balanced_scatter(cfg, "singular")


def diagonal_w_scatter(cfg: ExperimentConfig) -> BalancedSample:
    """w-triples per class with the pooled 6x6 correlation of (separable, entangled) columns."""
    return balanced_scatter(cfg, "w", pooled=True)


# ------------------------------------------------------------- ratio curves


@dataclass
class CurveSet:
    curves: dict[str, BinnedCurve]
    samples: int
    rejected: int
    ppt: int

    @property
    def overall(self) -> Fraction:
        return Fraction(self.ppt, self.samples - self.rejected)


def _curve_run(cfg: ExperimentConfig, names, feature_fn) -> CurveSet:
    spec = cfg.spec
    edges = cfg.bin_edges

    def work(stream, size):
        rho, ppt = draw_states(spec, stream, size)
        feats, ok = feature_fn(rho)
        curves = {}
        for i, name in enumerate(names):
            c = BinnedCurve.empty(name, edges)
            c.add(feats[ok, i], ppt[ok])
            curves[name] = c
        return curves, int(np.count_nonzero(~ok)), int(np.count_nonzero(ppt[ok]))

    parts = map_chunks(work, ChunkPlan(cfg.samples, cfg.chunk_size), cfg.seed, cfg.threads)
    merged = {name: BinnedCurve.empty(name, edges) for name in names}
    for curves, _, _ in parts:
        for name in names:
            merged[name] = merged[name].merge(curves[name])
    return CurveSet(merged, cfg.samples, sum(p[1] for p in parts), sum(p[2] for p in parts))


def sep_vs_ratio_curve(cfg: ExperimentConfig) -> CurveSet:
    """Separability probability binned by each of ``v1, v2, v3`` (6x6 systems)."""
    spec = cfg.spec
    if spec.block != 3:
        raise ValueError("ratio curves need 3x3 blocks")

    def feats(rho):
        return _features("ratios", spec, rho)

    return _curve_run(cfg, RATIO_NAMES, feats)


def eight_by_eight_ratio_curve(cfg: ExperimentConfig) -> CurveSet:
    """PPT probability binned by ``sigma2 / sigma1`` of the 4x4-block ``V`` (8x8 systems)."""
    spec = cfg.spec
    if spec.block != 4:
        raise ValueError("this curve needs 4x4 blocks")

    def feats(rho):
        sv, ok = blocks.block_singular_values(rho, 4)
        return (sv[:, 1] / sv[:, 0])[:, None], ok

    return _curve_run(cfg, ("s2_over_s1",), feats)


# ---------------------------------------------------------- Bloch constancy


@dataclass
class BlochReport:
    curve: BinnedCurve
    pooled: float
    z: np.ndarray
    included: np.ndarray
    chi2: float
    dof: int
    p_value: float
    definition: str = field(default=blocks.BLOCH_RADIUS_DEFINITION)

    @property
    def excluded_bins(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(~self.included)]

    @property
    def max_abs_z(self) -> float:
        return float(np.max(np.abs(self.z[self.included])))

    def flat(self, n_sigma: float = 4.0) -> bool:
        return self.max_abs_z <= n_sigma

    def rows(self):
        for row, z, inc in zip(self.curve.rows(), self.z, self.included):
            row = dict(row)
            row["z"] = z
            row["included"] = int(inc)
            yield row


def bloch_constancy(cfg: ExperimentConfig, min_trials: int = MIN_BIN_TRIALS) -> BlochReport:
    """Separability probability binned by the Bloch radius of the qubit-indexed 2x2 matrix.

    Bins with fewer than ``min_trials`` states are excluded from the
    chi-square test and listed in ``excluded_bins``.
    """
    spec = cfg.spec
    if 2 not in (spec.dA, spec.dB):
        raise ValueError("Bloch constancy needs a qubit or rebit factor")
    edges = np.linspace(0.0, 0.5, BLOCH_BINS + 1)

    def work(stream, size):
        rho, ppt = draw_states(spec, stream, size)
        r = blocks.bloch_radius(blocks.bloch_matrix(rho, spec.dA, spec.dB))
        c = BinnedCurve.empty("r", edges)
        c.add(r, ppt)
        return c

    curve = BinnedCurve.empty("r", edges)
    for part in map_chunks(work, ChunkPlan(cfg.samples, cfg.chunk_size), cfg.seed, cfg.threads):
        curve = curve.merge(part)
    pooled = curve.total_hits / curve.total_trials
    included = curve.trials >= min_trials
    with np.errstate(invalid="ignore", divide="ignore"):
        z = (curve.probability - pooled) / np.sqrt(pooled * (1 - pooled) / curve.trials)
    chi2 = float(np.sum(z[included] ** 2))
    dof = int(included.sum()) - 1
    p_value = float(stats.chi2.sf(chi2, dof)) if dof > 0 else float("nan")
    return BlochReport(curve, pooled, z, included, chi2, dof, p_value)
