"""Binned probability curves and scatter summaries."""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np
from scipy import stats

MIN_BIN_TRIALS = 100


@dataclass
class BinnedCurve:
    """Success counts binned by a variable on ``[edges[0], edges[-1]]``."""

    variable: str
    edges: np.ndarray
    trials: np.ndarray
    hits: np.ndarray

    @classmethod
    def empty(cls, variable: str, edges) -> "BinnedCurve":
        edges = np.asarray(edges, dtype=float)
        k = len(edges) - 1
        return cls(variable, edges, np.zeros(k, np.int64), np.zeros(k, np.int64))

    def bin_index(self, x) -> np.ndarray:
        idx = np.searchsorted(self.edges, np.asarray(x, dtype=float), side="right") - 1
        # the right edge belongs to the last bin
        return np.clip(idx, 0, len(self.edges) - 2)

    def add(self, x, success) -> None:
        x = np.asarray(x, dtype=float)
        success = np.asarray(success, dtype=bool)
        ok = np.isfinite(x)
        idx = self.bin_index(x[ok])
        k = len(self.trials)
        self.trials += np.bincount(idx, minlength=k)
        self.hits += np.bincount(idx, weights=success[ok], minlength=k).astype(np.int64)

    def merge(self, other: "BinnedCurve") -> "BinnedCurve":
        return BinnedCurve(self.variable, self.edges, self.trials + other.trials, self.hits + other.hits)

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[:-1] + self.edges[1:])

    @property
    def probability(self) -> np.ndarray:
        with np.errstate(invalid="ignore", divide="ignore"):
            return np.where(self.trials > 0, self.hits / np.maximum(self.trials, 1), np.nan)

    @property
    def stderr(self) -> np.ndarray:
        p = self.probability
        with np.errstate(invalid="ignore", divide="ignore"):
            return np.sqrt(p * (1 - p) / self.trials)

    @property
    def total_trials(self) -> int:
        return int(self.trials.sum())

    @property
    def total_hits(self) -> int:
        return int(self.hits.sum())

    def overall(self) -> Fraction:
        return Fraction(self.total_hits, self.total_trials)

    def weighted_average(self) -> Fraction:
        """Trial-weighted mean of the bin probabilities, in exact arithmetic."""
        num = sum((Fraction(int(h), int(t)) * int(t) for h, t in zip(self.hits, self.trials) if t), Fraction(0))
        return num / self.total_trials

    def populated(self, min_trials: int = MIN_BIN_TRIALS) -> np.ndarray:
        return self.trials >= min_trials

    def spearman(self, min_trials: int = MIN_BIN_TRIALS) -> float:
        """Rank correlation of bin probability against bin centre over populated bins."""
        mask = self.populated(min_trials)
        if mask.sum() < 3:
            return float("nan")
        return float(stats.spearmanr(self.centers[mask], self.probability[mask]).statistic)

    def spread_in_stderr(self, min_trials: int = MIN_BIN_TRIALS) -> float:
        """``(max p - min p) / pooled stderr`` of the two extreme populated bins."""
        mask = self.populated(min_trials)
        p, se = self.probability[mask], self.stderr[mask]
        i, j = int(np.argmax(p)), int(np.argmin(p))
        pooled = np.hypot(se[i], se[j])
        return float((p[i] - p[j]) / pooled) if pooled > 0 else float("inf")

    def rows(self):
        for lo, hi, c, t, h, p, s in zip(
            self.edges[:-1], self.edges[1:], self.centers, self.trials, self.hits, self.probability, self.stderr
        ):
            yield {"variable": self.variable, "lo": lo, "hi": hi, "center": c,
                   "trials": int(t), "hits": int(h), "p": p, "stderr": s}

    def to_csv(self, path) -> Path:
        path = Path(path)
        with path.open("w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=["variable", "lo", "hi", "center", "trials", "hits", "p", "stderr"])
            w.writeheader()
            w.writerows(self.rows())
        return path


def correlation(x: np.ndarray) -> np.ndarray:
    """Pearson correlation of the columns of ``x``, symmetrised with an exact unit diagonal."""
    c = np.corrcoef(np.asarray(x, dtype=float), rowvar=False)
    c = 0.5 * (c + c.T)
    np.fill_diagonal(c, 1.0)
    return np.clip(c, -1.0, 1.0)


@dataclass
class ScatterSummary:
    """Per-class means and correlations of a feature triple."""

    features: tuple[str, ...]
    means: dict[str, np.ndarray]
    correlations: dict[str, np.ndarray]
    counts: dict[str, int]
    pooled_correlation: np.ndarray | None = None
    points: dict[str, np.ndarray] = field(default_factory=dict, repr=False)

    @classmethod
    def from_points(cls, features, points: dict[str, np.ndarray], pooled: bool = False) -> "ScatterSummary":
        means = {k: v.mean(axis=0) for k, v in points.items()}
        corr = {k: correlation(v) for k, v in points.items()}
        counts = {k: len(v) for k, v in points.items()}
        pooled_corr = None
        if pooled:
            # column-stack the classes point-by-point (k-th member of each class)
            m = min(counts.values())
            pooled_corr = correlation(np.hstack([v[:m] for v in points.values()]))
        return cls(tuple(features), means, corr, counts, pooled_corr, dict(points))

    def off_diagonal_range(self) -> tuple[float, float]:
        if self.pooled_correlation is None:
            raise ValueError("no pooled correlation")
        c = self.pooled_correlation
        off = c[~np.eye(len(c), dtype=bool)]
        return float(off.min()), float(off.max())
