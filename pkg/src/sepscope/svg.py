"""Minimal SVG 1.1 plots written by hand, each with a backing CSV of the same data."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

PALETTE = ("#d62728", "#2ca02c", "#1f77b4", "#ff7f0e", "#9467bd", "#8c564b", "#17becf")
WIDTH, HEIGHT = 640, 480
MARGIN = dict(left=70, right=150, top=40, bottom=60)
MAX_MARKERS = 4000  # per scatter series; the CSV keeps every point


@dataclass
class Series:
    label: str
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray | None = None
    color: str | None = None
    err: np.ndarray | None = None


@dataclass
class PlotSpec:
    """``kind`` is ``"curve"``, ``"scatter3d-projection"`` or ``"histogram"``."""

    kind: str
    title: str
    xlabel: str
    ylabel: str
    series: list[Series] = field(default_factory=list)
    xrange: tuple[float, float] | None = None
    yrange: tuple[float, float] | None = None
    zlabel: str = ""

    def __post_init__(self):
        if self.kind not in ("curve", "scatter3d-projection", "histogram"):
            raise ValueError(f"unknown plot kind {self.kind!r}")


def _nice_range(values: np.ndarray) -> tuple[float, float]:
    v = values[np.isfinite(values)]
    if v.size == 0:
        return 0.0, 1.0
    lo, hi = float(v.min()), float(v.max())
    if lo == hi:
        lo, hi = lo - 0.5, hi + 0.5
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    step = (hi - lo) / n
    mag = 10 ** math.floor(math.log10(step))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= step), default=step)
    start = math.ceil(lo / step) * step
    return [start + i * step for i in range(int((hi - start) / step) + 1)]


def _project(s: Series) -> tuple[np.ndarray, np.ndarray]:
    """Oblique projection of (x, y, z) onto the page; z recedes up and to the right."""
    if s.z is None:
        return np.asarray(s.x, float), np.asarray(s.y, float)
    z = np.asarray(s.z, float)
    return np.asarray(s.x, float) + 0.45 * z, np.asarray(s.y, float) + 0.3 * z


def render(spec: PlotSpec) -> str:
    colors = [s.color or PALETTE[i % len(PALETTE)] for i, s in enumerate(spec.series)]
    projected = [_project(s) for s in spec.series]
    allx = np.concatenate([p[0] for p in projected]) if projected else np.array([0.0, 1.0])
    ally = np.concatenate([p[1] for p in projected]) if projected else np.array([0.0, 1.0])
    x0, x1 = spec.xrange or _nice_range(allx)
    y0, y1 = spec.yrange or _nice_range(ally)
    pw = WIDTH - MARGIN["left"] - MARGIN["right"]
    ph = HEIGHT - MARGIN["top"] - MARGIN["bottom"]

    def px(x):
        return MARGIN["left"] + (np.asarray(x) - x0) / (x1 - x0) * pw

    def py(y):
        return MARGIN["top"] + ph - (np.asarray(y) - y0) / (y1 - y0) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2 - MARGIN["right"] / 2:.1f}" y="22" text-anchor="middle" font-size="14">'
        f"{escape(spec.title)}</text>",
        f'<rect x="{MARGIN["left"]}" y="{MARGIN["top"]}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for t in _ticks(x0, x1):
        out.append(f'<line x1="{px(t):.1f}" y1="{MARGIN["top"] + ph}" x2="{px(t):.1f}" '
                   f'y2="{MARGIN["top"] + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{px(t):.1f}" y="{MARGIN["top"] + ph + 18}" text-anchor="middle">{t:g}</text>')
    for t in _ticks(y0, y1):
        out.append(f'<line x1="{MARGIN["left"] - 5}" y1="{py(t):.1f}" x2="{MARGIN["left"]}" '
                   f'y2="{py(t):.1f}" stroke="black"/>')
        out.append(f'<text x="{MARGIN["left"] - 8}" y="{py(t) + 4:.1f}" text-anchor="end">{t:g}</text>')
    out.append(f'<text x="{MARGIN["left"] + pw / 2:.1f}" y="{HEIGHT - 15}" text-anchor="middle">'
               f"{escape(spec.xlabel)}</text>")
    out.append(f'<text x="18" y="{MARGIN["top"] + ph / 2:.1f}" text-anchor="middle" '
               f'transform="rotate(-90 18 {MARGIN["top"] + ph / 2:.1f})">{escape(spec.ylabel)}</text>')

    for s, (x, y), color in zip(spec.series, projected, colors):
        ok = np.isfinite(x) & np.isfinite(y)
        x, y = x[ok], y[ok]
        if spec.kind == "curve":
            pts = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(px(x), py(y)))
            out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>')
            if s.err is not None:
                e = np.asarray(s.err, float)[ok]
                for a, b, d in zip(x, y, e):
                    out.append(f'<line x1="{px(a):.2f}" y1="{py(b - d):.2f}" x2="{px(a):.2f}" '
                               f'y2="{py(b + d):.2f}" stroke="{color}" stroke-opacity="0.5"/>')
        elif spec.kind == "histogram":
            width = pw / max(len(x), 1) * 0.8
            for a, b in zip(px(x), py(y)):
                base = py(max(y0, 0.0))
                out.append(f'<rect x="{a - width / 2:.2f}" y="{min(b, base):.2f}" width="{width:.2f}" '
                           f'height="{abs(base - b):.2f}" fill="{color}" fill-opacity="0.6"/>')
        else:
            step = max(1, len(x) // MAX_MARKERS)
            for a, b in zip(px(x[::step]), py(y[::step])):
                out.append(f'<circle cx="{a:.1f}" cy="{b:.1f}" r="1.2" fill="{color}" fill-opacity="0.5"/>')

    for i, (s, color) in enumerate(zip(spec.series, colors)):
        ly = MARGIN["top"] + 15 + 18 * i
        lx = WIDTH - MARGIN["right"] + 12
        out.append(f'<rect x="{lx}" y="{ly - 9}" width="12" height="10" fill="{color}"/>')
        out.append(f'<text x="{lx + 18}" y="{ly}">{escape(s.label)}</text>')
    if spec.kind == "scatter3d-projection" and spec.zlabel:
        out.append(f'<text x="{WIDTH - MARGIN["right"] + 12}" y="{HEIGHT - MARGIN["bottom"]}">'
                   f"depth: {escape(spec.zlabel)}</text>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def backing_rows(spec: PlotSpec):
    for s in spec.series:
        n = len(s.x)
        for i in range(n):
            row = {"series": s.label, "x": float(s.x[i]), "y": float(s.y[i])}
            row["z"] = "" if s.z is None else float(s.z[i])
            row["err"] = "" if s.err is None else float(s.err[i])
            yield row


def write_plot(spec: PlotSpec, stem) -> tuple[Path, Path]:
    """Write ``stem.svg`` and its backing ``stem.csv``."""
    stem = Path(stem)
    svg_path = stem.with_suffix(".svg")
    csv_path = stem.with_suffix(".csv")
    svg_path.write_text(render(spec), encoding="utf-8")
    with csv_path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=["series", "x", "y", "z", "err"])
        w.writeheader()
        w.writerows(backing_rows(spec))
    return svg_path, csv_path
