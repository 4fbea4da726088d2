"""Density-matrix studies: PPT rates, scatter summaries, ratio curves and Bloch constancy."""
from .config import ExperimentConfig, RunManifest, load_config_file, parse_config_text
from .reference import BALL_REFERENCE_COUNTS, REFERENCE_STATS, ReferenceStat
from .stats import BinnedCurve, ScatterSummary, correlation
from .studies import (
    BalancedSample,
    BlochReport,
    CurveSet,
    PptEstimate,
    balanced_scatter,
    bloch_constancy,
    diagonal_w_scatter,
    eight_by_eight_ratio_curve,
    ppt_probability,
    sep_vs_ratio_curve,
    singular_value_scatter,
)
from .systems import SYSTEMS, SystemSpec, get_system

__all__ = [
    "BALL_REFERENCE_COUNTS", "BalancedSample", "BinnedCurve", "BlochReport", "CurveSet",
    "ExperimentConfig", "PptEstimate", "REFERENCE_STATS", "ReferenceStat", "RunManifest",
    "SYSTEMS", "ScatterSummary", "SystemSpec", "balanced_scatter", "bloch_constancy",
    "correlation", "diagonal_w_scatter", "eight_by_eight_ratio_curve", "get_system",
    "load_config_file", "parse_config_text", "ppt_probability", "sep_vs_ratio_curve",
    "singular_value_scatter",
]
