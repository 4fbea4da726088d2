"""Special functions and closed-form separability probabilities."""
from .ballvolume import QUOTED_CONSTANTS, BallVolume, PiMonomial, ball_volume_exact, ball_volume_formula
from .chi import chi1_closed, chi1_integral, chi1_integrand, chi2, chi_d
from .conjectures import CONJECTURES, ConjectureEntry, ConjectureTable
from .gamma import log_gamma, log_gamma_array, pochhammer, rgamma
from .hypergeom import HypergeometricSpec, hyper_pfq
from .polylog import li2
from .quadrature import QuadratureRule, composite, gauss_legendre, triangle_rule
from .sepprob import (
    q_induced,
    sep_prob_dunkl,
    sep_prob_dunkl_exact,
    sep_prob_from_chi,
    sep_prob_induced,
    sep_prob_series,
    series_term,
    triangle_denominator,
)

__all__ = [
    "BallVolume", "CONJECTURES", "ConjectureEntry", "ConjectureTable", "HypergeometricSpec",
    "PiMonomial", "QUOTED_CONSTANTS", "QuadratureRule", "ball_volume_exact", "ball_volume_formula",
    "chi1_closed", "chi1_integral", "chi1_integrand", "chi2", "chi_d", "composite", "gauss_legendre",
    "hyper_pfq", "li2", "log_gamma", "log_gamma_array", "pochhammer", "q_induced", "rgamma",
    "sep_prob_dunkl", "sep_prob_dunkl_exact", "sep_prob_from_chi", "sep_prob_induced",
    "sep_prob_series", "series_term", "triangle_denominator", "triangle_rule",
]
