"""
Singular-value ratios of the block matrix V
===========================================

For a 6x6 state split into two 3x3 diagonal blocks D1 and D2 the matrix
V = D2^(1/2) D1^(-1/2) carries three singular-value ratios.  We look at how
they are distributed among PPT and non-PPT states and how the PPT
probability varies along each ratio.
"""

import numpy as np

from sepscope import blocks
from sepscope.experiments.config import ExperimentConfig
from sepscope.experiments.studies import balanced_scatter, sep_vs_ratio_curve
from sepscope.statesampler import RngStream, hs_random_batch

# %%
# Blocks and ratios of a few states.
rho = hs_random_batch(6, "real", RngStream(3), 5)
sv, ok = blocks.block_singular_values(rho, 3)
print(np.round(blocks.ratios_from_singular_values(sv).as_array(), 4))

# %%
# For 2x2 blocks the ratio sigma2/sigma1 has a closed form in terms of
# determinants and a trace.
rho4 = hs_random_batch(4, "complex", RngStream(4), 5)
d1, d2 = blocks.diag_blocks(rho4, 2)
sv4, _ = blocks.block_singular_values(rho4, 2)
print(blocks.epsilon_la(d1, d2) - sv4[:, 1] / sv4[:, 0])

# %%
# Class-balanced sample: draw until both classes hold the same number of
# points, then summarise each class.
res = balanced_scatter(ExperimentConfig(system="rebit-retrit", per_class=2_000, seed=5))
for cls, m in res.summary.means.items():
    print(cls, np.round(m, 4))
    print(np.round(res.summary.correlations[cls], 3))
print("draws:", res.draws)

# %%
# PPT probability binned along each ratio.  The bin-weighted average of any
# of these curves equals the overall PPT fraction exactly.
cs = sep_vs_ratio_curve(ExperimentConfig(system="rebit-retrit", samples=100_000, bins=20))
for name, curve in cs.curves.items():
    print(name, "Spearman", round(curve.spearman(), 3), curve.weighted_average() == cs.overall)
