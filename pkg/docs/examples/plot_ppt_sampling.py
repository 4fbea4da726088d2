"""
Hilbert-Schmidt random states and the PPT test
==============================================

Draw density matrices from the Hilbert-Schmidt measure, apply the partial
transpose and estimate the probability of a positive partial transpose.
"""

import numpy as np

from sepscope.experiments.config import ExperimentConfig
from sepscope.experiments.studies import ppt_probability
from sepscope.matcore import partial_transpose
from sepscope.statesampler import RngStream, hs_random_batch, hs_random_density, is_ppt

# %%
# A single two-qubit state.  Every random draw is tied to a
# (master seed, stream index) pair, so it can be reproduced exactly.
rho = hs_random_density(4, "complex", 2, 2, RngStream(42, 0))
print(np.round(rho.mat, 3))
print("eigenvalues of the partial transpose:", np.linalg.eigvalsh(partial_transpose(rho.mat, 2, 2)))

# %%
# Batches are stacks of shape (size, n, n).  The partial transpose and the
# PPT test act on the whole stack.
batch = hs_random_batch(4, "real", RngStream(42, 1), 50_000)
print("two-rebit PPT fraction:", is_ppt(batch, 2, 2).mean(), "(29/64 =", 29 / 64, ")")

# %%
# ``ppt_probability`` splits the budget into chunks, each with its own
# random stream, and reports a z-score against the conjectured value.
for system in ("two-qubit", "rebit-retrit", "qubit-qutrit"):
    est = ppt_probability(ExperimentConfig(system=system, samples=200_000, seed=1))
    print(f"{system:>13}: {est.p:.5f} +/- {est.stderr:.5f}  target {est.target}  z = {est.z:+.2f}")
