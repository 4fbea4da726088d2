"""
PPT probability against the Bloch radius
========================================

Bin states by the Bloch radius of their qubit marginal and test whether the
PPT probability is flat across bins.
"""

from sepscope.blocks import BLOCH_RADIUS_DEFINITION
from sepscope.experiments.config import ExperimentConfig
from sepscope.experiments.studies import bloch_constancy

print(BLOCH_RADIUS_DEFINITION)

# %%
# Bins with fewer than 100 states are left out of the chi-square test.
for system in ("two-qubit", "qubit-qutrit"):
    rep = bloch_constancy(ExperimentConfig(system=system, samples=200_000, seed=8))
    print(f"{system}: pooled {rep.pooled:.4f}, chi2 = {rep.chi2:.1f} on {rep.dof} dof, "
          f"p = {rep.p_value:.3f}, excluded bins {rep.excluded_bins}")
    for row in rep.rows():
        print(f"   r in [{row['lo']:.2f}, {row['hi']:.2f}): {row['trials']:>7} states, p = {row['p']:.4f}")
