"""
Deforming the operator-norm unit ball
=====================================

Matrices drawn uniformly in a box are kept when their operator norm is below
one.  Scaling the entries above the diagonal by eps and those below by 1/eps
pushes some of them out of the ball; the surviving fraction as a function of
eps mirrors the real separability function.
"""

import numpy as np

from sepscope import ballmc
from sepscope.specfun import chi1_closed

# %%
# 2x2 real matrices.  Any box containing [-1, 1] gives the same survivors in
# distribution, so the default L = 10 only costs acceptance rate; L = 1 is
# much faster.
curve = ballmc.ball_chi_curve(2, "real", half_width=1.0, num_samples=500_000, seed=0)
print(f"{curve.trials} survivors")
for eps in (0.1, 0.3, 0.5, 0.7, 0.9):
    i = int(np.argmin(np.abs(curve.eps_grid - eps)))
    print(f"eps {eps:.1f}: Monte Carlo {curve.probability[i]:.4f}  closed form {chi1_closed(eps):.4f}")

# %%
# The 3x3 analogue with all three off-diagonal pairs deformed together, for
# real and complex entries.
grid = np.round(np.arange(1, 11) / 10, 1)
real3 = ballmc.ball_chi_curve(3, "real", 1.0, 300_000, grid, seed=1)
cplx3 = ballmc.ball_chi_curve(3, "complex", 0.5, 100_000, grid, seed=2)
print(np.round(real3.probability, 3))
print(np.round(cplx3.probability, 3))

# %%
# Volume of the 2x2 real unit ball from the survivor rate on [-1, 1]^4.
rep = ballmc.volume_report(2, 2_000_000, seed=3)
print("\n".join(rep.lines()))
