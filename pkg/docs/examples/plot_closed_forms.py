"""
Closed-form separability probabilities
======================================

The two-rebit, two-qubit and two-quaterbit Hilbert-Schmidt separability
probabilities have several independent closed forms.  Here we evaluate each
of them and check that they land on the same rationals.
"""

from fractions import Fraction

import numpy as np

from sepscope.specfun import (
    CONJECTURES,
    chi1_closed,
    chi1_integral,
    chi2,
    chi_d,
    sep_prob_dunkl_exact,
    sep_prob_from_chi,
    sep_prob_induced,
    sep_prob_series,
)

# %%
# The Dyson index d is 1 for real, 2 for complex and 4 for quaternionic
# entries.  The series form takes alpha = d / 2.
targets = {1: Fraction(29, 64), 2: Fraction(8, 33), 4: Fraction(26, 323)}
for d, target in targets.items():
    print(f"d = {d}: target {target} = {float(target):.12f}")
    print(f"   series          {sep_prob_series(d / 2):.12f}")
    print(f"   induced         {sep_prob_induced(d):.12f}")
    print(f"   integral ratio  {sep_prob_from_chi(d):.12f}")
    if d % 2 == 0:
        # the double-sum form is exact rational arithmetic
        print(f"   double sum      {sep_prob_dunkl_exact(d)}")

# %%
# The separability function itself: the dilogarithm form, plain quadrature
# and the regularized 3F2 form agree to rounding error.
eps = np.linspace(0.05, 0.95, 7)
print(np.column_stack([eps, chi1_closed(eps), chi1_integral(eps), chi_d(eps, 1)]))

# the complex case reduces to a polynomial
print(np.max(np.abs(chi_d(eps, 2) - chi2(eps))))

# %%
# For the real case the identity function is a fair first guess, but not a
# tight one: the largest gap is a little above 0.03.
grid = np.linspace(0.01, 0.99, 99)
gap = chi1_closed(grid) - grid
print(f"max |chi_1(eps) - eps| = {np.abs(gap).max():.4f} at eps = {grid[np.abs(gap).argmax()]:.2f}")

# %%
# Conjectured values for the larger systems, stored exactly.
for entry in CONJECTURES:
    print(f"{entry.label:>14} {entry.field:>7} {entry.dims}  {entry.value}")
