"""
Noise removes the uniqueness ambiguity
======================================

In the three-qubit "unproven theorem" circuit every diagonal state of the
time-travelling qubit is self-consistent. The maximum-entropy rule picks I/2.
Any relaxation (A > 0) leaves a single fixed point: the Gibbs state.
"""

import numpy as np

from ctcsim import DaviesParams, unproven_solve

np.set_printoptions(precision=4, suppress=True)

# %%
res = unproven_solve()
sol = res.solution_set
print("family dimension:", sol.dimension, "direction:", sol.null_directions[0], "interval:", sol.feasible_interval)
for s in (-1.0, 0.0, 1.0):
    print(f"  s = {s:+.1f}:", np.diag(sol.member(s)).real)
print("max-entropy choice:", np.diag(res.tau).real)

# %%
for p in (0.0, 0.1, 0.3, 0.5):
    noisy = unproven_solve(DaviesParams(p=p, A=1.0, G=1.0, t=1.0))
    print(f"p = {p}: dimension {noisy.solution_set.dimension}, tau = {np.diag(noisy.tau).real}")

# %%
# Pure dephasing keeps the whole family.
print("A=0:", unproven_solve(DaviesParams(p=0.3, A=0.0, G=1.0, t=1.0)).solution_set.dimension)
