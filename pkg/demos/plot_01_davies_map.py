"""
Thermal noise on a single qubit
===============================

A Davies map relaxes populations toward the Gibbs state at rate ``A`` and
damps coherences at rate ``G``. Complete positivity needs ``G >= A/2``.
"""

import numpy as np

from ctcsim import DaviesParams, davies_apply, davies_superoperator, gibbs_state, is_cptp, named_state, trace_distance

np.set_printoptions(precision=4, suppress=True)

# %%
# Start from |+> and watch it thermalize at p = 1/4.
rho = named_state("plus")
for t in (0.0, 0.5, 1.0, 2.0, 5.0, 20.0):
    d = DaviesParams(p=0.25, A=1.0, G=1.0, t=t)
    out = davies_apply(d, rho)
    print(f"t = {t:5.1f}   distance to Gibbs = {trace_distance(out, gibbs_state(0.25)):.4f}")

# %%
# With A = 0 only the coherences decay: populations stay at 1/2.
print(davies_apply(DaviesParams(p=0.25, A=0.0, G=1.0, t=3.0), rho).real)

# %%
# The Choi test certifies the boundary G = A/2 and rejects G = A/4.
for G in (0.5, 0.25):
    d = DaviesParams.unchecked(p=0.1, A=1.0, G=G, t=1.0)
    rep = is_cptp(davies_superoperator(d))
    print(f"G = {G}: {rep.status}, min Choi eigenvalue {rep.min_choi_eigenvalue:+.4f}")
