"""
Post-selected CTC with a noisy Bell pair
========================================

Teleportation with post-selection on the Bell outcome simulates a closed
timelike curve. The resource pair is exposed to thermal noise on one qubit.
"""

import numpy as np

from ctcsim import DaviesParams, named_state, pctc_output, trace_distance
from ctcsim.pctc import pctc_output_via_l, pctc_unnormalized

np.set_printoptions(precision=4, suppress=True)

# %%
clean = DaviesParams(p=0.0, A=0.0, G=0.0)
for label in ("1", "plus"):
    res = pctc_output(named_state(label), clean)
    print(label, "->", np.diag(res.rho_f).real, "post-selection weight", res.postselection_weight)

# %%
# Relaxation mixes the two outputs; dephasing alone does not.
for A in (0.0, 0.5, 1.0, 2.0):
    d = DaviesParams(p=0.3, A=A, G=max(A / 2, 1.0), t=0.8)
    a = pctc_output(named_state("1"), d).rho_f
    b = pctc_output(named_state("plus"), d).rho_f
    print(f"A = {A}: output distance {trace_distance(a, b):.4f}")

# %%
# Unnormalized output for |1>, and the same result from the six L-terms.
d = DaviesParams(p=0.3, A=1.0, G=1.0, t=0.8)
print(pctc_unnormalized(named_state("1"), d).real)
print(np.abs(pctc_output(named_state("1"), d).rho_f - pctc_output_via_l(named_state("1"), d).rho_f).max())
