"""
Distinguishing non-orthogonal states with a Deutsch CTC
=======================================================

The circuit SWAP followed by a controlled Hadamard maps the non-orthogonal
inputs |0> and |-> to the orthogonal outputs |0> and |1>. Thermal noise on
the chronology-violating qubit erodes this.
"""

import math

import numpy as np

from ctcsim import DaviesParams, fig1_solve, named_state, trace_distance
from ctcsim.analysis import q_minus_closed, q_zero_closed, r_numeric, threshold_crossing

np.set_printoptions(precision=4, suppress=True)

# %%
# Noiseless outputs.
for label in ("zero", "minus"):
    res = fig1_solve(label)
    print(label, "->", np.round(res.rho_f.real, 12).tolist(), res.selection)
print("input distance:", trace_distance(named_state("0"), named_state("minus")))

# %%
# Noise pushes each output away from its ideal target (Q) and the two
# outputs toward each other (R).
for t in (0.0, 0.25, 0.5, 1.0, 2.0):
    d = DaviesParams(p=0.25, A=1.0, G=1.0, t=t)
    print(f"t={t:4.2f}  Q-={q_minus_closed(d):.4f}  Q0={q_zero_closed(d):.4f}  R={r_numeric(d):.4f}")

# %%
# Once R drops below sqrt(2)/2 the circuit does worse than doing nothing.
t_star = threshold_crossing(DaviesParams(p=0.25, A=2.0, G=1.0))
print(f"A=2, G=1: R falls to sqrt(2)/2 = {math.sqrt(2)/2:.4f} at t = {t_star:.4f}")

# %%
# Pure dephasing (A = 0) leaves the outputs perfectly distinguishable.
print("A=0:", r_numeric(DaviesParams(p=0.4, A=0.0, G=3.0, t=4.0)))
