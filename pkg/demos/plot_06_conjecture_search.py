"""
Can thermal noise help?
=======================

Random search over Haar-random input pairs and Davies parameters, comparing
output distances with and without energy relaxation.
"""

from ctcsim.analysis import conjecture_harness

# %%
rep = conjecture_harness(200, seed=42)
print(f"trials {rep.trials}, violations {rep.violations}, max excess {rep.max_violation:.4f}")
print(f"Davies contractivity margin {rep.contractivity_max_excess:.2e}")

# %%
# A few of the trials where relaxation increased the output distance.
for v in rep.violating_pairs[:3]:
    print(dict(v))
