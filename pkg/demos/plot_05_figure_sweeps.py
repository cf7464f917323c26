"""
Regenerating the distinguishability curves
==========================================

Sweeps over (p, A, G, omega, t) written as CSV through the command-line
front end. Output goes to the working directory.
"""

from ctcsim.cli import main

# %%
# Q versus t for several relaxation rates at p = 1/4, G = 1.
main(["sweep", "--p", "0.25", "--A", "0.25,0.5,1,2", "--G", "1", "--t", "0:5:51", "--out", "q_vs_A.csv"])

# %%
# Q versus t for several temperatures at A = G = 1.
main(["sweep", "--p", "0,0.1,0.25,0.4,0.5", "--A", "1", "--G", "1", "--t", "0:5:51", "--out", "q_vs_p.csv"])

# %%
# R versus t at A = 2, G = 1; compare against the level sqrt(2)/2.
# The R_paper column holds the circulated closed form, R_discrepancy its error.
main(["sweep", "--p", "0.25", "--A", "2", "--G", "1", "--t", "0:3:61", "--out", "r_threshold.csv"])
