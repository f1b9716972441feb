"""
Ground state near the critical coupling
=======================================

Below the critical coupling the well holds no bound state.  Above it a
single eigenvalue appears and grows quadratically in the distance to
criticality.
"""

import numpy as np

from polyradius import BETA_CR, ground_state

print(f"beta_cr = {BETA_CR:.15f}  (pi^2/8 = {np.pi ** 2 / 8:.15f})")

# gamma is analytic through beta_cr; its square is the eigenvalue once positive
print(f"{'delta':>8} {'gamma':>12} {'gamma/delta':>12} {'lambda0/delta^2':>16}")
for delta in (-0.2, -0.05, -0.01, 0.01, 0.05, 0.2, 0.5):
    gs = ground_state(BETA_CR + delta)
    ratio = "" if gs.lambda0 is None else f"{gs.lambda0 / delta ** 2:16.5f}"
    print(f"{delta:8.3f} {gs.gamma:12.6f} {gs.gamma / delta:12.5f} {ratio}")
