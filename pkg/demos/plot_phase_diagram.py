"""
Globule and coil
================

Scan the coupling across criticality.  In the bound regime the radius
saturates at a value set by the ground state; on the diffusive side it keeps
growing like ``sqrt(t)``.  The product ``(beta - beta_cr) sqrt(t)`` decides
which behaviour is seen.
"""

import numpy as np

from polyradius import BETA_CR, phase_scan

betas = BETA_CR + np.array([-0.2, -0.1, 0.0, 0.1, 0.2, 0.4])
ts = np.geomspace(10, 1e4, 4)
scan = phase_scan(betas, ts)

print(f"{'beta-beta_cr':>12}" + "".join(f"{t:>12g}" for t in ts))
for i, b in enumerate(betas):
    row = scan.estimates[i * len(ts):(i + 1) * len(ts)]
    print(f"{b - BETA_CR:12.2f}" + "".join(f"{e.radius:12.4f}" for e in row))

# normalized radii, r (beta - beta_cr) when bound and r / sqrt(t) when diffusive
for regime, (lo, hi) in sorted(scan.scaling_constants.items()):
    print(f"{regime}: {lo:.4f} .. {hi:.4f}")
