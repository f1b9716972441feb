"""
Three routes to the same radius
===============================

The contour inversion is checked against a radial Crank-Nicolson solve and
a Feynman-Kac Monte Carlo estimate.  The path count is kept small here so
the script runs in a few seconds.
"""

from polyradius import BETA_CR, McConfig, mc_radius, pde_radius, radius

t = 10.0
cfg = McConfig(n_paths=20_000, dt=0.01, seed=1)
for beta in (0.0, BETA_CR - 0.1, BETA_CR + 0.3):
    lap = radius(beta, t).radius
    pde = pde_radius(beta, t).radius
    mc = mc_radius(beta, t, cfg)
    print(f"beta = {beta:.4f}: laplace {lap:.6f}  pde {pde:.6f}  "
          f"mc {mc.radius:.3f} +- {mc.stderr:.3f}")
