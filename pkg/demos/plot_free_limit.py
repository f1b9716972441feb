"""
Contour inversion against the heat kernel
=========================================

With the coupling switched off the density is a Gaussian and the radius is
``sqrt(3 t)``.  Both come out of the contour inversion essentially to
machine precision.
"""

import numpy as np

from polyradius import invert_density, radius

t = 4.0
for r in (0.5, 1.0, 2.0, 4.0):
    exact = (2 * np.pi * t) ** -1.5 * np.exp(-r * r / (2 * t))
    got = invert_density(1e-12, t, r)
    print(f"r = {r:3.1f}: contour {got:.15e}  exact {exact:.15e}  rel {got / exact - 1:+.1e}")

# the radius grows like sqrt(3 t)
for t in (1.0, 10.0, 100.0, 1000.0):
    est = radius(1e-12, t)
    print(f"t = {t:6g}: r = {est.radius:.12f}, sqrt(3t) = {np.sqrt(3 * t):.12f}")
