"""Radius of a mean-field polymer near its globule-coil transition.

The model is Brownian motion in R^3 reweighted by ``exp(beta * time spent in
the unit ball)``.  The package computes the spectral data of the associated
operator, inverts the radial resolvent along a rotated Bromwich contour to
get the end-to-end moments, and checks the result against Monte Carlo and a
radial PDE solver.
"""
from .errors import PolymerError
from .inversion import (ContourSpec, MomentSet, invert_density, make_contour, moments_direct,
                        moments_residue_split)
from .oracles import McConfig, PdeConfig, mc_radius, pde_radius
from .radius import (PhaseScan, RadiusEstimate, Regime, classify_regime, phase_scan, radius,
                     stokes_einstein)
from .resolvent import matching_coefficients, resolvent_moment, resolvent_u
from .spectral import (BETA_CR, Coupling, GroundState, SpectralPoint, critical_coupling,
                       dispersion, dispersion_dbeta, dispersion_dk, ground_state)

__version__ = "0.1.0"
