"""Laplace inversion along the rotated Bromwich contour.

The vertical line ``Re lambda = a`` is cut at ``lambda = a`` and each half is
turned by pi/4 towards the left half-plane, giving two rays
``lambda = a + s exp(+-3 i pi / 4)``, ``s >= 0``.  On these rays ``exp(t lambda)``
decays like ``exp(-t s / sqrt 2)``, so the integral is truncated once the
factor has fallen by 1e-18 relative to the vertex.

Moments are inverted directly in the lambda domain:

    p_nu(t) = 1/(2 pi i) int_Gamma exp(t lambda) U_nu(lambda) dlambda.

Above criticality the pole at the ground-state eigenvalue can be taken out
explicitly, leaving a background integral on Gamma(1/(16 t)).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import InvalidParams, PoleOnContour, WrongRegime
from .resolvent import _numerator, moment_numerator, unit_gauss_legendre
from .spectral import BETA_CR, CouplingLike, GroundState, _beta, dispersion, ground_state

RAY_ANGLE = 3.0 * math.pi / 4.0
NODES_PER_PANEL = 16
DEFAULT_NODES = 128
DECAY_DIGITS = 18
POLE_CLEARANCE = 1e-10


class Method(enum.Enum):
    direct_contour = "direct_contour"
    residue_plus_background = "residue_plus_background"


@dataclass(frozen=True)
class ContourSpec:
    """Truncated, discretized rotated contour through ``vertex``.

    ``nodes`` and ``weights`` cover both rays; ``weights`` already include
    the ray orientation and the ``1/(2 pi i)`` factor, so that
    ``sum(weights * F(nodes))`` approximates ``1/(2 pi i) int F``.
    """

    vertex: float
    nodes_per_ray: int
    truncation_length: float
    ray_angle: float = RAY_ANGLE
    nodes: np.ndarray = field(repr=False, default=None)
    weights: np.ndarray = field(repr=False, default=None)


@dataclass(frozen=True)
class MomentSet:
    t: float
    p0: float
    p2: float
    imag_residual: float
    method: Method
    # residue contributions (v1 for nu = 0, 2) when the pole was split off
    pole_part: Optional[tuple] = None


def _panel_breaks(first: float, total: float, n_panels: int) -> np.ndarray:
    if n_panels == 1 or first * n_panels >= total:
        return np.linspace(0.0, total, n_panels + 1)
    q = (total / first) ** (1.0 / (n_panels - 1))
    return np.concatenate(([0.0], first * q ** np.arange(n_panels)))


def make_contour(a: float, t: float, n: int = DEFAULT_NODES) -> ContourSpec:
    """Build the discretized contour ``Gamma(a)`` for inversion at time ``t``.

    Each ray is covered by ``n // 16`` Gauss-Legendre panels of 16 nodes whose
    lengths grow geometrically away from the vertex.  The first panel has
    length ``a/2``, the scale on which the integrand varies near the vertex
    (the branch point ``lambda = 0`` is at distance ``a`` from it).
    """
    if not (a > 0.0) or not (t > 0.0):
        raise InvalidParams(f"contour needs a > 0 and t > 0, got a={a}, t={t}")
    if n < NODES_PER_PANEL or n % NODES_PER_PANEL:
        raise InvalidParams(f"nodes per ray must be a positive multiple of {NODES_PER_PANEL}")
    s_max = DECAY_DIGITS * math.log(10.0) * math.sqrt(2.0) / t
    breaks = _panel_breaks(0.5 * a, s_max, n // NODES_PER_PANEL)
    x, w = unit_gauss_legendre(NODES_PER_PANEL)
    h = np.diff(breaks)
    s = (breaks[:-1, None] + h[:, None] * x).ravel()
    ws = (h[:, None] * w).ravel()

    e_up = np.exp(1j * RAY_ANGLE)
    upper = a + s * e_up
    nodes = np.concatenate((upper, upper.conj()))
    # upper ray runs outwards, lower ray inwards
    weights = np.concatenate((ws * e_up, -ws * e_up.conj())) / (2j * math.pi)
    return ContourSpec(a, n, s_max, RAY_ANGLE, nodes, weights)


def default_vertex(c: CouplingLike, t: float, gs: Optional[GroundState] = None) -> float:
    """``lambda0 + 4/t`` above criticality, ``4/t`` otherwise."""
    beta = _beta(c)
    if beta > BETA_CR:
        gs = gs or ground_state(beta)
        return gs.lambda0 + 4.0 / t
    return 4.0 / t


def _ground_state_if_any(beta: float) -> Optional[GroundState]:
    return ground_state(beta) if beta > BETA_CR else None


def _check_clearance(spec: ContourSpec, gs: Optional[GroundState]):
    if gs is None or gs.lambda0 is None:
        return
    if np.min(np.abs(spec.nodes - gs.lambda0)) < POLE_CLEARANCE:
        raise PoleOnContour(f"contour node within {POLE_CLEARANCE} of lambda0 = {gs.lambda0}")


def _contour_sum(values: np.ndarray, spec: ContourSpec, t: float) -> complex:
    terms = spec.weights * np.exp(t * spec.nodes) * values
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def invert_density(c: CouplingLike, t: float, r: float, spec: Optional[ContourSpec] = None,
                   return_imag: bool = False):
    """Density ``p_beta(t, 0, x)`` at ``|x| = r`` by contour inversion of ``u``.

    The contour must pass to the right of the eigenvalue, if there is one.
    With ``return_imag`` the absolute imaginary part of the raw sum is also
    returned as a quadrature diagnostic.
    """
    beta = _beta(c)
    gs = _ground_state_if_any(beta)
    if spec is None:
        spec = make_contour(default_vertex(beta, t, gs), t)
    _check_clearance(spec, gs)
    if gs is not None and spec.vertex <= gs.lambda0:
        raise PoleOnContour("contour vertex must lie right of lambda0")
    lam = spec.nodes
    s = np.sqrt(2.0 * lam)
    d = dispersion(beta, s / math.sqrt(2.0))
    if r <= 1.0:
        num = _numerator(beta, lam, s, r - 1.0)
    else:
        num = np.exp(-s * (r - 1.0))
    u = num / (2.0 * math.pi * r * d)
    total = _contour_sum(u, spec, t)
    if return_imag:
        return total.real, abs(total.imag)
    return total.real


def _moments_on(beta: float, spec: ContourSpec, t: float):
    lam = spec.nodes
    d = dispersion(beta, np.sqrt(lam))
    out = []
    for nu in (0, 2):
        out.append(_contour_sum(moment_numerator(beta, lam, nu) / d, spec, t))
    return out


def moments_direct(c: CouplingLike, t: float, spec: Optional[ContourSpec] = None,
                   n: int = DEFAULT_NODES) -> MomentSet:
    """Zeroth and second moments from a single contour right of all poles."""
    beta = _beta(c)
    if not (t > 0.0):
        raise InvalidParams(f"t must be positive, got {t}")
    gs = _ground_state_if_any(beta)
    if spec is None:
        spec = make_contour(default_vertex(beta, t, gs), t, n)
    _check_clearance(spec, gs)
    if gs is not None and spec.vertex <= gs.lambda0:
        raise PoleOnContour("contour vertex must lie right of lambda0")
    m0, m2 = _moments_on(beta, spec, t)
    imag = max(abs(m0.imag), abs(m2.imag))
    return MomentSet(t, m0.real, m2.real, imag, Method.direct_contour)


def moment_residues(c: CouplingLike, gs: Optional[GroundState] = None):
    """Residues of ``U_0`` and ``U_2`` at ``lambda0``: ``M_nu(lambda0) / d'(lambda0)``."""
    beta = _beta(c)
    gs = gs or ground_state(beta)
    if gs.lambda0 is None or gs.d_lambda_deriv is None:
        raise WrongRegime("no positive eigenvalue at this coupling")
    return tuple(complex(moment_numerator(beta, gs.lambda0, nu)).real / gs.d_lambda_deriv
                 for nu in (0, 2))


def moments_residue_split(c: CouplingLike, t: float, n: int = DEFAULT_NODES) -> MomentSet:
    """Pole contribution at ``lambda0`` plus the background on ``Gamma(1/(16 t))``.

    Valid when ``(beta - beta_cr) sqrt(t) >= 1``.
    """
    beta = _beta(c)
    if not (t > 0.0) or (beta - BETA_CR) * math.sqrt(t) < 1.0:
        raise WrongRegime("residue split needs (beta - beta_cr) sqrt(t) >= 1")
    gs = ground_state(beta)
    spec = make_contour(1.0 / (16.0 * t), t, n)
    _check_clearance(spec, gs)
    b0, b2 = _moments_on(beta, spec, t)
    res0, res2 = moment_residues(beta, gs)
    growth = math.exp(gs.lambda0 * t)
    v0, v2 = growth * res0, growth * res2
    p0 = float(v0 + b0.real)
    p2 = float(v2 + b2.real)
    imag = max(abs(b0.imag), abs(b2.imag))
    return MomentSet(t, p0, p2, imag, Method.residue_plus_background, pole_part=(float(v0), float(v2)))

