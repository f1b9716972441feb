"""Polymer radius ``r(beta, t) = sqrt(E |omega(t)|^2)`` and regime bookkeeping."""
from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import OutsideWindow, ZeroBeta
from .inversion import DEFAULT_NODES, MomentSet, moments_direct, moments_residue_split
from .spectral import BETA_CR, EPSILON, CouplingLike, _beta

#: (beta - beta_cr) sqrt(t) at or below which a point is diffusive
DIFFUSIVE_MAX = 0.5
#: (beta - beta_cr) sqrt(t) at or above which a point is in the bound regime
BOUND_MIN = 1.5


class Regime(enum.Enum):
    supercritical_bound = "supercritical_bound"
    crossover = "crossover"
    diffusive = "diffusive"


class RadiusMethod(enum.Enum):
    laplace = "laplace"
    monte_carlo = "monte_carlo"
    pde = "pde"


@dataclass(frozen=True)
class RadiusEstimate:
    beta: float
    t: float
    radius: float
    regime: Regime
    method: RadiusMethod
    stderr: float = 0.0
    imag_residual: float = 0.0
    moments: Optional[MomentSet] = field(default=None, repr=False)

    @property
    def product(self) -> float:
        return (self.beta - BETA_CR) * math.sqrt(self.t)


@dataclass
class PhaseScan:
    grid: List[Tuple[float, float]]
    estimates: List[RadiusEstimate]
    # regime name -> (c_minus, c_plus) of the normalized radius
    scaling_constants: Dict[str, Tuple[float, float]]


def criticality_product(c: CouplingLike, t: float) -> float:
    return (_beta(c) - BETA_CR) * math.sqrt(t)


def classify_regime(c: CouplingLike, t: float) -> Regime:
    """Label ``(beta, t)`` by ``(beta - beta_cr) sqrt(t)``.

    Bound at or above 1.5, diffusive at or below 0.5, crossover in between.
    """
    x = criticality_product(c, t)
    if x >= BOUND_MIN:
        return Regime.supercritical_bound
    if x <= DIFFUSIVE_MAX:
        return Regime.diffusive
    return Regime.crossover


def laplace_moments(c: CouplingLike, t: float, n: int = DEFAULT_NODES) -> MomentSet:
    """Moments by residue split when ``(beta - beta_cr) sqrt(t) >= 1``, else one contour."""
    beta = _beta(c)
    if beta - BETA_CR > EPSILON * (1.0 + 1e-12):
        raise OutsideWindow(f"beta = {beta} is above the near-critical window")
    if criticality_product(beta, t) >= 1.0:
        return moments_residue_split(beta, t, n)
    return moments_direct(beta, t, n=n)


def radius(c: CouplingLike, t: float, n: int = DEFAULT_NODES) -> RadiusEstimate:
    """Radius from the ratio of the second and zeroth moments of the density.

    Examples
    --------
    >>> round(radius(1e-12, 12.0).radius, 6)
    6.0
    """
    beta = _beta(c)
    m = laplace_moments(beta, t, n)
    return RadiusEstimate(beta, float(t), math.sqrt(m.p2 / m.p0), classify_regime(beta, t),
                          RadiusMethod.laplace, 0.0, m.imag_residual, m)


def stokes_einstein(est: RadiusEstimate, media_constant: float = 1.0) -> float:
    """Diffusion coefficient ``c / (beta r)`` of a ball of radius ``r``."""
    if est.beta == 0.0:
        raise ZeroBeta("Stokes-Einstein relation is undefined at beta = 0")
    return media_constant / (est.beta * est.radius)


def normalized_radius(est: RadiusEstimate) -> Optional[float]:
    """``r (beta - beta_cr)`` in the bound regime, ``r / sqrt(t)`` when diffusive."""
    if est.regime is Regime.supercritical_bound:
        return est.radius * (est.beta - BETA_CR)
    if est.regime is Regime.diffusive:
        return est.radius / math.sqrt(est.t)
    return None


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("THREADS", "1")))
    except ValueError:
        return 1


def phase_scan(betas: Sequence[float], ts: Sequence[float], n: int = DEFAULT_NODES,
               threads: Optional[int] = None) -> PhaseScan:
    """Radius on the product grid ``betas x ts`` with measured scaling constants.

    Grid points are independent; ``threads`` (default: ``THREADS`` env var)
    controls the worker count.  Output order follows the grid regardless.
    """
    grid = [(float(b), float(t)) for b in betas for t in ts]
    workers = threads or _threads()
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            estimates = list(pool.map(lambda bt: radius(bt[0], bt[1], n), grid))
    else:
        estimates = [radius(b, t, n) for b, t in grid]

    buckets: Dict[str, List[float]] = {}
    for est in estimates:
        value = normalized_radius(est)
        if value is not None:
            buckets.setdefault(est.regime.value, []).append(value)
    constants = {k: (min(v), max(v)) for k, v in buckets.items()}
    return PhaseScan(grid, estimates, constants)
