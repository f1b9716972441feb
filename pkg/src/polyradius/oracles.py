"""Independent estimates of the polymer radius.

Two routes that share nothing with the contour machinery:

* Feynman-Kac Monte Carlo: Brownian paths reweighted by
  ``exp(beta * occupation time of the unit ball)``.
* A Crank-Nicolson solve of the radial equation
  ``p_t = 1/2 (p_rr + 2 p_r / r) + beta v(r) p`` started at a small time
  ``t0`` from the free heat kernel times ``exp(beta v t0)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.linalg import solve_banded

from .errors import BoundaryLeak, DegenerateWeights, InvalidParams, WorkBudgetExceeded
from .radius import RadiusEstimate, RadiusMethod, classify_regime
from .spectral import CouplingLike, _beta

MC_MAX_T = 50.0
PDE_MAX_T = 200.0
MIN_ESS = 100.0
LEAK_TOL = 1e-12


# ---------------------------------------------------------------- Monte Carlo


@dataclass(frozen=True)
class McConfig:
    """Monte Carlo settings.

    Paths are simulated in fixed-size blocks; block ``b`` draws from a Philox
    stream keyed by ``(seed, b)``, so the result does not depend on the order
    in which blocks are run.
    """

    n_paths: int = 200_000
    dt: float = 1e-3
    seed: int = 0
    antithetic: bool = False
    work_budget: float = 4e9
    block_size: int = 16_384

    def __post_init__(self):
        if self.n_paths < 1000:
            raise InvalidParams("n_paths must be at least 1000")
        if not (self.dt > 0.0):
            raise InvalidParams("dt must be positive")
        if self.seed < 0:
            raise InvalidParams("seed must be non-negative")
        if self.antithetic and (self.n_paths % 2 or self.block_size % 2):
            raise InvalidParams("antithetic sampling needs even n_paths and block_size")


def block_generator(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, block])))


def _simulate_block(rng, m, steps, dt, antithetic):
    pos = np.zeros((m, 3))
    occupation = np.zeros(m, dtype=np.int64)
    half = m // 2
    sq = math.sqrt(dt)
    for _ in range(steps):
        occupation += np.einsum("ij,ij->i", pos, pos) <= 1.0
        if antithetic:
            z = rng.standard_normal((half, 3))
            pos[:half] += sq * z
            pos[half:] -= sq * z
        else:
            pos += sq * rng.standard_normal((m, 3))
    return occupation, np.einsum("ij,ij->i", pos, pos)


def mc_sample(c: CouplingLike, t: float, cfg: McConfig = McConfig()):
    """Return per-path log-weights and squared end-to-end distances."""
    beta = _beta(c)
    if not (0.0 < t <= MC_MAX_T):
        raise WorkBudgetExceeded(f"Monte Carlo supports 0 < t <= {MC_MAX_T}, got {t}")
    if cfg.dt > t / 100.0:
        raise InvalidParams(f"dt = {cfg.dt} exceeds t/100 = {t / 100.0}")
    steps = int(round(t / cfg.dt))
    if cfg.n_paths * steps > cfg.work_budget:
        raise WorkBudgetExceeded(f"{cfg.n_paths} paths x {steps} steps exceeds the work budget")
    dt = t / steps

    log_w, x2 = [], []
    n_blocks = -(-cfg.n_paths // cfg.block_size)
    for b in range(n_blocks):
        m = min(cfg.block_size, cfg.n_paths - b * cfg.block_size)
        occ, r2 = _simulate_block(block_generator(cfg.seed, b), m, steps, dt, cfg.antithetic)
        log_w.append(beta * dt * occ)
        x2.append(r2)
    return np.concatenate(log_w), np.concatenate(x2)


def mc_radius(c: CouplingLike, t: float, cfg: McConfig = McConfig()) -> RadiusEstimate:
    """Self-normalized Feynman-Kac estimate of ``r(beta, t)``.

    The standard error comes from the delta method on the ratio
    ``sum(W X) / sum(W)``; antithetic pairs are combined before squaring.
    """
    beta = _beta(c)
    log_w, x2 = mc_sample(beta, t, cfg)
    w = np.exp(log_w - log_w.max())
    sw = math.fsum(w)
    ess = sw * sw / math.fsum(w * w)
    if ess < MIN_ESS:
        raise DegenerateWeights(f"effective sample size {ess:.1f} < {MIN_ESS}")
    r2 = math.fsum(w * x2) / sw
    y = w * (x2 - r2)
    if cfg.antithetic:
        # blocks are laid out as [z..., -z...]; pair path i with i + half
        pairs = []
        start = 0
        while start < y.size:
            m = min(cfg.block_size, y.size - start)
            blk = y[start:start + m]
            pairs.append(blk[: m // 2] + blk[m // 2:])
            start += m
        y = np.concatenate(pairs)
    se_r2 = math.sqrt(math.fsum(y * y)) / sw
    r = math.sqrt(r2)
    return RadiusEstimate(beta, float(t), r, classify_regime(beta, t), RadiusMethod.monte_carlo,
                          se_r2 / (2.0 * r))


# ----------------------------------------------------------------- radial PDE


@dataclass(frozen=True)
class PdeConfig:
    """Grid for the radial solver; ``None`` fields are filled from ``t``.

    Defaults: ``r_max = 8 sqrt(t) + 3`` rounded up to a multiple of the grid
    spacing 0.01, 1000 time steps, ``t0 = min(0.01, 0.01 t)``.
    """

    r_max: Optional[float] = None
    n_r: Optional[int] = None
    n_t: int = 1000
    t0: Optional[float] = None

    def resolve(self, t: float) -> "PdeConfig":
        r_max = self.r_max
        if r_max is None:
            r_max = math.ceil((8.0 * math.sqrt(t) + 3.0) * 100.0) / 100.0
        n_r = self.n_r if self.n_r is not None else int(math.ceil(r_max * 100.0))
        t0 = self.t0 if self.t0 is not None else min(0.01, 0.01 * t)
        cfg = PdeConfig(r_max, n_r, self.n_t, t0)
        if r_max < 6.0 * math.sqrt(t) + 3.0:
            raise InvalidParams(f"r_max = {r_max} < 6 sqrt(t) + 3")
        if n_r < 400:
            raise InvalidParams("n_r must be at least 400")
        if not (0.0 < t0 <= 0.01 * t * (1.0 + 1e-12)):
            raise InvalidParams(f"t0 = {t0} must lie in (0, 0.01 t]")
        if self.n_t < 1:
            raise InvalidParams("n_t must be positive")
        return cfg


@dataclass(frozen=True)
class RadialSolution:
    r: np.ndarray
    p: np.ndarray
    times: np.ndarray
    p0: np.ndarray
    p2: np.ndarray


def free_kernel(t: float, r):
    """Heat kernel of ``1/2 Laplacian`` in R^3 at distance ``r`` from the source."""
    r = np.asarray(r, dtype=float)
    return (2.0 * math.pi * t) ** -1.5 * np.exp(-r * r / (2.0 * t))


def _unit_ball(r: np.ndarray, h: float) -> np.ndarray:
    # fraction of the cell [r - h/2, r + h/2] inside the ball; the well's
    # radius sets beta_cr, so a half-cell shift is visible near criticality
    return np.clip((1.0 - r) / h + 0.5, 0.0, 1.0)


def solve_radial(c: CouplingLike, t: float, cfg: PdeConfig = PdeConfig()) -> RadialSolution:
    """Crank-Nicolson for ``phi = r p`` with ``phi(0) = phi(r_max) = 0``.

    Time levels are graded quadratically from ``t0`` so the first steps
    resolve the narrow initial kernel.  Moments ``4 pi int r^(nu+1) phi dr``
    are recorded at every level.
    """
    beta = _beta(c)
    if not (0.0 < t <= PDE_MAX_T):
        raise WorkBudgetExceeded(f"PDE solver supports 0 < t <= {PDE_MAX_T}, got {t}")
    cfg = cfg.resolve(t)
    h = cfg.r_max / cfg.n_r
    r = h * np.arange(1, cfg.n_r)
    pot = beta * _unit_ball(r, h)
    # weight accrued on [0, t0], to first order
    phi = r * free_kernel(cfg.t0, r) * np.exp(pot * cfg.t0)

    def moments(phi):
        return (4.0 * math.pi * h * math.fsum(r * phi),
                4.0 * math.pi * h * math.fsum(r ** 3 * phi))

    times = cfg.t0 + (t - cfg.t0) * (np.arange(cfg.n_t + 1) / cfg.n_t) ** 2
    p0 = np.empty(cfg.n_t + 1)
    p2 = np.empty(cfg.n_t + 1)
    p0[0], p2[0] = moments(phi)

    off = 0.5 / h ** 2
    diag_l = -2.0 * off + pot
    ab = np.empty((3, r.size))
    for k in range(cfg.n_t):
        dt = times[k + 1] - times[k]
        lphi = diag_l * phi
        lphi[1:] += off * phi[:-1]
        lphi[:-1] += off * phi[1:]
        rhs = phi + 0.5 * dt * lphi
        ab[0, :] = -0.5 * dt * off
        ab[1, :] = 1.0 - 0.5 * dt * diag_l
        ab[2, :] = -0.5 * dt * off
        phi = solve_banded((1, 1), ab, rhs)
        p0[k + 1], p2[k + 1] = moments(phi)

    p = phi / r
    if abs(p[-1]) > LEAK_TOL * np.max(np.abs(p)):
        raise BoundaryLeak(f"density at r_max is {abs(p[-1]) / np.max(np.abs(p)):.2e} of its peak")
    return RadialSolution(r, p, times, p0, p2)


def pde_radius(c: CouplingLike, t: float, cfg: PdeConfig = PdeConfig()) -> RadiusEstimate:
    """Radius from the moments of the radial PDE solution."""
    beta = _beta(c)
    sol = solve_radial(beta, t, cfg)
    return RadiusEstimate(beta, float(t), math.sqrt(sol.p2[-1] / sol.p0[-1]),
                          classify_regime(beta, t), RadiusMethod.pde)
