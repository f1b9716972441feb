"""Executable acceptance checks.

Each check returns a :class:`CheckResult`; the CLI ``validate`` command and
``tests/test_acceptance.py`` both run :data:`CHECKS`.  Tolerances and
runtime limits are fixed here and never relaxed at call time.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from .inversion import invert_density, moments_direct, moments_residue_split
from .oracles import McConfig, mc_radius, mc_sample, pde_radius
from .radius import radius
from .spectral import BETA_CR, critical_coupling, ground_state

SQRT6 = math.sqrt(6.0)


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str
    elapsed: float
    limit: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] {self.number:2d} {self.name}: {self.detail} "
                f"(runtime {self.elapsed:.3g}s, limit {self.limit:g}s)")


@dataclass
class Context:
    """Options and cross-check bookkeeping shared by the checks."""

    mc_paths: int = 200_000
    mc_dt: float = 2e-3
    # (beta, t) -> radius from every deterministic check, for the hygiene check
    radii: Dict[Tuple[float, float], float] = field(default_factory=dict)
    imag: List[Tuple[str, float, float]] = field(default_factory=list)

    def record(self, label: str, est):
        self.radii[(est.beta, est.t)] = est.radius
        m = est.moments
        self.imag.append((label, est.imag_residual, max(abs(m.p0), abs(m.p2))))


def _min_time(fn, repeat=5):
    best = math.inf
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return out, best


def check_critical_coupling(ctx: Context):
    value, elapsed = _min_time(critical_coupling)
    err = abs(value - math.pi ** 2 / 8)
    return err <= 1e-12, f"beta_cr = {value!r}, |err| = {err:.2e} (tol 1e-12)", elapsed


def check_eigenvalue_asymptotics(ctx: Context):
    def run():
        return [ground_state(BETA_CR + d).lambda0 / d ** 2 for d in (1e-3, 0.05)]

    (r1, r2), elapsed = _min_time(run)
    ok = 0.495 <= r1 <= 0.505 and 0.45 <= r2 <= 0.55
    return ok, f"lambda0/delta^2 = {r1:.5f} (delta=1e-3), {r2:.5f} (delta=0.05)", elapsed


def check_bracketing(ctx: Context):
    deltas = (-0.1, -0.05, -0.01, 0.01, 0.05, 0.1)

    def run():
        return [abs(ground_state(BETA_CR + d).gamma) / abs(d) for d in deltas]

    ratios, elapsed = _min_time(run)
    ok = all(0.5 < q < 1.0 for q in ratios)
    return ok, "|gamma|/|delta| in " + f"[{min(ratios):.4f}, {max(ratios):.4f}]", elapsed


def check_free_limit(ctx: Context):
    t0 = time.perf_counter()
    worst_density = 0.0
    for r in (0.5, 1.0, 2.0):
        exact = (2.0 * math.pi * 4.0) ** -1.5 * math.exp(-r * r / 8.0)
        worst_density = max(worst_density, abs(invert_density(1e-12, 4.0, r) / exact - 1.0))
    worst_radius = 0.0
    for t in (1.0, 10.0, 100.0):
        est = radius(1e-12, t)
        ctx.record("free", est)
        worst_radius = max(worst_radius, abs(est.radius / math.sqrt(3.0 * t) - 1.0))
    elapsed = time.perf_counter() - t0
    ok = worst_density <= 1e-6 and worst_radius <= 1e-6
    return ok, f"max rel err density {worst_density:.2e}, radius {worst_radius:.2e} (tol 1e-6)", elapsed


def check_residue_identity(ctx: Context):
    t0 = time.perf_counter()
    beta = BETA_CR + 0.1
    md = moments_direct(beta, 400.0)
    ms = moments_residue_split(beta, 400.0)
    elapsed = time.perf_counter() - t0
    e0 = abs(md.p0 / ms.p0 - 1.0)
    e2 = abs(md.p2 / ms.p2 - 1.0)
    return max(e0, e2) <= 1e-8, f"rel diff nu=0 {e0:.2e}, nu=2 {e2:.2e} (tol 1e-8)", elapsed


def check_plateau(ctx: Context):
    t0 = time.perf_counter()
    parts = []
    ok = True
    plateau = {}
    for delta in (0.05, 0.1):
        beta = BETA_CR + delta
        gamma = ground_state(beta).gamma
        t = 20.0 / gamma ** 2
        e1 = radius(beta, t)
        e2 = radius(beta, 2.0 * t)
        ctx.record("plateau", e1)
        ctx.record("plateau", e2)
        flat = e2.radius / e1.radius
        norm = e1.radius * delta / SQRT6
        ok &= 0.98 <= flat <= 1.02 and 0.9 <= norm <= 1.1
        plateau[delta] = e1.radius
        parts.append(f"delta={delta}: r(2t)/r(t)={flat:.4f}, r*delta/sqrt6={norm:.4f}")
    ratio = (plateau[0.05] / plateau[0.1]) / (0.1 / 0.05)
    ok &= abs(ratio - 1.0) <= 0.15
    parts.append(f"r ratio vs delta ratio {ratio:.4f}")
    return ok, "; ".join(parts), time.perf_counter() - t0


def check_diffusive(ctx: Context):
    t0 = time.perf_counter()
    parts = []
    ok = True
    for beta in (BETA_CR, BETA_CR - 0.1):
        for t in (100.0, 400.0):
            e1 = radius(beta, t)
            e4 = radius(beta, 4.0 * t)
            ctx.record("diffusive", e1)
            ctx.record("diffusive", e4)
            q = e4.radius / e1.radius
            ok &= 1.9 <= q <= 2.1
            parts.append(f"r(4t)/r(t)={q:.4f} at beta-beta_cr={beta - BETA_CR:+.1f}, t={t:g}")
    beta = BETA_CR - 0.1
    a = radius(beta, 5e3)
    b = radius(beta, 1e4)
    ctx.record("diffusive", a)
    ctx.record("diffusive", b)
    drift = abs((b.radius / 100.0) / (a.radius / math.sqrt(5e3)) - 1.0)
    ok &= drift <= 0.02
    parts.append(f"r/sqrt(t) drift 5e3->1e4 {drift:.4f}")
    return ok, "; ".join(parts), time.perf_counter() - t0


def check_growth_rate(ctx: Context):
    t0 = time.perf_counter()
    beta = BETA_CR + 0.1
    lam0 = ground_state(beta).lambda0
    p1 = moments_direct(beta, 300.0).p0
    p2 = moments_direct(beta, 400.0).p0
    rate = math.log(p2 / p1) / 100.0
    err = abs(rate / lam0 - 1.0)
    return (err <= 0.01,
            f"rate {rate:.6g} vs lambda0 {lam0:.6g}, rel err {err:.3%} (tol 1%)",
            time.perf_counter() - t0)


def check_oracle_triangle(ctx: Context):
    t0 = time.perf_counter()
    parts = []
    ok = True
    cfg = McConfig(n_paths=ctx.mc_paths, dt=ctx.mc_dt, seed=0)
    for beta in (0.0, BETA_CR - 0.1, BETA_CR + 0.3):
        lap = radius(beta, 10.0)
        ctx.record("oracle", lap)
        pde = pde_radius(beta, 10.0)
        mc = mc_radius(beta, 10.0, cfg)
        e_pde = abs(pde.radius / lap.radius - 1.0)
        e_mc = abs(mc.radius - lap.radius)
        tol_mc = max(3.0 * mc.stderr, 0.05 * lap.radius)
        ok &= e_pde <= 0.02 and e_mc <= tol_mc
        parts.append(f"beta={beta:.4f}: laplace {lap.radius:.5f}, pde rel {e_pde:.1e}, "
                     f"mc {mc.radius:.4f}+-{mc.stderr:.4f}")
    return ok, "; ".join(parts), time.perf_counter() - t0


def check_hygiene(ctx: Context):
    t0 = time.perf_counter()
    if not ctx.radii:
        for beta, t in ((1e-12, 10.0), (BETA_CR, 100.0), (BETA_CR + 0.1, 400.0)):
            ctx.record("hygiene", radius(beta, t))
    worst_imag = max(im / scale for _, im, scale in ctx.imag)
    worst_doubling = 0.0
    for (beta, t), r in ctx.radii.items():
        r2 = radius(beta, t, n=256).radius
        worst_doubling = max(worst_doubling, abs(r2 / r - 1.0))
    cfg = McConfig(n_paths=2048, dt=0.01, seed=7)
    a = mc_sample(BETA_CR, 1.0, cfg)
    b = mc_sample(BETA_CR, 1.0, cfg)
    bit_exact = all(np.array_equal(x, y) for x, y in zip(a, b))
    ok = worst_imag <= 1e-8 and worst_doubling < 1e-6 and bit_exact
    detail = (f"max imag/scale {worst_imag:.1e}, node doubling {worst_doubling:.1e} over "
              f"{len(ctx.radii)} radii, MC seed bit-exact {bit_exact}")
    return ok, detail, time.perf_counter() - t0


# (number, name, function, runtime limit in seconds)
CHECKS: List[Tuple[int, str, Callable, float]] = [
    (1, "critical coupling", check_critical_coupling, 1e-3),
    (2, "eigenvalue asymptotics", check_eigenvalue_asymptotics, 1e-2),
    (3, "gamma bracketing", check_bracketing, 1e-2),
    (4, "free limit", check_free_limit, 1.0),
    (5, "contour/residue identity", check_residue_identity, 1.0),
    (6, "supercritical plateau", check_plateau, 5.0),
    (7, "diffusive scaling", check_diffusive, 10.0),
    (8, "growth rate", check_growth_rate, 1.0),
    (9, "oracle triangle", check_oracle_triangle, 300.0),
    (10, "numerical hygiene", check_hygiene, math.inf),
]


def run_check(number: int, ctx: Optional[Context] = None) -> CheckResult:
    ctx = ctx or Context()
    for num, name, fn, limit in CHECKS:
        if num == number:
            ok, detail, elapsed = fn(ctx)
            return CheckResult(num, name, bool(ok) and elapsed <= limit, detail, elapsed, limit)
    raise KeyError(number)


def run_all(ctx: Optional[Context] = None, skip: Tuple[int, ...] = ()) -> List[CheckResult]:
    ctx = ctx or Context()
    return [run_check(num, ctx) for num, *_ in CHECKS if num not in skip]
