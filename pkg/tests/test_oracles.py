import math

import numpy as np
import pytest

from polyradius import oracles
from polyradius.errors import (BoundaryLeak, DegenerateWeights, InvalidParams,
                               WorkBudgetExceeded)
from polyradius.oracles import (McConfig, PdeConfig, block_generator, mc_radius, mc_sample,
                                pde_radius, solve_radial)
from polyradius.radius import RadiusMethod, radius
from polyradius.spectral import BETA_CR

# ---------------------------------------------------------------- Monte Carlo


def test_mc_free_radius():
    est = mc_radius(0.0, 10.0, McConfig(n_paths=100_000, dt=0.05))
    assert est.method is RadiusMethod.monte_carlo
    assert 0.0 < est.stderr < 0.02
    assert abs(est.radius - math.sqrt(30.0)) <= 3 * est.stderr


def test_mc_subcritical_matches_laplace():
    est = mc_radius(BETA_CR - 0.1, 10.0, McConfig(n_paths=20_000, dt=0.01, seed=3))
    ref = radius(BETA_CR - 0.1, 10.0).radius
    assert abs(est.radius - ref) <= max(3 * est.stderr, 0.05 * ref)


@pytest.mark.slow
def test_mc_supercritical_matches_laplace():
    beta = BETA_CR + 0.5
    est = mc_radius(beta, 10.0, McConfig(n_paths=200_000, dt=1e-3))
    ref = radius(beta, 10.0).radius
    assert abs(est.radius - ref) <= max(3 * est.stderr, 0.05 * ref)


def test_mc_seed_is_bit_exact():
    cfg = McConfig(n_paths=3000, dt=0.01, seed=11, block_size=1024)
    a = mc_sample(BETA_CR, 1.0, cfg)
    b = mc_sample(BETA_CR, 1.0, cfg)
    for x, y in zip(a, b):
        assert np.array_equal(x, y)
    other = mc_sample(BETA_CR, 1.0, McConfig(n_paths=3000, dt=0.01, seed=12, block_size=1024))
    assert not np.array_equal(a[1], other[1])


def test_mc_different_seeds_are_statistically_consistent():
    ests = [mc_radius(0.5, 2.0, McConfig(n_paths=20_000, dt=0.01, seed=s)) for s in (1, 2)]
    diff = abs(ests[0].radius - ests[1].radius)
    assert diff <= 4 * math.hypot(ests[0].stderr, ests[1].stderr)


def test_mc_blocks_are_independent_of_count():
    # the first block is the same whether or not later blocks are drawn
    small = mc_sample(1.0, 1.0, McConfig(n_paths=2048, dt=0.01, seed=5, block_size=1024))
    large = mc_sample(1.0, 1.0, McConfig(n_paths=4096, dt=0.01, seed=5, block_size=1024))
    assert np.array_equal(small[1], large[1][:2048])


def test_block_generator_streams_differ():
    a = block_generator(0, 0).standard_normal(8)
    b = block_generator(0, 1).standard_normal(8)
    assert not np.array_equal(a, b)


def test_mc_antithetic():
    cfg = McConfig(n_paths=20_000, dt=0.01, seed=4, antithetic=True)
    log_w, x2 = mc_sample(0.0, 1.0, cfg)
    assert np.all(log_w == 0.0)
    est = mc_radius(0.0, 1.0, cfg)
    assert abs(est.radius - math.sqrt(3.0)) <= 3 * est.stderr
    with pytest.raises(InvalidParams):
        McConfig(n_paths=20_001, antithetic=True)


def test_mc_rejections():
    with pytest.raises(WorkBudgetExceeded):
        mc_sample(1.0, 60.0, McConfig(dt=0.5))
    with pytest.raises(WorkBudgetExceeded):
        mc_sample(1.0, 10.0, McConfig(n_paths=1_000_000, dt=1e-3))
    with pytest.raises(InvalidParams):
        mc_sample(1.0, 1.0, McConfig(dt=0.05))
    for kwargs in ({"n_paths": 10}, {"dt": 0.0}, {"seed": -1}):
        with pytest.raises(InvalidParams):
            McConfig(**kwargs)


def test_mc_degenerate_weights():
    # strong coupling: a handful of paths that never leave the ball carry all the weight
    with pytest.raises(DegenerateWeights):
        mc_radius(400.0, 10.0, McConfig(n_paths=1000, dt=0.1))


# ----------------------------------------------------------------- radial PDE


def test_pde_free_radius():
    est = pde_radius(0.0, 10.0)
    assert est.method is RadiusMethod.pde
    assert est.radius == pytest.approx(math.sqrt(30.0), rel=5e-3)


def test_pde_free_mass_conserved():
    sol = solve_radial(0.0, 10.0)
    assert np.max(np.abs(sol.p0 - 1.0)) < 1e-6


@pytest.mark.parametrize("beta", [BETA_CR - 0.1, BETA_CR + 0.3])
def test_pde_matches_laplace(beta):
    assert pde_radius(beta, 10.0).radius == pytest.approx(radius(beta, 10.0).radius, rel=0.02)


def test_pde_grid_refinement():
    t = 10.0
    base = pde_radius(BETA_CR, t).radius
    n_r = 2 * int(math.ceil((8 * math.sqrt(t) + 3) * 100))
    fine = pde_radius(BETA_CR, t, PdeConfig(n_r=n_r, n_t=2000)).radius
    assert abs(fine / base - 1) < 2e-3


def test_pde_mass_grows_under_attraction():
    sol = solve_radial(BETA_CR, 20.0)
    assert np.all(np.diff(sol.p0) >= -1e-12)
    assert sol.p0[-1] > 1.0
    assert np.all(np.diff(sol.times) > 0)


def test_pde_boundary_leak(monkeypatch):
    # the tail of the bound state at the smallest admissible r_max sits about
    # one decade under the threshold; a stricter threshold exposes it
    t = 200.0
    cfg = PdeConfig(r_max=6 * math.sqrt(t) + 3.01)
    monkeypatch.setattr(oracles, "LEAK_TOL", 1e-14)
    with pytest.raises(BoundaryLeak):
        solve_radial(BETA_CR + 0.05, t, cfg)


def test_pde_config_validation():
    with pytest.raises(InvalidParams):
        PdeConfig(r_max=10.0).resolve(10.0)
    with pytest.raises(InvalidParams):
        PdeConfig(n_r=100).resolve(10.0)
    with pytest.raises(InvalidParams):
        PdeConfig(t0=0.5).resolve(10.0)
    with pytest.raises(WorkBudgetExceeded):
        solve_radial(1.0, 500.0)
    cfg = PdeConfig().resolve(10.0)
    assert cfg.r_max == pytest.approx(28.3)
    assert cfg.r_max / cfg.n_r == pytest.approx(0.01)
