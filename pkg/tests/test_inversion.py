import math

import numpy as np
import pytest

from polyradius.errors import InvalidParams, PoleOnContour, WrongRegime
from polyradius.inversion import (Method, invert_density, make_contour, moment_residues,
                                  moments_direct, moments_residue_split)
from polyradius.resolvent import resolvent_moment
from polyradius.spectral import BETA_CR, ground_state

FREE = 1e-12


def free_density(t, r):
    return (2 * math.pi * t) ** -1.5 * math.exp(-r * r / (2 * t))


def test_contour_geometry():
    spec = make_contour(1.0, 10.0)
    assert spec.nodes.size == 256
    end_re = spec.vertex + spec.truncation_length * math.cos(spec.ray_angle)
    assert end_re <= -3.14
    assert spec.nodes.real.min() > end_re
    assert spec.truncation_length == pytest.approx(18 * math.log(10) * math.sqrt(2) / 10)
    upper, lower = spec.nodes[:128], spec.nodes[128:]
    assert np.array_equal(lower, upper.conj())
    assert np.all(upper.imag > 0)
    # weights integrate the constant 1 along each ray: sum = (end - start) / (2 pi i)
    end = spec.vertex + spec.truncation_length * np.exp(1j * spec.ray_angle)
    ray = np.sum(spec.weights[:128]) * 2j * math.pi
    assert abs(ray - (end - spec.vertex)) < 1e-13


def test_contour_rejects_bad_arguments():
    for args in ((0.0, 1.0), (1.0, 0.0), (-1.0, 1.0)):
        with pytest.raises(InvalidParams):
            make_contour(*args)
    with pytest.raises(InvalidParams):
        make_contour(1.0, 1.0, n=100)


@pytest.mark.parametrize("r", [0.5, 1.0, 2.0])
def test_free_density(r):
    assert invert_density(FREE, 4.0, r) == pytest.approx(free_density(4.0, r), rel=1e-6)


def test_free_density_gaussian_ratio():
    ratio = invert_density(FREE, 4.0, 0.5) / invert_density(FREE, 4.0, 2.0)
    assert ratio == pytest.approx(math.exp(0.46875), rel=1e-6)


def test_density_node_doubling():
    beta = BETA_CR - 0.2
    a = invert_density(beta, 4.0, 1.0, make_contour(1.0, 4.0, 128))
    b = invert_density(beta, 4.0, 1.0, make_contour(1.0, 4.0, 256))
    assert abs(a / b - 1) < 1e-10


def test_density_imaginary_part_vanishes():
    value, imag = invert_density(1.3, 5.0, 0.7, return_imag=True)
    assert imag <= 1e-12 * abs(value)


def test_attraction_raises_the_density():
    beta = BETA_CR + 0.3
    assert invert_density(beta, 40.0, 0.5) > free_density(40.0, 0.5)


@pytest.mark.parametrize("t", [0.5, 10.0, 200.0])
def test_free_moments(t):
    m = moments_direct(FREE, t)
    assert m.p0 == pytest.approx(1.0, abs=1e-8)
    assert m.p2 == pytest.approx(3 * t, rel=1e-8)
    assert m.method is Method.direct_contour


@pytest.mark.parametrize("delta, t", [(0.1, 400.0), (0.3, 50.0), (0.05, 1000.0)])
def test_direct_and_residue_split_agree(delta, t):
    beta = BETA_CR + delta
    md = moments_direct(beta, t)
    ms = moments_residue_split(beta, t)
    assert ms.method is Method.residue_plus_background
    assert md.p0 == pytest.approx(ms.p0, rel=1e-8)
    assert md.p2 == pytest.approx(ms.p2, rel=1e-8)


@pytest.mark.parametrize("delta", [0.05, 0.1, 0.3])
def test_pole_dominates_deep_in_bound_regime(delta):
    beta = BETA_CR + delta
    gs = ground_state(beta)
    m = moments_residue_split(beta, 20.0 / gs.gamma ** 2)
    assert m.pole_part[0] / m.p0 >= 0.99


@pytest.mark.parametrize("delta", [0.05, 0.2])
def test_residue_matches_cauchy_circle(delta):
    beta = BETA_CR + delta
    gs = ground_state(beta)
    rho = 0.5 * gs.lambda0
    theta = 2 * math.pi * np.arange(64) / 64
    z = rho * np.exp(1j * theta)
    for nu, res in zip((0, 2), moment_residues(beta, gs)):
        vals = np.array([resolvent_moment(beta, gs.lambda0 + zi, nu).value for zi in z])
        circle = np.mean(vals * z)
        assert abs(circle - res) <= 1e-9 * abs(res)


def test_contour_independence():
    beta = BETA_CR + 0.1
    t = 200.0
    lam0 = ground_state(beta).lambda0
    ref = moments_direct(beta, t)
    for a in (lam0 + 1 / t, lam0 + 3 / t, lam0 + 10 / t):
        m = moments_direct(beta, t, make_contour(a, t))
        assert abs(m.p0 / ref.p0 - 1) < 1e-9
        assert abs(m.p2 / ref.p2 - 1) < 1e-9


@pytest.mark.parametrize("beta", [0.3, BETA_CR - 0.1, BETA_CR, BETA_CR + 0.2])
@pytest.mark.parametrize("t", [1.0, 30.0, 150.0])
def test_mass_bounds(beta, t):
    p0 = moments_direct(beta, t).p0
    assert 1.0 - 1e-10 <= p0 <= math.exp(beta * t)


def test_growth_rate_deep_in_bound_regime():
    beta = BETA_CR + 0.1
    gs = ground_state(beta)
    t1 = 20.0 / gs.gamma ** 2
    t2 = 1.5 * t1
    rate = math.log(moments_residue_split(beta, t2).p0 / moments_residue_split(beta, t1).p0) / (t2 - t1)
    assert rate == pytest.approx(gs.lambda0, rel=0.01)


def test_imaginary_residual_small():
    for beta, t in ((0.5, 10.0), (BETA_CR, 100.0), (BETA_CR + 0.1, 400.0)):
        m = moments_residue_split(beta, t) if beta > BETA_CR else moments_direct(beta, t)
        assert m.imag_residual <= 1e-8 * max(abs(m.p0), abs(m.p2))


def test_errors():
    with pytest.raises(WrongRegime):
        moments_residue_split(BETA_CR + 0.1, 50.0)
    with pytest.raises(WrongRegime):
        moment_residues(BETA_CR - 0.1)
    beta = BETA_CR + 0.2
    lam0 = ground_state(beta).lambda0
    with pytest.raises(PoleOnContour):
        moments_direct(beta, 10.0, make_contour(0.5 * lam0, 10.0))
    with pytest.raises(PoleOnContour):
        invert_density(beta, 10.0, 0.5, make_contour(0.5 * lam0, 10.0))
    with pytest.raises(InvalidParams):
        moments_direct(1.0, -1.0)
