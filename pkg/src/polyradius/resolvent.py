"""Closed-form radial resolvent of the unit-ball well.

``u(lambda, r)`` solves ``(1/2 Laplacian + beta v - lambda) u = -delta_0`` in the
class of L^2 radial functions.  With ``s = sqrt(2 lambda)`` (Re s > 0),
``x = beta - lambda`` and ``f, g`` the entire functions of :mod:`.spectral`:

    2 pi r d u = f(x (r-1)^2) - s (r-1) g(x (r-1)^2)     r <= 1
    2 pi r d u = exp(-s (r-1))                            r >= 1

Spatial moments ``U_nu(lambda) = int |x|^nu u dx`` are written as ``M_nu / d``
where the numerator ``M_nu`` carries no zero of ``d``; residues at the
eigenvalue are then ``M_nu(lambda0) / d'(lambda0)``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import AtPole, OriginSingular, UnsupportedOrder
from .spectral import CouplingLike, SpectralPoint, _beta, dispersion, entire_parts

SUPPORTED_ORDERS = (0, 2)
INTERIOR_NODES = 32
POLE_TOL = 1e-13


class Region(enum.Enum):
    interior = "interior"
    exterior = "exterior"


@dataclass(frozen=True)
class ResolventValue:
    value: complex
    region: Region


@dataclass(frozen=True)
class MatchingCoefficients:
    """Coefficients of ``u = A exp(-s r)/r`` outside and
    ``u = cos(w r)/(2 pi r) + B sin(w r)/(w r)`` inside, ``w = sqrt(2(beta - lambda))``."""

    A: complex
    B: complex


@dataclass(frozen=True)
class ResolventMoment:
    nu: int
    value: complex


@lru_cache(maxsize=None)
def unit_gauss_legendre(n: int):
    """Gauss-Legendre nodes and weights mapped to ``[0, 1]``."""
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w


def _point(p) -> SpectralPoint:
    return p if isinstance(p, SpectralPoint) else SpectralPoint.at(p)


def _check_pole(d, scale):
    if abs(d) < POLE_TOL * scale:
        raise AtPole(f"|d| = {abs(d):.3e} at the requested lambda")


def _numerator(beta, lam, s, rm1):
    """``f(x rm1^2) - s rm1 g(x rm1^2)`` for ``x = beta - lam``."""
    f, g, _ = entire_parts((beta - lam) * rm1 * rm1)
    return f - s * rm1 * g


def resolvent_u(c: CouplingLike, p, r: float) -> ResolventValue:
    """Evaluate ``u(lambda, r)`` for ``r > 0``.

    Raises ``OriginSingular`` at ``r = 0`` (the kernel has the ``1/(2 pi r)``
    source singularity there) and ``AtPole`` when ``d`` vanishes numerically.
    """
    if r <= 0.0:
        raise OriginSingular("u has a 1/(2 pi r) singularity at r = 0")
    beta = _beta(c)
    p = _point(p)
    s = p.sqrt2lambda
    d = complex(dispersion(beta, s / math.sqrt(2.0)))
    _check_pole(d, 1.0 + abs(s))
    if r <= 1.0:
        num = complex(_numerator(beta, p.lam, s, r - 1.0))
        return ResolventValue(num / (2.0 * math.pi * r * d), Region.interior)
    return ResolventValue(np.exp(-s * (r - 1.0)) / (2.0 * math.pi * r * d), Region.exterior)


def matching_coefficients(c: CouplingLike, p) -> MatchingCoefficients:
    """Solve the two continuity conditions at ``r = 1`` by Cramer's rule."""
    beta = _beta(c)
    p = _point(p)
    s = p.sqrt2lambda
    x = beta - p.lam
    f, g, _ = entire_parts(x)
    f, g = complex(f), complex(g)
    d = f + s * g
    _check_pole(d, 1.0 + abs(s))
    A = np.exp(s) / (2.0 * math.pi * d)
    B = (2.0 * x * g - s * f) / (2.0 * math.pi * d)
    return MatchingCoefficients(complex(A), complex(B))


def matching_residuals(c: CouplingLike, p, coef: MatchingCoefficients):
    """Residuals of the value and flux continuity equations for ``(A, B)``."""
    beta = _beta(c)
    p = _point(p)
    s = p.sqrt2lambda
    x = beta - p.lam
    f, g, _ = entire_parts(x)
    e = np.exp(-s)
    r1 = coef.A * e - coef.B * g - f / (2.0 * math.pi)
    r2 = -coef.A * s * e - coef.B * f + 2.0 * x * g / (2.0 * math.pi)
    return complex(r1), complex(r2)


def u_from_coefficients(c: CouplingLike, p, coef: MatchingCoefficients, r: float) -> complex:
    beta = _beta(c)
    p = _point(p)
    if r >= 1.0:
        return complex(coef.A * np.exp(-p.sqrt2lambda * r) / r)
    f, g, _ = entire_parts((beta - p.lam) * r * r)
    return complex(f / (2.0 * math.pi * r) + coef.B * g)


def _exterior_moment(s, nu):
    # int_1^inf r^(nu+1) exp(-s (r-1)) dr
    if nu == 0:
        return 1.0 / s + 1.0 / s ** 2
    return 1.0 / s + 3.0 / s ** 2 + 6.0 / s ** 3 + 6.0 / s ** 4


def moment_numerator(c: CouplingLike, lam, nu: int, n_nodes: int = INTERIOR_NODES):
    """Numerator ``M_nu`` of ``U_nu = M_nu / d``, vectorized over ``lam``.

    ``M_nu = 2 (int_0^1 r^(nu+1) N(r) dr + int_1^inf r^(nu+1) e^{-s(r-1)} dr)``
    with the interior numerator ``N`` integrated by Gauss-Legendre.
    """
    if nu not in SUPPORTED_ORDERS:
        raise UnsupportedOrder(f"moment order {nu} not in {SUPPORTED_ORDERS}")
    beta = _beta(c)
    lam = np.asarray(lam, dtype=complex)
    s = np.sqrt(2.0 * lam)
    rn, wn = unit_gauss_legendre(n_nodes)
    lam_b = lam[..., None]
    s_b = s[..., None]
    num = _numerator(beta, lam_b, s_b, rn - 1.0)
    interior = np.sum(wn * rn ** (nu + 1) * num, axis=-1)
    return (2.0 * (interior + _exterior_moment(s, nu)))[()]


def moment_interior(c: CouplingLike, lam, nu: int, n_nodes: int = INTERIOR_NODES):
    """Interior piece ``int_0^1 r^(nu+1) N(r) dr`` alone (quadrature diagnostics)."""
    beta = _beta(c)
    lam = np.asarray(lam, dtype=complex)
    s = np.sqrt(2.0 * lam)
    rn, wn = unit_gauss_legendre(n_nodes)
    num = _numerator(beta, lam[..., None], s[..., None], rn - 1.0)
    return np.sum(wn * rn ** (nu + 1) * num, axis=-1)[()]


def moment_lambda(c: CouplingLike, lam, nu: int):
    """``U_nu(lambda)``, vectorized; no pole check."""
    beta = _beta(c)
    lam = np.asarray(lam, dtype=complex)
    return (moment_numerator(beta, lam, nu) / dispersion(beta, np.sqrt(lam)))[()]


def resolvent_moment(c: CouplingLike, p, nu: int) -> ResolventMoment:
    """``U_nu(lambda) = int_{R^3} |x|^nu u(lambda, |x|) dx`` for ``nu`` in ``{0, 2}``."""
    if nu not in SUPPORTED_ORDERS:
        raise UnsupportedOrder(f"moment order {nu} not in {SUPPORTED_ORDERS}")
    beta = _beta(c)
    p = _point(p)
    d = complex(dispersion(beta, p.sqrt2lambda / math.sqrt(2.0)))
    _check_pole(d, 1.0 + abs(p.sqrt2lambda))
    return ResolventMoment(nu, complex(moment_numerator(beta, p.lam, nu)) / d)
