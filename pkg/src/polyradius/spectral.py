"""Dispersion function of the unit-ball well and its ground state.

The Schrodinger-type operator ``H = 1/2 Laplacian + beta * 1{|x| <= 1}`` on
R^3 has its eigenvalues at the zeros of

    d(beta, k) = sqrt(2) k g(beta - k^2) + f(beta - k^2),    lambda = k^2,

where ``f(x) = cos(sqrt(2x))`` and ``g(x) = sin(sqrt(2x)) / sqrt(2x)`` are
entire in ``x``.  Written this way ``d`` is entire in ``(beta, k)``, so there
is no branch point at ``lambda = beta`` and negative ``k`` gives the analytic
continuation of ``sqrt(lambda_0)`` below the critical coupling.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import InvalidParams, NoRootInWindow, OutsideWindow

BETA_CR = math.pi ** 2 / 8
SQRT2 = math.sqrt(2.0)

#: half-width of the near-critical window in beta
EPSILON = 0.6
ROOT_TOL = 1e-12

# Taylor branch for |x| < _SERIES_RADIUS; 14 terms reach machine precision there
# and avoid the cancellation in (f - g) / (2x).
_SERIES_RADIUS = 0.5
_N_SERIES = 14
_F_COEF = np.array([(-2.0) ** n / math.factorial(2 * n) for n in range(_N_SERIES)])
_G_COEF = np.array([(-2.0) ** n / math.factorial(2 * n + 1) for n in range(_N_SERIES)])
_GP_COEF = np.array([(n + 1) * _G_COEF[n + 1] for n in range(_N_SERIES - 1)])


@dataclass(frozen=True)
class Coupling:
    """Inverse temperature together with its signed distance to criticality."""

    beta: float

    def __post_init__(self):
        if not (self.beta >= 0.0) or not math.isfinite(self.beta):
            raise InvalidParams(f"beta must be finite and >= 0, got {self.beta!r}")
        object.__setattr__(self, "beta", float(self.beta))

    @property
    def delta(self) -> float:
        return self.beta - BETA_CR

    @classmethod
    def near_critical(cls, delta: float) -> "Coupling":
        return cls(BETA_CR + delta)


@dataclass(frozen=True)
class SpectralPoint:
    """A spectral parameter and the branch of sqrt(2 lambda) with Re > 0."""

    lam: complex
    sqrt2lambda: complex

    @classmethod
    def at(cls, lam: complex) -> "SpectralPoint":
        lam = complex(lam)
        return cls(lam, complex(np.sqrt(2.0 * lam)))


@dataclass(frozen=True)
class GroundState:
    """Bifurcating eigenvalue near the critical coupling.

    ``gamma`` is the real root of ``d(beta, k) = 0`` nearest ``k = 0``; it is the
    square root of the eigenvalue above criticality and its analytic
    continuation (negative) below.  ``lambda0`` is ``None`` when no
    non-negative eigenvalue exists.
    """

    beta: float
    gamma: float
    lambda0: Optional[float]
    d_lambda_deriv: Optional[float]

    @property
    def has_eigenvalue(self) -> bool:
        return self.lambda0 is not None


CouplingLike = Union[Coupling, float]


def _beta(c: CouplingLike) -> float:
    return c.beta if isinstance(c, Coupling) else float(c)


def entire_parts(x):
    """Return ``(f, g, g')`` at ``x`` for ``f = cos sqrt(2x)``, ``g = sin sqrt(2x)/sqrt(2x)``.

    Uses ``f' = -g`` and ``g' = (f - g) / (2x)``; a Taylor series is used near
    ``x = 0``.  Accepts scalars or arrays, real or complex.
    """
    x = np.asarray(x, dtype=complex)
    small = np.abs(x) < _SERIES_RADIUS
    xs = np.where(small, x, 0.0)
    f_s = np.polynomial.polynomial.polyval(xs, _F_COEF)
    g_s = np.polynomial.polynomial.polyval(xs, _G_COEF)
    gp_s = np.polynomial.polynomial.polyval(xs, _GP_COEF)

    xl = np.where(small, 1.0, x)
    w = np.sqrt(2.0 * xl)
    f_l = np.cos(w)
    g_l = np.sin(w) / w
    gp_l = (f_l - g_l) / (2.0 * xl)

    f = np.where(small, f_s, f_l)
    g = np.where(small, g_s, g_l)
    gp = np.where(small, gp_s, gp_l)
    return f[()], g[()], gp[()]


def dispersion(c: CouplingLike, k):
    """Dispersion function ``d(beta, k)`` with ``lambda = k**2``.

    Parameters
    ----------
    c : Coupling or float
        Coupling (or bare beta).
    k : complex or array_like
        Square-root variable.  Pass the principal ``sqrt(lambda)`` to evaluate
        on the physical sheet.

    Returns
    -------
    complex or ndarray
    """
    beta = _beta(c)
    k = np.asarray(k, dtype=complex)
    f, g, _ = entire_parts(beta - k * k)
    return (SQRT2 * k * g + f)[()]


def dispersion_dk(c: CouplingLike, k):
    """Analytic derivative of :func:`dispersion` with respect to ``k``."""
    beta = _beta(c)
    k = np.asarray(k, dtype=complex)
    f, g, gp = entire_parts(beta - k * k)
    return (SQRT2 * g - 2.0 * SQRT2 * k * k * gp + 2.0 * k * g)[()]


def dispersion_dbeta(c: CouplingLike, k):
    """Analytic derivative of :func:`dispersion` with respect to ``beta``."""
    beta = _beta(c)
    k = np.asarray(k, dtype=complex)
    f, g, gp = entire_parts(beta - k * k)
    return (SQRT2 * k * gp - g)[()]


def dispersion_lambda(c: CouplingLike, lam):
    """``d`` on the physical sheet, as a function of ``lambda``."""
    return dispersion(c, np.sqrt(np.asarray(lam, dtype=complex)))


def _safeguarded_newton(func, lo, hi, x0, tol=ROOT_TOL, maxit=200):
    """Newton iteration kept inside the bracket ``[lo, hi]`` by bisection.

    ``func(x)`` returns ``(f, df)``; ``f(lo)`` and ``f(hi)`` must differ in sign.
    """
    flo, _ = func(lo)
    fhi, _ = func(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise NoRootInWindow(f"no sign change on [{lo}, {hi}]")
    # orient so that f(xl) < 0 < f(xh)
    xl, xh = (lo, hi) if flo < 0.0 else (hi, lo)
    x = x0 if min(lo, hi) < x0 < max(lo, hi) else 0.5 * (lo + hi)
    dxold = abs(hi - lo)
    dx = dxold
    fx, dfx = func(x)
    for _ in range(maxit):
        out_of_range = ((x - xh) * dfx - fx) * ((x - xl) * dfx - fx) > 0.0
        slow = abs(2.0 * fx) > abs(dxold * dfx)
        if out_of_range or slow or dfx == 0.0:
            dxold = dx
            dx = 0.5 * (xh - xl)
            x = xl + dx
        else:
            dxold = dx
            dx = fx / dfx
            x -= dx
        if abs(dx) < tol:
            return x
        fx, dfx = func(x)
        if fx == 0.0:
            return x
        if fx < 0.0:
            xl = x
        else:
            xh = x
    raise NoRootInWindow("safeguarded Newton did not converge")


def critical_coupling() -> float:
    """Root of ``beta -> d(beta, 0) = cos(sqrt(2 beta))`` on ``[1, 1.5]``."""

    def func(b):
        f, g, _ = entire_parts(b)
        return f.real, -g.real

    return float(_safeguarded_newton(func, 1.0, 1.5, 1.2, tol=1e-15))


def ground_state(c: CouplingLike, epsilon: float = EPSILON) -> GroundState:
    """Find the root ``gamma`` of ``d(beta, gamma) = 0`` nearest zero.

    Newton starts from the implicit-function estimate ``delta / sqrt(2)`` and is
    safeguarded by bisection on ``[min(0, 2 delta), max(0, 2 delta)]``, widened
    geometrically up to ``|k| <= 2|delta| + 0.1``.

    Raises
    ------
    OutsideWindow
        If ``|beta - beta_cr| > epsilon``.
    NoRootInWindow
        If no sign change is found inside the search limit.
    """
    beta = _beta(c)
    delta = beta - BETA_CR
    if abs(delta) > epsilon * (1.0 + 1e-12):
        raise OutsideWindow(f"|beta - beta_cr| = {abs(delta):.3g} exceeds epsilon = {epsilon}")
    if delta == 0.0:
        return GroundState(beta, 0.0, 0.0, None)

    def func(k):
        return dispersion(beta, k).real, dispersion_dk(beta, k).real

    limit = 2.0 * abs(delta) + 0.1
    far = 2.0 * delta
    d0 = func(0.0)[0]
    while True:
        if d0 * func(far)[0] <= 0.0:
            break
        if abs(far) >= limit:
            raise NoRootInWindow(f"no root of d within |k| <= {limit:.3g} for beta = {beta}")
        far = math.copysign(min(2.0 * abs(far), limit), delta)

    gamma = float(_safeguarded_newton(func, min(0.0, far), max(0.0, far), delta / SQRT2))
    d_lambda = float(dispersion_dk(beta, gamma).real) / (2.0 * gamma) if gamma != 0.0 else None
    lambda0 = gamma * gamma if gamma >= 0.0 else None
    return GroundState(beta, gamma, lambda0, d_lambda)
