"""Vacuum polarization by massive planar fermions.

First-order polarization operator, the induced charge in momentum and
coordinate space, and the order-of-magnitude model of the real (charged
vacuum) polarization density after a level dives below ``-m``.

Couplings are per unit ``e0^2`` (``Pi / e0^2``) and charges per unit ``e0``
unless stated otherwise.
"""
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .dirac_coulomb import resonance_width_estimate
from .errors import ConvergenceError, DomainError

__all__ = [
    "ChargeRegime",
    "MassiveChargePoint",
    "polarization_operator",
    "induced_charge_momentum",
    "q_m_coordinate",
    "fit_small_r_slope",
    "q_m_small_r",
    "q_m_large_r",
    "LARGE_R_PREFACTORS",
    "real_polarization_switch",
    "real_polarization_density",
    "resonance_width",
    "total_massive_density",
]

LARGE_R_PREFACTORS = {
    "derived": 0.5 * math.sqrt(math.pi),
    "paper": math.sqrt(4.0 * math.pi),
}

_SMALL_Q = 0.1
_U_MAX = 40.0


class ChargeRegime(str, Enum):
    EXACT = "exact"
    SMALL_MR = "small_mr"
    LARGE_MR = "large_mr"


@dataclass(frozen=True)
class MassiveChargePoint:
    r: float
    q_m: float
    regime: ChargeRegime
    error: float = 0.0
    meta: dict = field(default_factory=dict, compare=False)


def _check_m(m):
    m = float(m)
    if not m > 0.0 or not math.isfinite(m):
        raise DomainError(f"m must be > 0, got {m}")
    return m


def polarization_operator(q_sq, m):
    """First-order polarization operator ``Pi(-q^2) / e0^2``.

    ``(1/8pi) [(4m^2 - q^2)/|q| arctan(|q|/2m) - 2m]``; a power series in
    ``t = |q|/2m`` is used for ``t < 0.1`` so that ``Pi(0) = 0`` exactly.
    """
    q_sq = float(q_sq)
    m = _check_m(m)
    if q_sq < 0.0:
        raise DomainError(f"q_sq must be >= 0, got {q_sq}")
    q = math.sqrt(q_sq)
    t = q / (2.0 * m)
    if t < _SMALL_Q:
        t2 = t * t
        s = 0.0
        p = t2
        for k in range(1, 14):
            s += (-1) ** k * 4.0 * k / (4.0 * k * k - 1.0) * p
            p *= t2
        return 2.0 * m * s / (8.0 * math.pi)
    return ((4.0 * m * m - q_sq) / q * math.atan(t) - 2.0 * m) / (8.0 * math.pi)


def induced_charge_momentum(a, q_abs, m):
    """``-a Pi(-q^2) / (e0^2 |q|)``, charge per unit ``e0``."""
    q_abs = float(q_abs)
    if not q_abs > 0.0:
        raise DomainError("q_abs must be > 0")
    return -float(a) * polarization_operator(q_abs * q_abs, m) / q_abs


def _j_integral(p, tol):
    """``e^p * int_1^inf e^{-p x} dx / (x^3 sqrt(x^2-1))`` with ``x = cosh u``."""

    def f(u):
        c = math.cosh(u)
        return math.exp(-p * (c - 1.0)) / (c * c * c)

    # the integrand is below e^{-3u}; beyond u = 40 it is negligible
    val, err = quad(f, 0.0, _U_MAX, epsabs=0.0, epsrel=tol, limit=400)
    return val, err


def q_m_coordinate(a, m, r, quad_tol=1e-12):
    """Coordinate-space induced charge ``-a int_1^inf e^{-2mrx}/(x^3 sqrt(x^2-1)) dx``.

    Returns
    -------
    MassiveChargePoint
        ``q_m`` in units of ``e0``; ``error`` is the quadrature error estimate.

    Raises
    ------
    ConvergenceError
        When the quadrature error estimate exceeds ``quad_tol`` (relative).
    """
    m = _check_m(m)
    r = float(r)
    if not r > 0.0:
        raise DomainError("r must be > 0")
    if not quad_tol > 0.0:
        raise DomainError("quad_tol must be > 0")
    p = 2.0 * m * r
    val, err = _j_integral(p, quad_tol)
    if err > max(quad_tol * abs(val), 1e-300):
        raise ConvergenceError(f"q_m_coordinate: quadrature error {err:.3g} above tolerance {quad_tol:g}")
    scale = math.exp(-p)
    return MassiveChargePoint(
        r=r, q_m=-float(a) * val * scale, regime=ChargeRegime.EXACT,
        error=abs(float(a)) * err * scale, meta={"mr": m * r, "units": "e0"},
    )


@lru_cache(maxsize=8)
def fit_small_r_slope(mr_lo=1e-3, mr_hi=5e-2, n=40):
    """Least-squares slope ``C`` of ``pi/4 + q_m/a`` against ``mr``.

    The fit is a line through the origin over a log-spaced grid on
    ``[mr_lo, mr_hi]``.
    """
    x = np.geomspace(mr_lo, mr_hi, n)
    y = np.array([math.pi / 4.0 + q_m_coordinate(1.0, 1.0, xi).q_m for xi in x])
    return float(np.dot(x, y) / np.dot(x, x))


def q_m_small_r(a, m, r, c_fit=None):
    """``-a (pi/4 - C m r)`` for ``mr < 0.1``; `C` defaults to the fitted slope."""
    m = _check_m(m)
    mr = m * float(r)
    if not 0.0 <= mr < 0.1:
        raise DomainError(f"small-r branch needs 0 <= mr < 0.1, got {mr}")
    c = fit_small_r_slope() if c_fit is None else float(c_fit)
    return -float(a) * (math.pi / 4.0 - c * mr)


def q_m_large_r(a, m, r, prefactor="derived"):
    """``-a P exp(-2mr)/sqrt(mr)`` for ``mr > 3``.

    ``prefactor="derived"`` uses ``P = sqrt(pi)/2`` from the endpoint Laplace
    expansion; ``"paper"`` uses ``P = sqrt(4 pi)``.
    """
    m = _check_m(m)
    mr = m * float(r)
    if not mr > 3.0:
        raise DomainError(f"large-r branch needs mr > 3, got {mr}")
    try:
        P = LARGE_R_PREFACTORS[prefactor]
    except KeyError:
        raise DomainError(f"prefactor must be one of {sorted(LARGE_R_PREFACTORS)}") from None
    return -float(a) * P * math.exp(-2.0 * mr) / math.sqrt(mr)


def _small_branch(a_cr, m, r):
    L = math.log(m * r)
    return -m * m * (2.0 * L * L - 2.0 * L / a_cr + 1.0 / (a_cr * a_cr))


def _large_branch(m, epsilon0, r):
    ell = 1.0 / math.sqrt(2.0 * m * epsilon0)
    return -(m / r) * math.exp(-2.0 * math.sqrt(r / ell))


def _check_real(a_cr, m, epsilon0):
    m = _check_m(m)
    if not a_cr > 0.5:
        raise DomainError(f"a_cr must be > 1/2, got {a_cr}")
    if not epsilon0 > 0.0:
        raise DomainError(f"epsilon0 must be > 0, got {epsilon0}")
    return float(a_cr), m, float(epsilon0)


@lru_cache(maxsize=64)
def real_polarization_switch(a_cr, m, epsilon0):
    """``(r_switch, matching constant)`` for the piecewise density model.

    ``r_switch`` is the first radius (scanning outward from ``mr = 1e-8``)
    where the two branches are equal in magnitude; the constant rescales the
    large-r branch for continuity and is 1 at an exact intersection.  Without
    an intersection ``r_switch = 1/m`` with the constant set by continuity.
    """
    a_cr, m, epsilon0 = _check_real(a_cr, m, epsilon0)

    def gap(lx):
        r = math.exp(lx) / m
        return math.log(-_large_branch(m, epsilon0, r)) - math.log(-_small_branch(a_cr, m, r))

    grid = np.linspace(math.log(1e-8), math.log(1e3), 2000)
    vals = [gap(x) for x in grid]
    r_sw = None
    for i in range(len(grid) - 1):
        if vals[i] * vals[i + 1] < 0.0:
            r_sw = math.exp(brentq(gap, grid[i], grid[i + 1], xtol=1e-14)) / m
            break
    if r_sw is None:
        r_sw = 1.0 / m
    const = _small_branch(a_cr, m, r_sw) / _large_branch(m, epsilon0, r_sw)
    return r_sw, const


def real_polarization_density(a_cr, m, epsilon0, r):
    """Charged-vacuum density model (per unit ``e0``), negative everywhere.

    Small r: ``-m^2 [2 ln^2(mr) - 2 ln(mr)/a_cr + 1/a_cr^2]``; large r:
    ``-(m/r) exp(-2 sqrt(r/l))`` with ``l = 1/sqrt(2 m epsilon0)``.
    """
    a_cr, m, epsilon0 = _check_real(a_cr, m, epsilon0)
    r = float(r)
    if not r > 0.0:
        raise DomainError("r must be > 0")
    r_sw, const = real_polarization_switch(a_cr, m, epsilon0)
    if r <= r_sw:
        return _small_branch(a_cr, m, r)
    return const * _large_branch(m, epsilon0, r)


def resonance_width(a, m, epsilon):
    """Width ``m exp(-sqrt(2 m pi a^2 / epsilon))`` of the dived level."""
    return resonance_width_estimate(float(a), _check_m(m), float(epsilon))


def total_massive_density(a, a_cr, m, epsilon0, r, real_polarization=True, quad_tol=1e-12):
    """Order-of-magnitude composite ``Q_m(r) m^2 + j_real(r)``.

    The two terms carry different dimensions in the source estimate; the sum
    is reproduced literally.  ``real_polarization=False`` keeps only the
    ``Q_m m^2`` term (subcritical center).
    """
    m = _check_m(m)
    val = q_m_coordinate(a, m, r, quad_tol).q_m * m * m
    if real_polarization:
        val += real_polarization_density(a_cr, m, epsilon0, r)
    return val
