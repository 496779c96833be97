"""Induced vacuum charge of massless fermions in the subcritical regime.

The charge is the sum of a part linear in the coupling,

    Q1 = (2a/pi) sum_l [x+ psi'(x+) + x- psi'(x-) - 2 - nu/(nu^2 - alpha^2)],

with ``nu = l + 1/2`` and ``x+- = nu +- alpha``, and a remainder ``Qr`` of
order ``a^3`` built from complex log-Gamma and digamma at ``gamma+- - i a``.
Both series are summed directly up to ``l_max`` and completed by their
large-``l`` expansion in inverse even powers of ``x+-``, which is summed in
closed form with Hurwitz zeta functions.

Charges are in units of ``e`` (``e = -e0 < 0``); a positive value therefore
means screening of a positive Coulomb center.
"""
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import brentq
from scipy.special import zeta

from . import specfun
from ._backend import kernels as _k
from ._kernels_py import BERNOULLI_EVEN
from .errors import ConvergenceError, DomainError, SupercriticalExcursionError

__all__ = [
    "Accel",
    "SeriesControl",
    "InducedCharge",
    "q1",
    "qr",
    "q_ind",
    "q1_summand",
    "qr_summand",
    "effective_coupling_subcritical",
]

_N_ASYM = 12
_EPS = np.finfo(float).eps


class Accel(str, Enum):
    NONE = "none"
    RICHARDSON_TAIL = "richardson_tail"


@dataclass(frozen=True)
class SeriesControl:
    """Truncation policy for the partial-wave sums.

    ``accel=RICHARDSON_TAIL`` adds the analytic remainder beyond ``l_max``;
    ``accel=NONE`` reports that remainder as the tail estimate instead.
    """

    l_max: int = 2000
    tail_tol: float = 1e-10
    accel: Accel = Accel.RICHARDSON_TAIL

    def __post_init__(self):
        if int(self.l_max) < 8:
            raise DomainError(f"l_max must be >= 8, got {self.l_max}")
        if not self.tail_tol > 0.0:
            raise DomainError(f"tail_tol must be > 0, got {self.tail_tol}")
        object.__setattr__(self, "l_max", int(self.l_max))
        object.__setattr__(self, "accel", Accel(self.accel))


@dataclass(frozen=True)
class InducedCharge:
    q1: float
    qr: float
    total: float
    tail_estimate: float
    l_used: int


DEFAULT_CONTROL = SeriesControl()


def _check(a, alpha):
    a = float(a)
    alpha = float(alpha)
    if not (math.isfinite(a) and math.isfinite(alpha)):
        raise DomainError("a and alpha must be finite")
    if not abs(alpha) < 0.5:
        raise DomainError(f"|alpha| must be < 1/2, got {alpha}")
    if not abs(a) < 0.5 - abs(alpha):
        raise DomainError(
            f"|a| = {abs(a)} reaches the lowest channel nu = {0.5 - abs(alpha)}; "
            "a supercritical channel is present"
        )
    return a, abs(alpha)


def _hurwitz_pair(p, L, alpha):
    """sum_{l > L} (x+^{-2p} + x-^{-2p})."""
    q0 = L + 1.5
    return float(zeta(2 * p, q0 + alpha) + zeta(2 * p, q0 - alpha))


def _tail(coeffs, L, alpha):
    """Sum of ``c_p x^{-2p}`` over l > L; returns (tail, size of last term)."""
    total = 0.0
    last = 0.0
    for p, c in coeffs:
        if c == 0.0:
            continue
        last = c * _hurwitz_pair(p, L, alpha)
        total += last
    return total, abs(last)


def _q1_coeffs():
    return [(k + 1, BERNOULLI_EVEN[k]) for k in range(_N_ASYM)]


def _qr_coeffs(a):
    """Coefficients of the large-x summand of Qr in powers x^{-2p}.

    Uses ``sin(n asin t) / (n t) = 2F1((1+n)/2, (1-n)/2; 3/2; t^2)`` with
    ``t = a/x``; only B_4 onward contributes.
    """
    out = {}
    a2 = a * a
    for k in range(2, _N_ASYM + 1):
        n = 2 * k - 1
        b = BERNOULLI_EVEN[k - 1]
        # hypergeometric coefficients d_j for j >= 1
        d = 1.0
        for j in range(1, _N_ASYM + 1 - k + 1):
            d *= (0.5 * (1 + n) + j - 1) * (0.5 * (1 - n) + j - 1) / ((1.5 + j - 1) * j)
            if d == 0.0:
                break
            p = k + j
            out[p] = out.get(p, 0.0) + a * b * d * a2 ** j
    return sorted(out.items())


def _finish(partial, coeffs, alpha, ctl, pref, name):
    L = ctl.l_max
    tail, last = _tail(coeffs, L, alpha)
    rounding = 16.0 * _EPS * (abs(partial) + abs(tail)) * math.sqrt(L + 1)
    if ctl.accel is Accel.RICHARDSON_TAIL:
        value = partial + tail
        est = last + rounding
    else:
        value = partial
        est = abs(tail) + rounding
    value *= pref
    est *= abs(pref)
    if est > ctl.tail_tol:
        raise ConvergenceError(
            f"{name}: tail estimate {est:.3g} exceeds tail_tol={ctl.tail_tol:g} at l_max={L}"
        )
    return value, est


def _q1_signed(a, alpha, ctl):
    if a == 0.0:
        return 0.0, 0.0
    partial = _k.q1_partial(alpha, ctl.l_max)
    return _finish(partial, _q1_coeffs(), alpha, ctl, 2.0 * a / math.pi, "q1")


def _qr_signed(a, alpha, ctl):
    if a == 0.0:
        return 0.0, 0.0
    sgn = math.copysign(1.0, a)
    aa = abs(a)
    partial = _k.qr_partial(aa, alpha, ctl.l_max)
    v, est = _finish(partial, _qr_coeffs(aa), alpha, ctl, 2.0 / math.pi, "qr")
    return sgn * v, est


def q1(a, alpha=0.0, ctl=DEFAULT_CONTROL):
    """Linear (one-loop) part of the induced charge, units of ``e``.

    Parameters
    ----------
    a : float
        Coupling, ``|a| < 1/2 - |alpha|``.
    alpha : float
        Fractional flux, ``|alpha| < 1/2``; the result is even in alpha.
    ctl : SeriesControl

    Raises
    ------
    DomainError
        If a channel is supercritical.
    ConvergenceError
        If the tail estimate exceeds ``ctl.tail_tol``.
    """
    a, alpha = _check(a, alpha)
    return _q1_signed(a, alpha, ctl)[0]


def qr(a, alpha=0.0, ctl=DEFAULT_CONTROL):
    """Higher-order (``O(a^3)``) part of the induced charge, units of ``e``.

    Odd in `a` and even in `alpha` by construction.
    """
    a, alpha = _check(a, alpha)
    return _qr_signed(a, alpha, ctl)[0]


def q_ind(a, alpha=0.0, ctl=DEFAULT_CONTROL):
    """Total induced charge ``Q1 + Qr`` with its combined tail estimate."""
    a, alpha = _check(a, alpha)
    v1, e1 = _q1_signed(a, alpha, ctl)
    vr, er = _qr_signed(a, alpha, ctl)
    return InducedCharge(q1=v1, qr=vr, total=v1 + vr, tail_estimate=e1 + er, l_used=ctl.l_max)


def q1_summand(l, alpha=0.0):
    """Term ``l`` of the Q1 series (without the ``2a/pi`` prefactor)."""
    alpha = abs(float(alpha))
    nu = l + 0.5
    xp, xm = nu + alpha, nu - alpha
    return xp * specfun.trigamma(xp) + xm * specfun.trigamma(xm) - 2.0 - nu / (nu * nu - alpha * alpha)


def qr_summand(l, a, alpha=0.0):
    """Term ``l`` of the Qr series (without the ``2/pi`` prefactor)."""
    alpha = abs(float(alpha))
    nu = l + 0.5
    tot = a * nu / (nu * nu - alpha * alpha)
    for x in (nu + alpha, nu - alpha):
        z = complex(math.sqrt(x * x - a * a), -a)
        tot += (specfun.ln_gamma(z).imag + 0.5 * math.atan2(z.imag, z.real)
                - (z * specfun.digamma(z)).imag - a * x * specfun.trigamma(x))
    return tot


def effective_coupling_subcritical(a_bare, e0_sq, ctl=DEFAULT_CONTROL, alpha=0.0,
                                   degeneracy=1, damping=0.5, tol=1e-12, max_iter=500):
    """Hartree fixed point ``a_eff = a_bare - N e0^2 Q_ind(a_eff)``.

    A damped iteration is tried first; if it stalls or steps outside the
    subcritical range, the fixed point is bracketed and solved with Brent's
    method (the defining function is strictly increasing in ``a_eff``).

    Parameters
    ----------
    a_bare : float
        Bare coupling (>= 0).
    e0_sq : float
        Squared elementary charge (> 0).
    degeneracy : int
        Number of fermion flavours ``N`` screening the center (1 by default;
        4 for spin and valley in graphene).

    Raises
    ------
    SupercriticalExcursionError
        If no subcritical fixed point exists.
    """
    a_bare = float(a_bare)
    e0_sq = float(e0_sq)
    if a_bare < 0.0:
        raise DomainError("a_bare must be >= 0")
    if not e0_sq > 0.0:
        raise DomainError("e0_sq must be > 0")
    if a_bare == 0.0:
        return 0.0
    alpha = abs(float(alpha))
    a_crit = 0.5 - alpha
    coef = degeneracy * e0_sq

    def charge(a):
        return q_ind(a, alpha, ctl).total

    def resid(a):
        return a + coef * charge(a) - a_bare

    a = min(a_bare, a_crit * (1.0 - 1e-9))
    for _ in range(max_iter):
        try:
            target = a_bare - coef * charge(a)
        except DomainError:
            break
        nxt = (1.0 - damping) * a + damping * target
        if not 0.0 <= nxt < a_crit:
            break
        if abs(nxt - a) < tol:
            a = nxt
            if abs(resid(a)) < 1e-10:
                return a
            break
        a = nxt

    hi = min(a_bare, a_crit * (1.0 - 1e-12))
    r_hi = resid(hi)
    if r_hi < 0.0:
        raise SupercriticalExcursionError(
            f"no subcritical fixed point: a_eff would reach {a_crit} "
            f"(a_bare={a_bare}, e0^2={e0_sq}, N={degeneracy})"
        )
    root = brentq(resid, 0.0, hi, xtol=1e-15, rtol=4.0 * _EPS, maxiter=200)
    if abs(resid(root)) > 1e-10:
        raise ConvergenceError(f"Hartree fixed point residual {resid(root):.3g} above 1e-10")
    return root
