"""Complex-argument special functions.

Log-Gamma, digamma and trigamma are evaluated by upward recurrence followed by
the Stirling series; the Whittaker pair is built from the Kummer series (M)
and from the large-argument asymptotic series continued inward by Taylor
steps of the Whittaker equation (W).  The hot loops live in the kernel
backend (compiled when available, see :mod:`planar_vacuum._backend`).

All functions are pure and thread-safe.
"""
import cmath
import math

import numpy as np
from scipy import special as _sp

from ._backend import kernels as _k
from .errors import DomainError, PoleError, SpecialFunctionOverflow

__all__ = [
    "EULER_GAMMA",
    "ln_gamma",
    "gamma",
    "rgamma",
    "digamma",
    "trigamma",
    "whittaker_M",
    "whittaker_W",
    "bessel_I",
    "bessel_I_prime",
]

EULER_GAMMA = 0.57721566490153286061

# exp(709.78) is the largest finite double
_EXP_MAX = 709.0
_PARAM_MAX = 10.0


def _as_complex(z, name="z"):
    try:
        z = complex(z)
    except TypeError as exc:
        raise DomainError(f"{name} must be a number, got {type(z).__name__}") from exc
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"{name} must be finite, got {z!r}")
    return z


def _is_nonpositive_integer(z):
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def ln_gamma(z):
    """Principal branch of log Gamma(z).

    Parameters
    ----------
    z : complex
        Argument; must not be a non-positive integer.

    Returns
    -------
    complex
        Branch continuous off the negative real axis, matching the usual
        ``loggamma`` convention (Im part is ``-k pi`` on (-k, -k+1)).

    Raises
    ------
    PoleError
        If `z` is 0, -1, -2, ...
    """
    z = _as_complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"ln_gamma has a pole at z = {z.real:g}")
    if z.real < -1e6:
        raise DomainError("ln_gamma: Re z below -1e6 is outside the supported range")
    return _k.loggamma(z)


def gamma(z):
    """Gamma(z) via ``exp(ln_gamma(z))``; raises on overflow instead of returning Inf."""
    lg = ln_gamma(z)
    if lg.real > _EXP_MAX:
        raise SpecialFunctionOverflow(f"|Gamma({z})| exceeds the double range")
    return cmath.exp(lg)


def rgamma(z):
    """Reciprocal Gamma, entire: exactly 0 at the non-positive integers."""
    z = _as_complex(z)
    if _is_nonpositive_integer(z):
        return 0.0 + 0.0j
    lg = _k.loggamma(z)
    if -lg.real > _EXP_MAX:
        raise SpecialFunctionOverflow(f"1/|Gamma({z})| exceeds the double range")
    return cmath.exp(-lg)


def digamma(z):
    """Logarithmic derivative of Gamma for complex `z` (pole error at 0, -1, ...)."""
    z = _as_complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"digamma has a pole at z = {z.real:g}")
    if z.real < -1e6:
        raise DomainError("digamma: Re z below -1e6 is outside the supported range")
    return _k.digamma(z)


def trigamma(x):
    """psi'(x) for real ``x > 0``."""
    x = float(x)
    if not (x > 0.0) or not math.isfinite(x):
        raise DomainError(f"trigamma requires x > 0, got {x!r}")
    return _k.trigamma(x)


def _check_whittaker(kappa, mu, x):
    kappa = _as_complex(kappa, "kappa")
    mu = _as_complex(mu, "mu")
    x = float(x)
    if not (x > 0.0) or not math.isfinite(x):
        raise DomainError(f"Whittaker functions require x > 0, got {x!r}")
    if abs(kappa) > _PARAM_MAX or abs(mu) > _PARAM_MAX:
        raise DomainError("Whittaker parameters beyond |10| are not supported")
    return kappa, mu, x


def _finite_or_raise(vals, what):
    for v in vals:
        if not (cmath.isfinite(v)):
            raise SpecialFunctionOverflow(f"{what} overflowed the double range")
    return vals


def whittaker_M(kappa, mu, x, derivative=False):
    """Regular Whittaker function M_{kappa,mu}(x).

    Parameters
    ----------
    kappa, mu : complex
    x : float
        Positive real argument.
    derivative : bool, optional
        If True return ``(M, dM/dx)``.

    Raises
    ------
    PoleError
        When ``2 mu`` is a negative integer (the Kummer series is undefined).
    SpecialFunctionOverflow
        When ``M`` exceeds the double range (roughly ``x > 1400``).
    """
    kappa, mu, x = _check_whittaker(kappa, mu, x)
    two_mu = 2.0 * mu
    if _is_nonpositive_integer(two_mu) and two_mu.real < 0.0:
        raise PoleError(f"whittaker_M undefined for 2*mu = {two_mu.real:g}")
    # Kummer series grows like e^{x/2}
    if 0.5 * x + abs(kappa) * math.log(x) > _EXP_MAX:
        raise SpecialFunctionOverflow(f"whittaker_M overflows at x = {x:g}")
    m, dm = _finite_or_raise(_k.whittaker_m(kappa, mu, x), "whittaker_M")
    return (m, dm) if derivative else m


def whittaker_W(kappa, mu, x, derivative=False):
    """Irregular (decaying) Whittaker function W_{kappa,mu}(x).

    Large x uses the asymptotic series directly; otherwise the series is
    anchored at a large argument and the Whittaker equation is integrated
    inward by Taylor steps.
    """
    kappa, mu, x = _check_whittaker(kappa, mu, x)
    if -0.5 * x + kappa.real * math.log(x) < -_EXP_MAX - 36.0:
        raise SpecialFunctionOverflow(f"whittaker_W underflows at x = {x:g}")
    try:
        w, dw = _k.whittaker_w(kappa, mu, x)
    except ArithmeticError as exc:
        raise SpecialFunctionOverflow(str(exc)) from exc
    w, dw = _finite_or_raise((w, dw), "whittaker_W")
    return (w, dw) if derivative else w


def _check_bessel(order, x):
    order = float(order)
    x = float(x)
    if order < 0.0 or not math.isfinite(order):
        raise DomainError(f"bessel_I requires order >= 0, got {order!r}")
    if x < 0.0 or not math.isfinite(x):
        raise DomainError(f"bessel_I requires x >= 0, got {x!r}")
    return order, x


def bessel_I(order, x):
    """Modified Bessel function of the first kind I_order(x), real order >= 0."""
    order, x = _check_bessel(order, x)
    v = float(_sp.iv(order, x))
    if not np.isfinite(v):
        raise SpecialFunctionOverflow(f"bessel_I({order}, {x}) overflowed")
    return v


def bessel_I_prime(order, x):
    """Derivative dI_order/dx."""
    order, x = _check_bessel(order, x)
    v = float(_sp.ivp(order, x))
    if not np.isfinite(v):
        raise SpecialFunctionOverflow(f"bessel_I_prime({order}, {x}) overflowed")
    return v
