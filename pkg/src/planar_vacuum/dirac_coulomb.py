"""Radial Dirac-Coulomb problem in 2+1 dimensions.

Radial operator (per angular channel ``(l, s)``)::

    h = i s sigma_2 d/dr + sigma_1 nu / r + sigma_3 m - a / r,
    nu = |l + mu + s/2|

Regular and irregular doublets are written with Whittaker functions of
``x = 2 lambda r``, ``lambda = sqrt(m^2 - E^2)``.  The doublet prefactor used
here is ``sqrt(m +- E) / (2 lambda sqrt(r))``: with it both doublets solve the
radial equation and their Wronskian equals the Gamma-function closed form with
unit normalization ``A_R = A_I = 1``.
"""
import cmath
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.optimize import brentq

from . import specfun
from .errors import DomainError, NoRootError, PoleError

__all__ = [
    "Regime",
    "LevelKind",
    "CoulombSystem",
    "Channel",
    "RadialDoublet",
    "SpectrumLevel",
    "make_channel",
    "regular_solution",
    "irregular_solution",
    "self_adjoint_solution",
    "boundary_form",
    "boundary_flux",
    "numerical_wronskian",
    "wronskian",
    "bound_spectrum",
    "resonance_phase",
    "resonance_spectrum_massless",
    "dived_level_residual",
    "solve_dived_resonance",
    "extension_ratio",
    "extension_map",
    "xi_from_theta",
    "ode_residual",
]


class Regime(str, Enum):
    SUBCRITICAL = "subcritical"
    SUPERCRITICAL = "supercritical"


class LevelKind(str, Enum):
    BOUND = "bound"
    RESONANCE = "resonance"


@dataclass(frozen=True)
class CoulombSystem:
    """Physical configuration.

    Parameters
    ----------
    a : float
        Coulomb coupling ``Z e0^2`` (dimensionless, >= 0).
    mu_flux : float
        Aharonov-Bohm flux, split as ``n + alpha`` with ``0 <= alpha < 1``.
    m : float
        Fermion mass (inverse length).
    theta : float
        Self-adjoint extension angle in ``[0, pi]``.
    E0 : float
        Energy scale fixing the supercritical extension.
    """

    a: float
    mu_flux: float = 0.0
    m: float = 0.0
    theta: float = 0.0
    E0: float = 1.0

    def __post_init__(self):
        for name in ("a", "mu_flux", "m", "theta", "E0"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, v)
        if self.a < 0.0:
            raise DomainError(f"a must be >= 0, got {self.a}")
        if self.m < 0.0:
            raise DomainError(f"m must be >= 0, got {self.m}")
        if not 0.0 <= self.theta <= math.pi:
            raise DomainError(f"theta must lie in [0, pi], got {self.theta}")
        if self.E0 <= 0.0:
            raise DomainError(f"E0 must be > 0, got {self.E0}")

    @property
    def n(self):
        return int(math.floor(self.mu_flux))

    @property
    def alpha(self):
        return self.mu_flux - math.floor(self.mu_flux)


@dataclass(frozen=True)
class Channel:
    """Angular sector ``(l, s)`` with derived ``nu`` and regime."""

    l: int
    s: int
    nu: float
    gamma_sq: float
    regime: Regime

    @property
    def gamma(self):
        """Real exponent (subcritical) or 0."""
        return math.sqrt(self.gamma_sq) if self.gamma_sq > 0.0 else 0.0

    @property
    def sigma(self):
        """Imaginary part of the exponent (supercritical) or 0."""
        return math.sqrt(-self.gamma_sq) if self.gamma_sq < 0.0 else 0.0

    @property
    def exponent(self):
        """``gamma`` or ``i sigma`` as a complex number."""
        return complex(self.gamma, 0.0) if self.gamma_sq >= 0.0 else complex(0.0, self.sigma)


@dataclass(frozen=True)
class RadialDoublet:
    f: complex
    g: complex
    r: float

    def norm(self):
        return math.hypot(abs(self.f), abs(self.g))


@dataclass(frozen=True)
class SpectrumLevel:
    k: int
    l: int
    s: int
    energy_re: float
    width: float
    kind: LevelKind
    meta: dict = field(default_factory=dict, compare=False)


def make_channel(sys, l, s):
    """Build the channel ``(l, s)`` of `sys`."""
    if s not in (1, -1):
        raise DomainError(f"s must be +1 or -1, got {s!r}")
    l = int(l)
    nu = abs(l + sys.mu_flux + 0.5 * s)
    gsq = nu * nu - sys.a * sys.a
    regime = Regime.SUBCRITICAL if gsq > 0.0 else Regime.SUPERCRITICAL
    return Channel(l=l, s=s, nu=nu, gamma_sq=gsq, regime=regime)


def _lambda(sys, E):
    lam_sq = sys.m * sys.m - E * E
    if not lam_sq > 0.0:
        raise DomainError(f"need |E| < m for a real decay constant (m={sys.m}, E={E})")
    return math.sqrt(lam_sq)


def _doublet(sys, ch, E, r, fn, ratio):
    if not r > 0.0:
        raise DomainError(f"r must be > 0, got {r}")
    lam = _lambda(sys, E)
    x = 2.0 * lam * r
    eta = sys.a * E / lam
    g = ch.exponent
    w_plus = fn(eta + 0.5 * ch.s, g, x)
    w_minus = fn(eta - 0.5 * ch.s, g, x)
    pref = 1.0 / (2.0 * lam * math.sqrt(r))
    f = math.sqrt(sys.m + E) * pref * (w_plus + ratio * w_minus)
    gg = math.sqrt(sys.m - E) * pref * (w_plus - ratio * w_minus)
    return RadialDoublet(f=complex(f), g=complex(gg), r=float(r))


def _ratio_regular(sys, ch, E):
    lam = _lambda(sys, E)
    return (ch.s * ch.exponent - sys.a * E / lam) / (ch.nu + sys.m * sys.a / lam)


def _ratio_irregular(sys, ch, E):
    lam = _lambda(sys, E)
    return complex(sys.m * sys.a / lam - ch.s * ch.nu) ** ch.s


def regular_solution(sys, ch, E, r):
    """Doublet regular at the origin (``~ r^gamma``), ``A_R = 1``."""
    return _doublet(sys, ch, E, r, specfun.whittaker_M, _ratio_regular(sys, ch, E))


def irregular_solution(sys, ch, E, r):
    """Doublet decaying as ``exp(-lambda r)``, ``A_I = 1``."""
    return _doublet(sys, ch, E, r, specfun.whittaker_W, _ratio_irregular(sys, ch, E))


def self_adjoint_solution(sys, ch, E, r, xi):
    """Combination ``F_R + xi F_I`` used for ``0 < gamma < 1/2``."""
    dr = regular_solution(sys, ch, E, r)
    di = irregular_solution(sys, ch, E, r)
    return RadialDoublet(f=dr.f + xi * di.f, g=dr.g + xi * di.g, r=dr.r)


def boundary_form(d1, d2):
    """Sesquilinear form ``F1^dagger i sigma_2 F2 = conj(f1) g2 - conj(g1) f2``."""
    return d1.f.conjugate() * d2.g - d1.g.conjugate() * d2.f


def boundary_flux(d):
    """Radial current ``(conj(f) g - conj(g) f) / i``; real by construction."""
    return (boundary_form(d, d) / 1j).real


def numerical_wronskian(sys, ch, E, r):
    """``g_R f_I - f_R g_I`` evaluated from the doublets at radius `r`."""
    dr = regular_solution(sys, ch, E, r)
    di = irregular_solution(sys, ch, E, r)
    return dr.g * di.f - dr.f * di.g


def wronskian(sys, ch, E):
    """Closed-form Wronskian with ``A_R = A_I = 1``.

    ``-2 Gamma(2 gamma) / Gamma(gamma + 1/2 - s/2 - aE/lambda) * s gamma / (nu + m a / lambda)``

    The denominator Gamma is handled through its reciprocal, so the Wronskian
    is exactly zero at bound-state energies.

    Raises
    ------
    DomainError
        If the channel is supercritical or ``|E| >= m``.
    PoleError
        At ``gamma = 0`` (``Gamma(2 gamma)`` diverges).
    """
    if ch.regime is not Regime.SUBCRITICAL:
        raise DomainError("closed-form Wronskian needs a subcritical channel")
    lam = _lambda(sys, E)
    g = ch.gamma
    if g == 0.0:
        raise PoleError("Wronskian diverges at gamma = 0")
    z = g + 0.5 - 0.5 * ch.s - sys.a * E / lam
    return -2.0 * specfun.gamma(2.0 * g) * specfun.rgamma(z) * ch.s * g / (ch.nu + sys.m * sys.a / lam)


def bound_spectrum(sys, k, l, s=1):
    """Bound level ``E_{k,l}`` for the subcritical massive problem.

    Channel mapping: ``s = +1`` uses ``(l, +1)`` and ``s = -1`` its partner
    ``(-l, -1)``, so ``nu = |l + 1/2 + s mu|``; at zero flux both give
    ``nu = l + 1/2`` (the spin degeneracy).
    """
    k = int(k)
    l = int(l)
    if k < 0 or l < 0:
        raise DomainError("k and l must be non-negative")
    if not sys.m > 0.0:
        raise DomainError("bound spectrum needs m > 0")
    ch = make_channel(sys, l if s == 1 else -l, s)
    if ch.regime is not Regime.SUBCRITICAL:
        raise DomainError(f"a = {sys.a} is not below nu = {ch.nu}")
    kg = k + ch.gamma
    E = sys.m * kg / math.hypot(kg, sys.a)
    return SpectrumLevel(
        k=k, l=l, s=s, energy_re=E, width=0.0, kind=LevelKind.BOUND,
        meta={"nu": ch.nu, "gamma": ch.gamma, "xi": 0.0},
    )


def resonance_phase(a):
    """``tau = 1/(2a) + Im psi(i a) + pi/2``."""
    return 0.5 / a + specfun.digamma(1j * a).imag + 0.5 * math.pi


def resonance_spectrum_massless(sys, k, l=0, s=1):
    """Quasistationary massless level ``k`` in a supercritical channel.

    ``|Re E| = E0 |cos tau| exp(-k/(2 sigma) + theta/sigma + pi coth(pi a)/(2a))``,
    placed in the hole sector (``Re E < 0``); ``width = |tan tau| |Re E|``.
    The width is an order-of-magnitude estimate (flagged in ``meta``).
    """
    if sys.m != 0.0:
        raise DomainError("massless resonance ladder needs m = 0")
    ch = make_channel(sys, l, s)
    if ch.regime is not Regime.SUPERCRITICAL:
        raise DomainError(f"channel (l={l}, s={s}) is subcritical at a = {sys.a}")
    sigma = ch.sigma
    a = sys.a
    tau = resonance_phase(a)
    expo = -k / (2.0 * sigma) + sys.theta / sigma + math.pi / math.tanh(math.pi * a) / (2.0 * a)
    mag = sys.E0 * abs(math.cos(tau)) * math.exp(expo)
    meta = {"tau": tau, "sigma": sigma, "nu": ch.nu, "width_is_estimate": True}
    if sigma > 0.3:
        meta["warning"] = "sigma > 0.3: small-sigma ladder formula outside its validity range"
    return SpectrumLevel(
        k=int(k), l=int(l), s=s, energy_re=-mag, width=abs(math.tan(tau)) * mag,
        kind=LevelKind.RESONANCE, meta=meta,
    )


def _sigma0(a):
    s2 = a * a - 0.25
    if not s2 > 0.0:
        raise DomainError(f"dived level needs a > 1/2, got {a}")
    return math.sqrt(s2)


def dived_level_residual(sys, eps):
    """Left minus right side of the dived-level equation at ``eps = -(E + m) > 0``."""
    m = sys.m
    a = sys.a
    s0 = _sigma0(a)
    z = math.sqrt(m * a * a / (2.0 * eps))
    return (
        specfun.ln_gamma(2j * s0).imag
        - s0 * specfun.digamma(-1j * z).real
        - 0.5 * s0 * math.log(8.0 * eps / m)
        + math.atan(s0 * (1.0 - 2.0 * a * a * eps / m))
        + sys.theta
    )


def solve_dived_resonance(sys, eps_min=1e-12, n_scan=400, xtol=1e-15):
    """Energy ``-(m + eps)`` and width of the level that dived below ``-m``.

    The residual is scanned on a log grid over ``[eps_min m, m]``, every sign
    change is refined with Brent's method and the largest root is returned.

    Raises
    ------
    NoRootError
        If the bracket holds no sign change; ``residual`` carries the smallest
        scanned ``|residual|``.
    """
    if not sys.m > 0.0:
        raise DomainError("dived level needs m > 0")
    s0 = _sigma0(sys.a)
    m = sys.m
    grid = np.geomspace(eps_min * m, m, n_scan)
    vals = np.array([dived_level_residual(sys, e) for e in grid])
    roots = []
    for i in range(len(grid) - 1):
        if vals[i] == 0.0:
            roots.append(grid[i])
        elif vals[i] * vals[i + 1] < 0.0:
            roots.append(brentq(lambda e: dived_level_residual(sys, e), grid[i], grid[i + 1],
                                xtol=xtol * m, rtol=4.0 * np.finfo(float).eps, maxiter=200))
    if not roots:
        raise NoRootError(
            f"no dived level for a={sys.a}, theta={sys.theta} in [{eps_min:g} m, m]",
            residual=float(np.min(np.abs(vals))),
        )
    eps = max(roots)
    res = dived_level_residual(sys, eps)
    width = resonance_width_estimate(sys.a, m, eps)
    return SpectrumLevel(
        k=0, l=0, s=1, energy_re=-(m + eps), width=width, kind=LevelKind.RESONANCE,
        meta={"epsilon": eps, "residual": res, "sigma0": s0, "n_roots": len(roots),
              "width_is_estimate": True},
    )


def resonance_width_estimate(a, m, eps):
    """``m exp(-sqrt(2 m pi a^2 / eps))``."""
    if not eps > 0.0:
        raise DomainError("eps must be > 0")
    return m * math.exp(-math.sqrt(2.0 * m * math.pi * a * a / eps))


def _extension_terms(sys, ch, E):
    if ch.regime is not Regime.SUPERCRITICAL:
        raise DomainError("extension angle is defined for supercritical channels")
    lam = _lambda(sys, E)
    sg = ch.sigma
    eta = sys.a * E / lam
    base = 0.5 - 0.5 * ch.s - eta
    c = ch.nu + sys.a * (sys.m + E) / lam
    scale = cmath.exp(-2j * sg * math.log(2.0 * lam / sys.E0))
    P = (scale * complex(c, ch.s * sg) / complex(c, -ch.s * sg)
         * cmath.exp(specfun.ln_gamma(2j * sg) - specfun.ln_gamma(complex(base, sg))))
    Q = cmath.exp(specfun.ln_gamma(-2j * sg) - specfun.ln_gamma(complex(base, -sg)))
    return P, Q


def extension_ratio(sys, ch, E, theta=None):
    """``A_R / (xi A_I)`` as a function of the extension angle."""
    theta = sys.theta if theta is None else theta
    P, Q = _extension_terms(sys, ch, E)
    return cmath.exp(2j * theta) * P - Q


def xi_from_theta(sys, ch, E, theta=None):
    """Mixing coefficient ``xi`` (with ``A_R = A_I = 1``) for angle `theta`."""
    return 1.0 / extension_ratio(sys, ch, E, theta)


def extension_map(sys, ch, E, xi):
    """Extension angle ``theta in [0, pi)`` belonging to mixing coefficient `xi`."""
    xi = complex(xi)
    if xi == 0:
        raise DomainError("xi = 0 has no finite extension angle")
    P, Q = _extension_terms(sys, ch, E)
    w = (1.0 / xi + Q) / P
    return (0.5 * cmath.phase(w)) % math.pi


def _radial_operator(sys, ch, E, r, F, dF):
    f, g = F
    df, dg = dF
    s, nu, a, m = ch.s, ch.nu, sys.a, sys.m
    eq1 = s * dg + nu / r * g + (m - a / r - E) * f
    eq2 = -s * df + nu / r * f + (-m - a / r - E) * g
    return eq1, eq2


def ode_residual(sys, ch, E, doublet_fn, r):
    """Relative residual of ``(h - E) F = 0`` for a sampled doublet.

    Derivatives use the 5-point central stencil with ``h = 1e-4 r`` and one
    Richardson step; the residual is normalized by ``|F| (m + |E| + (nu + a)/r)``.
    """
    if not r > 0.0:
        raise DomainError("r must be > 0")

    def stencil(h):
        pts = [doublet_fn(r + k * h) for k in (-2, -1, 1, 2)]
        df = (pts[0].f - 8.0 * pts[1].f + 8.0 * pts[2].f - pts[3].f) / (12.0 * h)
        dg = (pts[0].g - 8.0 * pts[1].g + 8.0 * pts[2].g - pts[3].g) / (12.0 * h)
        return df, dg

    h = 1e-4 * r
    d1 = stencil(h)
    d2 = stencil(0.5 * h)
    df = (16.0 * d2[0] - d1[0]) / 15.0
    dg = (16.0 * d2[1] - d1[1]) / 15.0
    d = doublet_fn(r)
    e1, e2 = _radial_operator(sys, ch, E, r, (d.f, d.g), (df, dg))
    scale = d.norm() * (sys.m + abs(E) + (ch.nu + sys.a) / r)
    if scale == 0.0:
        return math.inf
    return max(abs(e1), abs(e2)) / scale
