"""Massless supercritical induced charge density and screening flow.

Every channel with ``nu < a`` contributes ``Re[sigma / omega_-]`` to
``r^2 * density``; ``omega_-`` carries the log-periodic factor
``exp(2i theta + 2i sigma ln(E0 r))``.  For ``1/2 < a < 3/2`` the four
``nu = 1/2`` channels collapse into a closed form in terms of ``|A|``, ``z``
and the phase ``psi = Arg A``.

When the log-periodic term ``u`` has ``|u| > 1`` the average of
``Re[1/(1 - u)]`` over a log-period vanishes; ``branch="conjugate"`` swaps
``u`` for ``1/conj(u)`` so that each channel averages to ``sigma`` instead.
It is a diagnostic alternative, not the default.

Densities are in units of ``e`` per area (``e = -e0``); radii in units of
``1/E0``.
"""
import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.special import zeta

from . import specfun
from ._backend import kernels as _k
from .dirac_coulomb import Regime, make_channel
from .errors import ConvergenceError, DomainError

__all__ = [
    "SupercriticalDensityPoint",
    "RGState",
    "RGTrajectory",
    "sigma0",
    "supercritical_channels",
    "omega_minus",
    "density_general",
    "density_window",
    "density_small_sigma",
    "phase_psi",
    "phase_psi_closed",
    "window_constants",
    "log_period",
    "annulus_charge",
    "rg_flow",
    "rg_closed_form",
    "screening_radius",
    "screening_radius_paper",
]

PSI_N_MAX = 100_000
_RG_ETA = 1e-6
BRANCHES = ("printed", "conjugate")


@dataclass(frozen=True)
class SupercriticalDensityPoint:
    r: float
    density_re: float
    density_im: float
    channels: tuple
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def r2_density(self):
        return self.r * self.r * self.density_re


@dataclass(frozen=True)
class RGState:
    g: float
    log_r: float


class RGTrajectory(list):
    """List of :class:`RGState` with the screening radius attached."""

    def __init__(self, states, r_star, r_star_closed, crossed):
        super().__init__(states)
        self.r_star = r_star
        self.r_star_closed = r_star_closed
        self.crossed = crossed


def sigma0(a):
    """``sqrt(a^2 - 1/4)`` for ``a >= 1/2``."""
    a = float(a)
    if not a >= 0.5:
        raise DomainError(f"sigma0 needs a >= 1/2, got {a}")
    return math.sqrt(a * a - 0.25)


def _check_massless(sys):
    if sys.m != 0.0:
        raise DomainError("supercritical density formulas assume m = 0")
    if sys.alpha != 0.0:
        raise DomainError("supercritical density with fractional flux alpha > 0 is not supported")


def supercritical_channels(sys):
    """All ``(l, s)`` with ``nu < a``, each listed once."""
    lmax = int(math.ceil(sys.a)) + 2 + abs(sys.n)
    out = []
    for l in range(-lmax, lmax + 1):
        for s in (1, -1):
            ch = make_channel(sys, l, s)
            if ch.regime is Regime.SUPERCRITICAL and ch.sigma > 0.0:
                out.append(ch)
    return out


def _omega_factor(a, ch):
    """r-independent multiplier of ``exp(2i theta + 2i sigma ln(E0 r))``."""
    sg = ch.sigma
    s = ch.s
    half = 0.5 * (1 - s)
    ratio = complex(ch.nu, -a + s * sg) / complex(ch.nu, -a - s * sg)
    lg = (specfun.ln_gamma(2j * sg) - specfun.ln_gamma(-2j * sg)
          + specfun.ln_gamma(complex(half, a - sg)) - specfun.ln_gamma(complex(half, a + sg)))
    return ratio * cmath.exp(lg)


def _u(sys, ch, r, branch):
    fac = _omega_factor(sys.a, ch)
    u = cmath.exp(2j * sys.theta + 2j * ch.sigma * math.log(sys.E0 * r)) * fac
    if branch == "conjugate":
        u = 1.0 / u.conjugate()
    return u


def omega_minus(sys, ch, r, branch="printed"):
    """``omega_-`` of channel `ch` at radius `r`.

    ``branch="conjugate"`` replaces the log-periodic term ``u`` by
    ``1/conj(u)``.
    """
    if ch.regime is not Regime.SUPERCRITICAL:
        raise DomainError("omega_minus needs a supercritical channel")
    if not r > 0.0:
        raise DomainError("r must be > 0")
    if branch not in BRANCHES:
        raise DomainError(f"branch must be one of {BRANCHES}")
    return 1.0 - _u(sys, ch, r, branch)


def density_general(sys, r, branch="printed"):
    """Sum over supercritical channels of ``Re[sigma/omega_-] / (2 pi^2 r^2)``.

    The imaginary part is kept as a diagnostic; ``meta['max_abs_u']`` reports
    the largest modulus of the log-periodic term.
    """
    _check_massless(sys)
    chans = supercritical_channels(sys)
    if not chans:
        raise DomainError(f"no supercritical channel at a = {sys.a}")
    tot = 0j
    umax = 0.0
    for ch in chans:
        om = omega_minus(sys, ch, r, branch)
        umax = max(umax, abs(1.0 - om))
        tot += ch.sigma / om
    pref = 1.0 / (2.0 * math.pi ** 2 * r * r)
    return SupercriticalDensityPoint(
        r=float(r), density_re=pref * tot.real, density_im=pref * tot.imag,
        channels=tuple((ch.l, ch.s, ch.sigma) for ch in chans),
        meta={"branch": branch, "max_abs_u": umax, "units": "e per area, r in 1/E0"},
    )


def phase_psi(a, n_max=PSI_N_MAX):
    """``Arg A`` from its series, with an ``O(n^-3)`` tail correction."""
    s0 = sigma0(a)
    partial = _k.phase_partial(s0, int(n_max))
    tail = (8.0 * s0 ** 3 / 3.0 - 0.5 * s0) * float(zeta(3.0, n_max + 1))
    return -math.pi - 2.0 * specfun.EULER_GAMMA * s0 + partial + tail


def phase_psi_closed(a):
    """Same phase from log-Gamma values (continuous branch, equal to the series)."""
    s0 = sigma0(a)
    return (specfun.ln_gamma(2j * s0) - specfun.ln_gamma(-2j * s0)
            + specfun.ln_gamma(1j * (a - s0)) - specfun.ln_gamma(1j * (a + s0))).imag


def window_constants(a, n_max=PSI_N_MAX):
    """``(|A|, z, psi, sigma0)`` for ``1/2 < a < 3/2``."""
    s0 = sigma0(a)
    logA = (specfun.ln_gamma(2j * s0) - specfun.ln_gamma(-2j * s0)
            + specfun.ln_gamma(1j * (a - s0)) - specfun.ln_gamma(1j * (a + s0)))
    return math.exp(logA.real), 2.0 * (a - s0) / a, phase_psi(a, n_max), s0


def density_window(sys, r, n_max=PSI_N_MAX):
    """Closed form for ``1/2 < a < 3/2`` (only the ``nu = 1/2`` channels)."""
    _check_massless(sys)
    a = sys.a
    if not 0.5 < a < 1.5:
        raise DomainError(f"window formula needs 1/2 < a < 3/2, got {a}")
    if not r > 0.0:
        raise DomainError("r must be > 0")
    absA, z, psi, s0 = window_constants(a, n_max)
    ph = 2.0 * sys.theta + 2.0 * s0 * math.log(sys.E0 * r) + psi
    e1 = cmath.exp(1j * ph)
    U = absA * z * e1
    den = 1.0 - U + absA ** 2 * (a - s0) / (a + s0) * e1 * e1
    val = s0 * (2.0 - U) / den / (math.pi ** 2 * r * r)
    return SupercriticalDensityPoint(
        r=float(r), density_re=val.real, density_im=val.imag,
        channels=((0, 1, s0), (-1, 1, s0), (0, -1, s0), (1, -1, s0)),
        meta={"absA": absA, "z": z, "psi": psi, "units": "e per area, r in 1/E0"},
    )


def density_small_sigma(a, r):
    """``sigma0 / (pi^2 r^2)``, the theta-independent small-sigma0 limit."""
    if not r > 0.0:
        raise DomainError("r must be > 0")
    return sigma0(a) / (math.pi ** 2 * r * r)


def log_period(sigma):
    """Period in ``ln r`` of a channel with imaginary exponent ``sigma``."""
    return math.pi / sigma


def annulus_charge(a, r0, r):
    """Charge in ``r0 < r' < r`` from the small-sigma density, units of ``e0``."""
    if not r0 > 0.0:
        raise DomainError("r0 must be > 0")
    if r < r0:
        raise DomainError(f"need r >= r0, got r={r}, r0={r0}")
    return -2.0 * sigma0(a) / math.pi * math.log(r / r0)


def _u0(g0):
    return math.acosh(2.0 * g0)


def rg_closed_form(g0, e0_sq, t):
    """``g(t)`` with ``t = ln(r/r0)``: ``arccosh(2g)`` falls linearly, clamped at 1/2."""
    u = _u0(g0) - 2.0 * e0_sq / math.pi * np.asarray(t, dtype=float)
    return 0.5 * np.cosh(np.maximum(u, 0.0))


def screening_radius(g0, e0_sq, r0):
    """Radius where the coupling reaches 1/2: ``r0 exp(pi u0 / (2 e0^2))``."""
    return r0 * math.exp(math.pi * _u0(g0) / (2.0 * e0_sq))


def screening_radius_paper(g0, e0_sq, r0):
    """The radius as displayed in the source text (kept for comparison only)."""
    return r0 * math.exp(-(2.0 * math.pi / e0_sq) * math.log(2.0 * g0 + math.sqrt(4.0 * g0 * g0 - 1.0)))


def rg_flow(g0, e0_sq, r0, r_grid, rtol=1e-13, atol=1e-15):
    """Integrate ``dg/d ln(r/r0) = -(2 e0^2/pi) sqrt(g^2 - 1/4)`` on `r_grid`.

    Integration (DOP853) stops at ``g = 1/2 + 1e-6``; the remaining stretch
    to ``g = 1/2`` is added analytically and the coupling is clamped at 1/2
    beyond the crossing radius.

    Returns
    -------
    RGTrajectory
        ``RGState`` per grid point, with ``r_star`` (numerical crossing),
        ``r_star_closed`` and ``crossed``.
    """
    g0 = float(g0)
    e0_sq = float(e0_sq)
    if not g0 >= 0.5:
        raise DomainError(f"g0 must be >= 1/2, got {g0}")
    if not e0_sq > 0.0:
        raise DomainError("e0_sq must be > 0")
    r_grid = np.asarray(r_grid, dtype=float)
    if r_grid.ndim != 1 or len(r_grid) < 1 or np.any(np.diff(r_grid) <= 0.0):
        raise DomainError("r_grid must be strictly increasing")
    if not math.isclose(r_grid[0], r0, rel_tol=1e-12):
        raise DomainError("r_grid[0] must equal r0")
    t_grid = np.log(r_grid / r0)
    t_grid[0] = 0.0
    c = 2.0 * e0_sq / math.pi
    r_closed = screening_radius(g0, e0_sq, r0)

    if g0 == 0.5:
        states = [RGState(g=0.5, log_r=float(t)) for t in t_grid]
        return RGTrajectory(states, float(r0), float(r0), True)

    g_end = 0.5 + _RG_ETA

    def rhs(t, y):
        return [-c * math.sqrt(max(y[0] * y[0] - 0.25, 0.0))]

    def hit(t, y):
        return y[0] - g_end

    hit.terminal = True
    hit.direction = -1
    t_max = float(t_grid[-1])
    # integrate at least up to the crossing to locate it
    t_stop = max(t_max, math.pi * _u0(g0) / (2.0 * e0_sq) * 1.5 + 1.0)
    sol = solve_ivp(rhs, (0.0, t_stop), [g0], method="DOP853", rtol=rtol, atol=atol,
                    events=hit, dense_output=True)
    if sol.status == -1:
        raise ConvergenceError(f"rg_flow: integrator failed ({sol.message})")
    crossed = len(sol.t_events[0]) > 0
    if crossed:
        t_hit = float(sol.t_events[0][0])
        t_star = t_hit + math.acosh(2.0 * g_end) / c
    else:  # pragma: no cover - t_stop always beyond the crossing
        t_hit = t_star = math.inf
    g = np.empty_like(t_grid)
    for i, t in enumerate(t_grid):
        if t <= t_hit:
            g[i] = float(sol.sol(t)[0])
        elif t < t_star:
            g[i] = 0.5 * math.cosh(c * (t_star - t))
        else:
            g[i] = 0.5
    states = [RGState(g=float(gi), log_r=float(t)) for gi, t in zip(g, t_grid)]
    return RGTrajectory(states, r0 * math.exp(t_star), r_closed, crossed)
