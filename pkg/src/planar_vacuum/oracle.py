"""Extended-precision reference values for tests (requires ``mpmath``).

Slow by design; never used on production paths.  Each function returns a
Python ``complex``/``float`` rounded from a 40-digit evaluation.
"""
import math

try:
    import mpmath as mp
except ImportError:  # pragma: no cover
    mp = None

__all__ = [
    "available",
    "ln_gamma",
    "digamma",
    "digamma_series",
    "whittaker_M",
    "whittaker_W",
    "whittaker_W_integral",
    "bessel_I_series",
    "q1",
    "qr",
]

DPS = 40


def available():
    return mp is not None


def _need():
    if mp is None:
        raise ImportError("the extended-precision oracle needs mpmath")


def _c(v):
    return complex(v)


def ln_gamma(z):
    _need()
    with mp.workdps(DPS):
        return _c(mp.loggamma(mp.mpc(z)))


def digamma(z):
    _need()
    with mp.workdps(DPS):
        return _c(mp.digamma(mp.mpc(z)))


def digamma_series(z, n_terms=20000):
    """psi(z) = -C + sum_n [1/(n+1) - 1/(n+z)], midpoint-rule tail."""
    _need()
    with mp.workdps(DPS):
        z = mp.mpc(z)
        s = mp.fsum(mp.mpf(1) / (n + 1) - 1 / (n + z) for n in range(n_terms))
        # midpoint-rule tail, error O(|z| N^-3)
        N = mp.mpf(n_terms)
        tail = mp.log((N + z - mp.mpf(1) / 2) / (N + mp.mpf(1) / 2))
        return _c(-mp.euler + s + tail)


def whittaker_M(kappa, mu, x):
    _need()
    with mp.workdps(DPS):
        return _c(mp.whitm(mp.mpc(kappa), mp.mpc(mu), mp.mpf(x)))


def whittaker_W(kappa, mu, x):
    _need()
    with mp.workdps(DPS):
        return _c(mp.whitw(mp.mpc(kappa), mp.mpc(mu), mp.mpf(x)))


def whittaker_W_integral(kappa, mu, x):
    """W via its Laplace-type integral (valid for Re(1/2 + mu - kappa) > 0)."""
    _need()
    with mp.workdps(DPS):
        k, m, x = mp.mpc(kappa), mp.mpc(mu), mp.mpf(x)
        b = m - k + mp.mpf(1) / 2
        f = lambda t: t ** (b - 1) * (1 + t / x) ** (m + k - mp.mpf(1) / 2) * mp.exp(-t)
        val = mp.quad(f, [0, 1, mp.inf])
        return _c(mp.exp(-x / 2) * x ** k * val / mp.gamma(b))


def bessel_I_series(order, x, n_terms=60):
    _need()
    with mp.workdps(DPS):
        h = mp.mpf(x) / 2
        v = mp.mpf(order)
        return float(mp.fsum(h ** (2 * k + v) / (mp.factorial(k) * mp.gamma(k + v + 1)) for k in range(n_terms)))


def _nu_pm(l, alpha):
    nu = mp.mpf(l) + mp.mpf(1) / 2
    return nu, nu + alpha, nu - alpha


def q1(a, alpha, l_max=20000):
    """Direct summation with an Euler-Maclaurin tail (slow)."""
    _need()
    with mp.workdps(30):
        a = mp.mpf(a)
        alpha = mp.mpf(alpha)

        def term(l):
            nu, xp, xm = _nu_pm(l, alpha)
            return xp * mp.psi(1, xp) + xm * mp.psi(1, xm) - 2 - nu / (nu * nu - alpha * alpha)

        s = mp.nsum(term, [0, mp.inf])
        return float(2 * a / mp.pi * s)


def qr(a, alpha):
    """Higher-order part of the induced charge at 30 digits."""
    _need()
    with mp.workdps(30):
        a = mp.mpf(a)
        alpha = mp.mpf(alpha)

        def term(l):
            nu, xp, xm = _nu_pm(l, alpha)
            tot = mp.mpf(0)
            for x in (xp, xm):
                z = mp.sqrt(x * x - a * a) - 1j * a
                tot += mp.im(mp.loggamma(z)) + mp.arg(z) / 2 - mp.im(z * mp.digamma(z)) - a * x * mp.psi(1, x)
            return tot + a * nu / (nu * nu - alpha * alpha)

        s = mp.nsum(term, [0, mp.inf])
        return float(2 / mp.pi * s)
