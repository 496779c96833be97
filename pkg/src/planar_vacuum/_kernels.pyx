# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels (see ``_kernels_py`` for the reference twin)."""

from libc.math cimport sqrt, log, exp, sin, asin, atan, fabs, atan2

cdef extern from "complex.h" nogil:
    double complex clog(double complex)
    double complex cexp(double complex)
    double cabs(double complex)
    double creal(double complex)
    double cimag(double complex)
    double carg(double complex)

BACKEND = "compiled"

cdef double[15] BERN
BERN[:] = [
    1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0,
    -174611.0 / 330.0, 854513.0 / 138.0, -236364091.0 / 2730.0,
    8553103.0 / 6.0, -23749461029.0 / 870.0, 8615841276005.0 / 14322.0,
]

cdef double HALF_LOG_2PI = 0.9189385332046728
cdef double STIRLING_MIN = 10.0
cdef double ASYM_MIN_X = 10.0
cdef double WHITTAKER_EPS = 1e-17
cdef double TAYLOR_MAX_STEP = 2.0
cdef int TAYLOR_MAX_TERMS = 400


cdef inline void _neumaier(double *s, double *c, double x) nogil:
    cdef double t = s[0] + x
    if fabs(s[0]) >= fabs(x):
        c[0] += (s[0] - t) + x
    else:
        c[0] += (x - t) + s[0]
    s[0] = t


cdef double complex _loggamma(double complex z) nogil:
    cdef double shift = 0.0
    cdef double complex acc = 0.0
    cdef double complex w, inv, inv2, p, series
    cdef int k, n2
    while creal(z) + shift < STIRLING_MIN:
        acc = acc + clog(z + shift)
        shift += 1.0
    w = z + shift
    inv = 1.0 / w
    inv2 = inv * inv
    series = 0.0
    p = inv
    for k in range(9):
        n2 = 2 * k + 2
        series = series + BERN[k] / (n2 * (n2 - 1)) * p
        p = p * inv2
    return (w - 0.5) * clog(w) - w + HALF_LOG_2PI + series - acc


cdef double complex _digamma(double complex z) nogil:
    cdef double shift = 0.0
    cdef double complex acc = 0.0
    cdef double complex w, inv2, p, series
    cdef int k
    while creal(z) + shift < STIRLING_MIN:
        acc = acc + 1.0 / (z + shift)
        shift += 1.0
    w = z + shift
    inv2 = 1.0 / (w * w)
    series = 0.0
    p = inv2
    for k in range(9):
        series = series + BERN[k] / (2 * k + 2) * p
        p = p * inv2
    return clog(w) - 0.5 / w - series - acc


cdef double _trigamma(double x) nogil:
    cdef double acc = 0.0
    cdef double inv, inv2, p, series
    cdef int k
    while x < STIRLING_MIN:
        acc += 1.0 / (x * x)
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    series = 0.0
    p = inv2 * inv
    for k in range(9):
        series += BERN[k] * p
        p *= inv2
    return acc + inv + 0.5 * inv2 + series


def loggamma(z):
    return _loggamma(complex(z))


def digamma(z):
    return _digamma(complex(z))


def trigamma(double x):
    return _trigamma(x)


# -- Whittaker functions ---------------------------------------------------

def whittaker_m(kappa, mu, double x):
    """Return ``(M, dM/dx)`` from the Kummer series."""
    cdef double complex k = complex(kappa)
    cdef double complex m = complex(mu)
    cdef double complex a = m - k + 0.5
    cdef double complex b = 1.0 + 2.0 * m
    cdef double complex term = 1.0
    cdef double complex s = 1.0
    cdef double complex s1 = m + 0.5
    cdef double complex pref
    cdef long n = 0
    cdef int quiet = 0
    cdef double amag = cabs(a)
    while n < 100000:
        term = term * (a + n) * x / ((b + n) * (n + 1))
        n += 1
        s = s + term
        s1 = s1 + (n + m + 0.5) * term
        if cabs(term) <= WHITTAKER_EPS * cabs(s) and n > amag + x:
            quiet += 1
            if quiet >= 2:
                break
        else:
            quiet = 0
    pref = cexp(-0.5 * x + (m + 0.5) * log(x))
    return pref * s, pref * (s1 / x - 0.5 * s)


cdef int _w_asymptotic(double complex k, double complex m, double x,
                       double complex *w, double complex *dw) nogil:
    cdef double complex a = 0.5 + m - k
    cdef double complex b = 0.5 - m - k
    cdef double complex term = 1.0
    cdef double complex s = 1.0
    cdef double complex sd = 0.0
    cdef double complex pref
    cdef double best = 1.0
    cdef double mag
    cdef int converged = 0
    cdef int n
    for n in range(500):
        term = -term * (a + n) * (b + n) / ((n + 1) * x)
        mag = cabs(term)
        if mag == 0.0:
            converged = 1
            break
        if mag > best:
            break
        best = mag
        s = s + term
        sd = sd - (n + 1) * term / x
        if mag <= WHITTAKER_EPS * cabs(s):
            converged = 1
            break
    if not converged:
        return 0
    pref = cexp(-0.5 * x + k * log(x))
    w[0] = pref * s
    dw[0] = w[0] * (k / x - 0.5) + pref * sd
    return 1


cdef void _taylor_step(double complex k, double complex m, double x0,
                       double complex *w, double complex *dw, double h) nogil:
    cdef double complex q = 0.25 - m * m
    cdef double complex p0 = 0.25 * x0 * x0 - k * x0 - q
    cdef double complex p1 = 0.5 * x0 - k
    cdef double x02 = x0 * x0
    cdef double complex val = w[0] + dw[0] * h
    cdef double complex der = dw[0]
    cdef double hp = h
    cdef double complex cnm2 = 0.0, cnm1 = 0.0, cn = w[0], cn1 = dw[0], cn2, t, dterm
    cdef int quiet = 0
    cdef int n
    for n in range(TAYLOR_MAX_TERMS):
        cn2 = (p0 * cn + p1 * cnm1 + 0.25 * cnm2
               - 2.0 * x0 * (n + 1) * n * cn1 - n * (n - 1) * cn) / (x02 * (n + 2) * (n + 1))
        dterm = (n + 2) * cn2 * hp
        hp *= h
        t = cn2 * hp
        val = val + t
        der = der + dterm
        if cabs(t) + cabs(dterm * h) <= WHITTAKER_EPS * (cabs(val) + cabs(der * h)):
            quiet += 1
            if quiet >= 3:
                break
        else:
            quiet = 0
        cnm2 = cnm1
        cnm1 = cn
        cn = cn1
        cn1 = cn2
    w[0] = val
    dw[0] = der


def whittaker_w(kappa, mu, double x):
    """Return ``(W, dW/dx)``: asymptotic series, Taylor-continued inward."""
    cdef double complex k = complex(kappa)
    cdef double complex m = complex(mu)
    cdef double complex w = 0.0, dw = 0.0
    cdef double x0, step
    if x >= 12.0:
        if _w_asymptotic(k, m, x, &w, &dw):
            return w, dw
    x0 = max(36.0, x, 4.0 * (cabs(k) + cabs(m)) ** 2)
    while not _w_asymptotic(k, m, x0, &w, &dw):
        x0 *= 1.5
        if x0 > 5000.0:
            raise ArithmeticError("asymptotic Whittaker W series did not converge")
    while x0 > x:
        step = min(0.5 * x0, TAYLOR_MAX_STEP)
        if x0 - step <= x * (1.0 + 1e-15):
            step = x0 - x
        _taylor_step(k, m, x0, &w, &dw, -step)
        if step == x0 - x:
            x0 = x
        else:
            x0 = x0 - step
    return w, dw


# -- series kernels ----------------------------------------------------------

cdef double _q1_term_asym(double x) nogil:
    cdef double inv2 = 1.0 / (x * x)
    cdef double p = inv2
    cdef double s = 0.0
    cdef int k
    for k in range(12):
        s += BERN[k] * p
        p *= inv2
    return s


def q1_partial(double alpha, long l_max):
    """Sum over l = 0..l_max of the one-loop polarization summand."""
    cdef double s = 0.0, c = 0.0
    cdef double nu, xp, xm
    cdef long l
    alpha = fabs(alpha)
    with nogil:
        for l in range(l_max + 1):
            nu = l + 0.5
            xp = nu + alpha
            xm = nu - alpha
            if xm >= ASYM_MIN_X:
                _neumaier(&s, &c, _q1_term_asym(xp) + _q1_term_asym(xm))
            else:
                _neumaier(&s, &c, xp * _trigamma(xp) + xm * _trigamma(xm) - 2.0
                          - nu / (nu * nu - alpha * alpha))
    return s + c


cdef double _qr_term_asym(double a, double x) nogil:
    cdef double phi = asin(a / x)
    cdef double inv2 = 1.0 / (x * x)
    cdef double p = inv2 * inv2
    cdef double acc = 0.0
    cdef int k, n
    for k in range(1, 12):
        n = 2 * k + 1
        acc += BERN[k] * p * (x * sin(n * phi) / n - a)
        p *= inv2
    return acc


def qr_partial(double a, double alpha, long l_max):
    """Sum over l = 0..l_max of the higher-order (a^3 and beyond) summand."""
    cdef double s = 0.0, c = 0.0
    cdef double nu, xp, xm, im
    cdef double complex zp, zm
    cdef long l
    alpha = fabs(alpha)
    with nogil:
        for l in range(l_max + 1):
            nu = l + 0.5
            xp = nu + alpha
            xm = nu - alpha
            if xm >= ASYM_MIN_X:
                _neumaier(&s, &c, _qr_term_asym(a, xp) + _qr_term_asym(a, xm))
                continue
            zp = sqrt(xp * xp - a * a) - 1j * a
            zm = sqrt(xm * xm - a * a) - 1j * a
            im = (cimag(_loggamma(zp)) + cimag(_loggamma(zm))
                  + 0.5 * (carg(zp) + carg(zm))
                  - cimag(zp * _digamma(zp)) - cimag(zm * _digamma(zm))
                  + a * nu / (nu * nu - alpha * alpha)
                  - a * (xp * _trigamma(xp) + xm * _trigamma(xm)))
            _neumaier(&s, &c, im)
    return s + c


def phase_partial(double sigma0, long n_max):
    """Partial sum n = 1..n_max of the Arg A series."""
    cdef double s2 = 2.0 * sigma0
    cdef double s = 0.0, c = 0.0
    cdef double dn
    cdef long n
    with nogil:
        for n in range(1, n_max + 1):
            dn = <double> n
            _neumaier(&s, &c, s2 / dn - 2.0 * atan(s2 / dn) + atan(s2 * dn / (dn * dn + 0.25)))
    return s + c
