"""Pure-Python hot kernels.

Same call signatures as the compiled ``_kernels`` extension; selected at import
time when the extension is unavailable.  Arguments are assumed validated by
the public wrappers (no pole or domain checks here).
"""
import cmath
import math

# B_2, B_4, ..., B_30
BERNOULLI_EVEN = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
)

HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
STIRLING_MIN = 10.0
ASYM_MIN_X = 10.0
WHITTAKER_EPS = 1e-17
TAYLOR_MAX_STEP = 2.0
TAYLOR_MAX_TERMS = 400

BACKEND = "python"


def loggamma(z):
    z = complex(z)
    shift = 0.0
    acc = 0.0j
    while z.real + shift < STIRLING_MIN:
        acc += cmath.log(z + shift)
        shift += 1.0
    w = z + shift
    inv = 1.0 / w
    inv2 = inv * inv
    series = 0.0j
    p = inv
    for k in range(9):
        n2 = 2 * k + 2
        series += BERNOULLI_EVEN[k] / (n2 * (n2 - 1)) * p
        p *= inv2
    return (w - 0.5) * cmath.log(w) - w + HALF_LOG_2PI + series - acc


def digamma(z):
    z = complex(z)
    shift = 0.0
    acc = 0.0j
    while z.real + shift < STIRLING_MIN:
        acc += 1.0 / (z + shift)
        shift += 1.0
    w = z + shift
    inv2 = 1.0 / (w * w)
    series = 0.0j
    p = inv2
    for k in range(9):
        series += BERNOULLI_EVEN[k] / (2 * k + 2) * p
        p *= inv2
    return cmath.log(w) - 0.5 / w - series - acc


def trigamma(x):
    x = float(x)
    acc = 0.0
    while x < STIRLING_MIN:
        acc += 1.0 / (x * x)
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    series = 0.0
    p = inv2 * inv
    for k in range(9):
        series += BERNOULLI_EVEN[k] * p
        p *= inv2
    return acc + inv + 0.5 * inv2 + series


# -- Whittaker functions ---------------------------------------------------


def whittaker_m(kappa, mu, x):
    """Return ``(M, dM/dx)`` from the Kummer series."""
    kappa = complex(kappa)
    mu = complex(mu)
    a = mu - kappa + 0.5
    b = 1.0 + 2.0 * mu
    term = 1.0 + 0.0j
    s = term
    s1 = (mu + 0.5) * term
    n = 0
    quiet = 0
    while n < 100000:
        term = term * (a + n) * x / ((b + n) * (n + 1))
        n += 1
        s += term
        s1 += (n + mu + 0.5) * term
        if abs(term) <= WHITTAKER_EPS * abs(s) and n > abs(a) + x:
            quiet += 1
            if quiet >= 2:
                break
        else:
            quiet = 0
    pref = cmath.exp(-0.5 * x + (mu + 0.5) * math.log(x))
    return pref * s, pref * (s1 / x - 0.5 * s)


def _w_asymptotic(kappa, mu, x):
    a = 0.5 + mu - kappa
    b = 0.5 - mu - kappa
    term = 1.0 + 0.0j
    s = term
    sd = 0.0j
    best = 1.0
    converged = False
    for n in range(500):
        term = -term * (a + n) * (b + n) / ((n + 1) * x)
        mag = abs(term)
        if mag == 0.0:
            converged = True
            break
        if mag > best:
            break
        best = mag
        s += term
        sd += -(n + 1) * term / x
        if mag <= WHITTAKER_EPS * abs(s):
            converged = True
            break
    if not converged:
        return None
    pref = cmath.exp(-0.5 * x + kappa * math.log(x))
    w = pref * s
    return w, w * (kappa / x - 0.5) + pref * sd


def _taylor_step(kappa, mu, x0, w, dw, h):
    """Advance (w, w') of the Whittaker equation from x0 to x0 + h."""
    q = 0.25 - mu * mu
    p0 = 0.25 * x0 * x0 - kappa * x0 - q
    p1 = 0.5 * x0 - kappa
    x02 = x0 * x0
    val = w + dw * h
    der = dw
    hp = h
    # rolling window c[n-2], c[n-1], c[n], c[n+1]
    cnm2, cnm1, cn, cn1 = 0.0j, 0.0j, w, dw
    quiet = 0
    for n in range(TAYLOR_MAX_TERMS):
        cn2 = (p0 * cn + p1 * cnm1 + 0.25 * cnm2
               - 2.0 * x0 * (n + 1) * n * cn1 - n * (n - 1) * cn) / (x02 * (n + 2) * (n + 1))
        dterm = (n + 2) * cn2 * hp
        hp *= h
        t = cn2 * hp
        val += t
        der += dterm
        scale = abs(val) + abs(der * h)
        if abs(t) + abs(dterm * h) <= WHITTAKER_EPS * scale:
            quiet += 1
            if quiet >= 3:
                break
        else:
            quiet = 0
        cnm2, cnm1, cn, cn1 = cnm1, cn, cn1, cn2
    return val, der


def _w_anchor(kappa, mu, x):
    start = max(36.0, x, 4.0 * (abs(kappa) + abs(mu)) ** 2)
    while start < 5000.0:
        res = _w_asymptotic(kappa, mu, start)
        if res is not None:
            return start, res
        start *= 1.5
    raise ArithmeticError("asymptotic Whittaker W series did not converge")


def whittaker_w(kappa, mu, x):
    """Return ``(W, dW/dx)``: asymptotic series, Taylor-continued inward."""
    kappa = complex(kappa)
    mu = complex(mu)
    if x >= 12.0:
        res = _w_asymptotic(kappa, mu, x)
        if res is not None:
            return res
    x0, (w, dw) = _w_anchor(kappa, mu, x)
    while x0 > x:
        step = min(0.5 * x0, TAYLOR_MAX_STEP)
        if x0 - step <= x * (1.0 + 1e-15):
            step = x0 - x
        w, dw = _taylor_step(kappa, mu, x0, w, dw, -step)
        x0 = x if step == x0 - x else x0 - step
    return w, dw


# -- series kernels ----------------------------------------------------------


def _q1_term_asym(x):
    inv2 = 1.0 / (x * x)
    p = inv2
    s = 0.0
    for k in range(12):
        s += BERNOULLI_EVEN[k] * p
        p *= inv2
    return s


def q1_partial(alpha, l_max):
    """Sum over l = 0..l_max of the one-loop polarization summand."""
    alpha = abs(float(alpha))
    terms = []
    for l in range(int(l_max) + 1):
        nu = l + 0.5
        xp = nu + alpha
        xm = nu - alpha
        if xm >= ASYM_MIN_X:
            terms.append(_q1_term_asym(xp) + _q1_term_asym(xm))
        else:
            terms.append(xp * trigamma(xp) + xm * trigamma(xm) - 2.0 - nu / (nu * nu - alpha * alpha))
    return math.fsum(terms)


def _qr_term_asym(a, x):
    s = a / x
    phi = math.asin(s)
    inv2 = 1.0 / (x * x)
    p = inv2 * inv2
    acc = 0.0
    for k in range(1, 12):
        n = 2 * k + 1
        acc += BERNOULLI_EVEN[k] * p * (x * math.sin(n * phi) / n - a)
        p *= inv2
    return acc


def qr_partial(a, alpha, l_max):
    """Sum over l = 0..l_max of the higher-order (a^3 and beyond) summand."""
    a = float(a)
    alpha = abs(float(alpha))
    terms = []
    for l in range(int(l_max) + 1):
        nu = l + 0.5
        xp = nu + alpha
        xm = nu - alpha
        if xm >= ASYM_MIN_X:
            terms.append(_qr_term_asym(a, xp) + _qr_term_asym(a, xm))
            continue
        zp = complex(math.sqrt(xp * xp - a * a), -a)
        zm = complex(math.sqrt(xm * xm - a * a), -a)
        im = (loggamma(zp).imag + loggamma(zm).imag
              + 0.5 * (cmath.phase(zp) + cmath.phase(zm))
              - (zp * digamma(zp)).imag - (zm * digamma(zm)).imag
              + a * nu / (nu * nu - alpha * alpha)
              - a * (xp * trigamma(xp) + xm * trigamma(xm)))
        terms.append(im)
    return math.fsum(terms)


def phase_partial(sigma0, n_max):
    """Partial sum n = 1..n_max of the Arg A series."""
    s2 = 2.0 * sigma0
    terms = []
    for n in range(1, int(n_max) + 1):
        terms.append(s2 / n - 2.0 * math.atan(s2 / n) + math.atan(s2 * n / (n * n + 0.25)))
    return math.fsum(terms)
