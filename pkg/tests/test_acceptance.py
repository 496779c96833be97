"""Acceptance criteria, one test per criterion.

Each test prints a single ``CRITERION n: PASS|FAIL ...`` line (also when run
as a script: ``python3 tests/test_acceptance.py``) and asserts the pinned
tolerance.  Criteria that the implementation cannot meet are left failing.
"""
import cmath
import math
import random
import sys
import time

import numpy as np
import pytest

from planar_vacuum import dirac_coulomb as dc
from planar_vacuum import massive_polarization as mp
from planar_vacuum import specfun
from planar_vacuum import subcritical_charge as sc
from planar_vacuum import supercritical_charge as sp


def _rel(x, ref):
    return abs(x - ref) / abs(ref)


# -- criteria: each returns (passed, detail) -----------------------------------

def criterion_1():
    t0 = time.perf_counter()
    err = max(abs(sc.q1(a, 0.0) - a * math.pi / 4) for a in (0.05, 0.1, 0.3, 0.45))
    dt = time.perf_counter() - t0
    return err < 1e-8 and dt < 1.0, f"max |q1 - a pi/4| = {err:.2e} (tol 1e-8), runtime {dt:.3f} s (< 1 s)"


def criterion_2():
    t0 = time.perf_counter()
    a, h = 0.1, 1e-3
    d2 = (sc.q1(a, h) - 2 * sc.q1(a, 0.0) + sc.q1(a, -h)) / h ** 2
    ref = 2 * a * math.pi * (2 * math.log(2) + 1 - math.pi ** 2 / 4)
    dt = time.perf_counter() - t0
    err = _rel(d2, ref)
    return err < 1e-4 and dt < 5.0, (
        f"d2q1/dalpha2 = {d2:.6f} vs {ref:.6f}, rel {err:.2e} (tol 1e-4), runtime {dt:.3f} s")


def criterion_3():
    rng = random.Random(20240603)
    worst = 0.0
    for _ in range(20):
        alpha = rng.uniform(-0.45, 0.45)
        lim = 0.5 - abs(alpha)
        a = rng.uniform(-0.999 * lim, 0.999 * lim)
        q = sc.q_ind(a, alpha).total
        worst = max(worst, abs(sc.q_ind(-a, alpha).total + q), abs(sc.q_ind(a, -alpha).total - q))
    return worst < 1e-12, f"max parity violation {worst:.2e} over 20 points (tol 1e-12)"


def criterion_4():
    sysm = dc.CoulombSystem(a=0.3, m=1.0)
    e0 = dc.bound_spectrum(sysm, 0, 0).energy_re
    err0 = abs(e0 - 0.8)
    k = 200
    lv = dc.bound_spectrum(sysm, k, 0)
    g = lv.meta["gamma"]
    tail = 1.0 - lv.energy_re
    ref = 0.09 / (2 * (k + g) ** 2)
    err1 = _rel(tail, ref)
    return err0 < 1e-14 and err1 < 0.01, (
        f"|E00 - 0.8| = {err0:.1e} (tol 1e-14); k=200 tail ratio error {err1:.2e} (tol 1e-2)")


def criterion_5():
    rng = random.Random(5)
    worst_cf = 0.0
    worst_r = 0.0
    for _ in range(10):
        a = rng.uniform(0.05, 0.45)
        mu = rng.uniform(0.0, 0.3)
        l = rng.choice((0, 1, 2))
        s = rng.choice((1, -1))
        sysm = dc.CoulombSystem(a=a, m=1.0, mu_flux=mu)
        ch = dc.make_channel(sysm, l, s)
        if ch.regime is not dc.Regime.SUBCRITICAL:
            ch = dc.make_channel(sysm, l + 1, s)
        E = rng.uniform(-0.9, 0.9)
        lam = math.sqrt(1 - E * E)
        r = rng.uniform(0.1, 10.0) / lam
        ref = dc.wronskian(sysm, ch, E)
        worst_cf = max(worst_cf, _rel(dc.numerical_wronskian(sysm, ch, E, r), ref))
        vals = [dc.numerical_wronskian(sysm, ch, E, x / lam) for x in np.geomspace(0.1, 10.0, 5)]
        worst_r = max(worst_r, max(_rel(v, vals[0]) for v in vals))
    ok = worst_cf < 1e-8 and worst_r < 1e-8
    return ok, f"closed-form rel err {worst_cf:.2e}, r-variation over two decades {worst_r:.2e} (tol 1e-8)"


def criterion_6():
    sets = [(0.3, 0.0, 0, 1, 0.2), (0.1, 0.0, 0, -1, -0.5), (0.45, 0.0, 1, 1, 0.8),
            (0.25, 0.3, 0, 1, -0.3), (0.4, 0.1, 2, -1, 0.0)]
    worst = 0.0
    for a, mu, l, s, E in sets:
        sysm = dc.CoulombSystem(a=a, m=1.0, mu_flux=mu)
        ch = dc.make_channel(sysm, l, s)
        lam = math.sqrt(1 - E * E)
        for fn in (dc.regular_solution, dc.irregular_solution):
            for x in (0.1, 1.0, 5.0):
                res = dc.ode_residual(sysm, ch, E, lambda rr: fn(sysm, ch, E, rr), x / lam)
                worst = max(worst, res)
    return worst < 1e-6, f"max relative ODE residual {worst:.2e} over 5 sets x 3 radii x 2 doublets (tol 1e-6)"


def _log_period_mean(sysm, branch, n=256):
    s0 = sp.sigma0(sysm.a)
    P = math.pi / s0
    ts = np.arange(n) * P / n
    return float(np.mean([sp.density_general(sysm, math.exp(t), branch).r2_density for t in ts]))


def criterion_7():
    t0 = time.perf_counter()
    a = 0.505
    target = sp.sigma0(a) / math.pi ** 2
    mean = _log_period_mean(dc.CoulombSystem(a=a, theta=0.0), "printed")
    err_mean = abs(mean - target) / target
    spread = 0.0
    for th in np.linspace(0.0, math.pi, 8, endpoint=False):
        v = sp.density_general(dc.CoulombSystem(a=a, theta=float(th)), 1.0).r2_density
        spread = max(spread, abs(v - target) / target)
    dt = time.perf_counter() - t0
    ok = err_mean < 0.10 and spread < 0.15 and dt < 10.0
    return ok, (f"log-period mean / target = {mean / target:.4f} (tol 10%), max theta deviation "
                f"{spread:.3f} (tol 0.15), runtime {dt:.2f} s")


def criterion_8():
    a = 1.0
    P = math.pi / sp.sigma0(a)
    worst = 0.0
    for th in (0.0, 0.9, 2.2):
        sysm = dc.CoulombSystem(a=a, theta=th)
        for r in (0.03, 1.0, 11.0):
            d1 = sp.density_window(sysm, r).r2_density
            d2 = sp.density_window(sysm, r * math.exp(P)).r2_density
            worst = max(worst, _rel(d2, d1))
    return worst < 1e-10, f"max relative change after one log-period {worst:.2e} (tol 1e-10)"


def criterion_9():
    a = 10.0
    # l runs over the integers with |l| < a, both signs of the angular momentum
    lmax = int(math.ceil(a)) - 1
    ref = sum(math.sqrt(a * a - l * l) for l in range(-lmax, lmax + 1)) / math.pi ** 2
    thetas = np.arange(128) * math.pi / 128
    worst = 0.0
    vals = []
    for r in (1.0, 3.7):
        avg = float(np.mean([sp.density_general(dc.CoulombSystem(a=a, theta=float(t)), r).r2_density
                             for t in thetas]))
        vals.append(avg)
        worst = max(worst, abs(avg - ref) / ref)
    return worst < 0.05, (f"theta-averaged r^2 density {vals[0]:.4f}, {vals[1]:.4f} vs {ref:.4f}, "
                          f"max rel err {worst:.3f} (tol 0.05)")


def criterion_10():
    g0, e0sq, r0 = 1.2, 0.8, 1.0
    grid = np.geomspace(r0, 1e6 * r0, 241)
    traj = sp.rg_flow(g0, e0sq, r0, grid)
    g = np.array([s.g for s in traj])
    ref = sp.rg_closed_form(g0, e0sq, np.log(grid / r0))
    err = float(np.max(np.abs(g - ref) / ref))
    t_closed = math.log(sp.screening_radius(g0, e0sq, r0) / r0)
    c = 2 * e0sq / math.pi

    # bisection on the numerical flow for the first radius with g = 1/2 + delta
    delta = 1e-10

    def above(t):
        return sp.rg_flow(g0, e0sq, r0, [r0, r0 * math.exp(t)])[-1].g > 0.5 + delta

    lo, hi = 0.0, 2 * t_closed
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if above(mid) else (lo, mid)
    t_delta = 0.5 * (lo + hi)
    # g = 1/2 cosh(c (t* - t)) gives the offset of the delta-crossing from t*
    t_bis = t_delta + math.acosh(1 + 2 * delta) / c
    err_bis = abs(t_bis - t_closed) / t_closed
    err_star = _rel(traj.r_star, traj.r_star_closed)
    exact_half = all(s.g == 0.5 for s in traj if s.log_r >= t_closed * (1 + 1e-9))
    ok = err < 1e-8 and err_star < 1e-8 and err_bis < 1e-8 and exact_half
    return ok, (f"max rel err vs closed form {err:.2e} over 6 decades; r* rel err {err_star:.2e}; "
                f"bisection ln r* rel err {err_bis:.2e}; g == 1/2 beyond r*: {exact_half}")


def criterion_11():
    a = 1.0
    q_small = mp.q_m_coordinate(a, 1.0, 1e-4).q_m
    err_small = abs(q_small + a * math.pi / 4)
    ratio = mp.q_m_coordinate(a, 1.0, 5.0).q_m / mp.q_m_large_r(a, 1.0, 5.0)
    ok = err_small < 1e-6 and 0.9 <= ratio <= 1.1
    return ok, (f"|q_m + a pi/4| at mr=1e-4 = {err_small:.2e} (tol 1e-6); "
                f"ratio to Laplace asymptote at mr=5 = {ratio:.4f} (need [0.9, 1.1])")


def criterion_12():
    m = 1.0
    zero = mp.polarization_operator(0.0, m)
    q = 1e-3 * m
    err_small = _rel(mp.polarization_operator(q * q, m), -q * q / (12 * math.pi * m))
    Q = 1e4 * m
    err_large = _rel(mp.polarization_operator(Q * Q, m) / Q, -1.0 / 16)
    ok = zero == 0.0 and err_small < 1e-5 and err_large < 1e-3
    return ok, (f"Pi(0) = {zero!r}; small-q rel err {err_small:.2e} (tol 1e-5); "
                f"large-q rel err {err_large:.2e} (tol 1e-3)")


def criterion_13():
    sysm = dc.CoulombSystem(a=0.55, theta=0.3)
    sigma = dc.make_channel(sysm, 0, 1).sigma
    lv = [dc.resonance_spectrum_massless(sysm, k).energy_re for k in range(8)]
    err_ratio = max(_rel(b / a_, math.exp(-1 / (2 * sigma))) for a_, b in zip(lv, lv[1:]))
    dived = dc.solve_dived_resonance(dc.CoulombSystem(a=0.52, m=1.0, theta=math.pi / 2 + 0.1))
    res = abs(dived.meta["residual"])
    w = [dc.resonance_width_estimate(0.52, 1.0, e) for e in np.geomspace(1e-6, 1.0, 200)]
    # the width underflows to 0 for the smallest eps; non-decreasing everywhere,
    # strictly increasing where representable
    d = np.diff(w)
    mono = bool(np.all(d >= 0) and np.all(d[np.array(w[:-1]) > 0] > 0) and w[-1] > 0)
    ok = err_ratio < 1e-12 and res < 1e-10 and mono
    return ok, (f"ladder ratio rel err {err_ratio:.2e} (tol 1e-12); dived residual {res:.2e} "
                f"(tol 1e-10); width monotone in eps: {mono}")


def criterion_14():
    from planar_vacuum import oracle

    checks = []
    s = 0.3
    lhs = abs(cmath.exp(specfun.ln_gamma(2j * s) + specfun.ln_gamma(-2j * s)))
    checks.append(("|G(2is)G(-2is)|", lhs, math.pi / (2 * s * math.sinh(2 * math.pi * s))))
    checks.append(("Im psi(0.6i)", specfun.digamma(0.6j).imag, oracle.digamma_series(0.6j).imag))
    checks.append(("psi'(3/2)", specfun.trigamma(1.5), math.pi ** 2 / 2 - 4))
    checks.append(("M_{0,1/2}(1)", specfun.whittaker_M(0, 0.5, 1.0).real, oracle.whittaker_M(0, 0.5, 1.0).real))
    checks.append(("M_{0,1/2}(1) closed", specfun.whittaker_M(0, 0.5, 1.0).real, 2 * math.sinh(0.5)))
    checks.append(("W_{0,1/2}(1)", specfun.whittaker_W(0, 0.5, 1.0).real,
                   oracle.whittaker_W_integral(0, 0.5, 1.0).real))
    k, mu = 0.3, 0.7
    ref = specfun.gamma(2 * mu + 1) / specfun.gamma(mu - k + 0.5)
    for x in (0.5, 1.0, 5.0):
        w, dw = specfun.whittaker_W(k, mu, x, derivative=True)
        mm, dm = specfun.whittaker_M(k, mu, x, derivative=True)
        checks.append((f"Wronskian x={x}", w * dm - dw * mm, ref))
    checks.append(("I_0.8(2)", specfun.bessel_I(0.8, 2.0), oracle.bessel_I_series(0.8, 2.0)))
    worst_name, worst = max(((n, _rel(complex(v), complex(r))) for n, v, r in checks), key=lambda t: t[1])
    return worst < 1e-9, f"{len(checks)} oracle checks, worst {worst_name} rel err {worst:.2e} (tol 1e-9)"


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 15)}


def _report(n):
    ok, detail = CRITERIA[n]()
    return ok, f"CRITERION {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    if n == 14:
        pytest.importorskip("mpmath")
    ok, line = _report(n)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for n in sorted(CRITERIA):
        ok, line = _report(n)
        failed += not ok
        print(line)
    sys.exit(1 if failed else 0)
