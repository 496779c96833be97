"""Command-line front end: tables and radial profiles as CSV or JSON.

Every output starts with a header block (``# key=value`` lines in CSV, the
``meta`` object in JSON) recording the command, all parameters, units,
column descriptions, package version and kernel backend.  Floats are written
with ``repr`` so identical configurations give byte-identical files.

Exit status: 0 on success, 1 on invalid input, 2 when a numerical routine
fails to converge (or a self-check fails).
"""
import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from . import dirac_coulomb as dc
from . import massive_polarization as mp_
from . import specfun
from . import subcritical_charge as sc
from . import supercritical_charge as sp
from ._backend import BACKEND
from .errors import ConvergenceError, PlanarVacuumError

COMMANDS = ("qind", "supercritical", "rgflow", "massive", "spectrum", "resonance", "specfun-check")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _threads():
    raw = os.environ.get("PLANAR_VACUUM_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        n = os.cpu_count() or 1
    return max(1, min(n, 32))


def _pmap(fn, items):
    """Ordered parallel map (results in input order, so output is deterministic)."""
    items = list(items)
    n = _threads()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))


def _grid(args):
    if not args.r_min > 0.0:
        raise UsageError(f"--r-min must be > 0, got {args.r_min}")
    if not args.r_min < args.r_max:
        raise UsageError(f"--r-min ({args.r_min}) must be below --r-max ({args.r_max})")
    if args.n_points < 2:
        raise UsageError(f"--n-points must be >= 2, got {args.n_points}")
    if args.grid == "log":
        g = np.geomspace(args.r_min, args.r_max, args.n_points)
    else:
        g = np.linspace(args.r_min, args.r_max, args.n_points)
    g[0], g[-1] = args.r_min, args.r_max
    return [float(x) for x in g]


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return str(v)


def _jsonable(v):
    if isinstance(v, (np.floating,)):
        v = float(v)
    if isinstance(v, float) and not math.isfinite(v):
        return repr(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    return v


# -- commands ----------------------------------------------------------------

def _cmd_qind(args):
    ctl = sc.SeriesControl(l_max=args.l_max, tail_tol=args.tol, accel=args.accel)
    res = sc.q_ind(args.a, args.alpha, ctl)
    cols = {
        "a": "Coulomb coupling",
        "alpha": "fractional flux",
        "q1": "linear part of induced charge [e]",
        "qr": "higher-order part of induced charge [e]",
        "total": "q1 + qr [e]",
        "tail_estimate": "truncation error estimate [e]",
        "l_used": "partial waves summed",
        "regime": "channel regime",
    }
    rows = [{
        "a": args.a, "alpha": args.alpha, "q1": res.q1, "qr": res.qr, "total": res.total,
        "tail_estimate": res.tail_estimate, "l_used": res.l_used, "regime": "subcritical",
    }]
    meta = {"units": "charge in units of e (e = -e0 < 0); positive values screen a positive center"}
    return cols, rows, meta


def _cmd_supercritical(args):
    sysm = dc.CoulombSystem(a=args.a, theta=args.theta, E0=args.E0)
    grid = _grid(args)
    if args.form == "window":
        fn = lambda r: sp.density_window(sysm, r)
    elif args.form == "general":
        fn = lambda r: sp.density_general(sysm, r, branch=args.branch)
    else:
        s0 = sp.sigma0(args.a)
        fn = lambda r: sp.SupercriticalDensityPoint(
            r=r, density_re=sp.density_small_sigma(args.a, r), density_im=0.0,
            channels=((0, 1, s0),))
    pts = _pmap(fn, grid)
    cols = {
        "r": "radius [1/E0]",
        "r2_density": "r^2 times real density [e]",
        "density_re": "real part of density [e E0^2]",
        "density_im": "imaginary part of density (diagnostic) [e E0^2]",
        "n_channels": "supercritical channels summed",
        "regime": "channel regime",
    }
    rows = [{
        "r": p.r, "r2_density": p.r2_density, "density_re": p.density_re,
        "density_im": p.density_im, "n_channels": len(p.channels), "regime": "supercritical",
    } for p in pts]
    meta = {
        "units": "density in e per area with e = -e0; r in units of 1/E0",
        "sigma0": sp.sigma0(args.a) if args.a >= 0.5 else float("nan"),
    }
    return cols, rows, meta


def _cmd_rgflow(args):
    if not args.r0 < args.r_max:
        raise UsageError("--r0 must be below --r-max")
    if args.n_points < 2:
        raise UsageError("--n-points must be >= 2")
    grid = np.geomspace(args.r0, args.r_max, args.n_points)
    grid[0], grid[-1] = args.r0, args.r_max
    traj = sp.rg_flow(args.g0, args.e0sq, args.r0, grid)
    closed = sp.rg_closed_form(args.g0, args.e0sq, [s.log_r for s in traj])
    cols = {
        "r": "radius [r0 units as given]",
        "log_r": "ln(r/r0)",
        "g": "effective coupling (numerical flow)",
        "g_closed": "effective coupling (closed form)",
        "regime": "supercritical while g > 1/2, critical once clamped",
    }
    rows = [{
        "r": float(r), "log_r": s.log_r, "g": s.g, "g_closed": float(gc),
        "regime": "supercritical" if s.g > 0.5 else "critical",
    } for r, s, gc in zip(grid, traj, closed)]
    meta = {
        "r_star": traj.r_star,
        "r_star_closed": traj.r_star_closed,
        "r_star_source_display": sp.screening_radius_paper(args.g0, args.e0sq, args.r0),
        "units": "g dimensionless; r in the units of r0",
    }
    return cols, rows, meta


def _cmd_massive(args):
    grid = _grid(args)
    m = args.m

    def one(r):
        pt = mp_.q_m_coordinate(args.a, m, r, args.quad_tol)
        mr = m * r
        if mr < 0.1:
            asym, branch = mp_.q_m_small_r(args.a, m, r), "small_mr"
        elif mr > 3.0:
            asym, branch = mp_.q_m_large_r(args.a, m, r, args.prefactor), "large_mr"
        else:
            asym, branch = float("nan"), "none"
        row = {"r": r, "mr": mr, "q_m": pt.q_m, "q_m_error": pt.error,
               "q_m_asymptote": asym, "asymptote_branch": branch, "regime": pt.regime.value}
        if args.a_cr is not None:
            row["real_density"] = mp_.real_polarization_density(args.a_cr, m, args.epsilon0, r)
            row["total_density"] = pt.q_m * m * m + row["real_density"]
        return row

    rows = _pmap(one, grid)
    cols = {
        "r": "radius [1/m units as given]",
        "mr": "m r",
        "q_m": "coordinate-space induced charge [e0]",
        "q_m_error": "quadrature error estimate [e0]",
        "q_m_asymptote": "small- or large-mr asymptote [e0] (nan in between)",
        "asymptote_branch": "which asymptote",
        "regime": "evaluation method",
    }
    if args.a_cr is not None:
        cols["real_density"] = "charged-vacuum density model [e0 m^2]"
        cols["total_density"] = "q_m m^2 + real_density (order-of-magnitude composite)"
    meta = {"units": "charges per unit e0", "c_fit": mp_.fit_small_r_slope()}
    return cols, rows, meta


def _cmd_spectrum(args):
    sysm = dc.CoulombSystem(a=args.a, mu_flux=args.mu, m=args.m)
    rows = []
    for l in range(args.l_max + 1):
        for k in range(args.k_max + 1):
            for s in (1, -1):
                lv = dc.bound_spectrum(sysm, k, l, s)
                rows.append({"k": k, "l": l, "s": s, "energy": lv.energy_re, "width": lv.width,
                             "gamma": lv.meta["gamma"], "kind": lv.kind.value,
                             "regime": "subcritical"})
    cols = {
        "k": "radial quantum number", "l": "angular quantum number", "s": "spin label",
        "energy": "bound energy [m units as given]", "width": "level width",
        "gamma": "exponent sqrt(nu^2 - a^2)", "kind": "level kind", "regime": "channel regime",
    }
    return cols, rows, {"units": "energies in the units of m"}


def _cmd_resonance(args):
    sysm = dc.CoulombSystem(a=args.a, m=args.m, theta=args.theta, E0=args.E0)
    cols = {
        "k": "ladder index", "l": "angular quantum number", "s": "spin label",
        "energy_re": "real part of energy", "width": "width estimate",
        "kind": "level kind", "regime": "channel regime",
    }
    meta = {}
    if args.m == 0.0:
        levels = [dc.resonance_spectrum_massless(sysm, k) for k in range(args.k_max + 1)]
        meta["tau"] = levels[0].meta["tau"]
        meta["sigma"] = levels[0].meta["sigma"]
        meta["units"] = "energies in units of E0"
    else:
        lv = dc.solve_dived_resonance(sysm)
        levels = [lv]
        meta["epsilon"] = lv.meta["epsilon"]
        meta["residual"] = lv.meta["residual"]
        meta["units"] = "energies in the units of m"
    meta["width_is_estimate"] = True
    rows = [{"k": lv.k, "l": lv.l, "s": lv.s, "energy_re": lv.energy_re, "width": lv.width,
             "kind": lv.kind.value, "regime": "supercritical"} for lv in levels]
    return cols, rows, meta


def _specfun_checks():
    """Closed-form identities (always available)."""
    checks = [
        ("ln_gamma(1/2)", specfun.ln_gamma(0.5).real, 0.5 * math.log(math.pi)),
        ("digamma(1)", specfun.digamma(1.0).real, -specfun.EULER_GAMMA),
        ("trigamma(3/2)", specfun.trigamma(1.5), math.pi ** 2 / 2.0 - 4.0),
        ("whittaker_M(0,1/2,1)", specfun.whittaker_M(0.0, 0.5, 1.0).real, 2.0 * math.sinh(0.5)),
        ("whittaker_W(0,1/2,1)", specfun.whittaker_W(0.0, 0.5, 1.0).real, math.exp(-0.5)),
        ("|Gamma(0.6i)|^2", abs(specfun.gamma(0.6j)) ** 2, math.pi / (0.6 * math.sinh(0.6 * math.pi))),
        ("bessel_I(0,0)", specfun.bessel_I(0.0, 0.0), 1.0),
    ]
    k, mu = 0.3 + 0.2j, 0.7
    ref = specfun.gamma(2 * mu + 1) / specfun.gamma(mu - k + 0.5)
    for x in (0.5, 1.0, 5.0):
        w, dw = specfun.whittaker_W(k, mu, x, derivative=True)
        mm, dm = specfun.whittaker_M(k, mu, x, derivative=True)
        checks.append((f"Wronskian(W,M) at x={x}", abs(w * dm - dw * mm), abs(ref)))
    return checks


def _cmd_specfun_check(args):
    rows = []
    ok = True
    for name, val, ref in _specfun_checks():
        err = abs(val - ref) / max(abs(ref), 1e-300)
        passed = err < args.tol
        ok &= passed
        rows.append({"check": name, "value": val, "reference": ref, "rel_err": err, "pass": passed})
    cols = {"check": "identity", "value": "computed", "reference": "closed form",
            "rel_err": "relative error", "pass": "rel_err below --tol"}
    return cols, rows, {"all_pass": ok}


HANDLERS = {
    "qind": _cmd_qind,
    "supercritical": _cmd_supercritical,
    "rgflow": _cmd_rgflow,
    "massive": _cmd_massive,
    "spectrum": _cmd_spectrum,
    "resonance": _cmd_resonance,
    "specfun-check": _cmd_specfun_check,
}


# -- parser -----------------------------------------------------------------

def _add_grid(p, r_min, r_max, n):
    p.add_argument("--r-min", type=float, default=r_min)
    p.add_argument("--r-max", type=float, default=r_max)
    p.add_argument("--n-points", type=int, default=n)
    p.add_argument("--grid", choices=("log", "linear"), default="log")


def build_parser():
    parser = _Parser(prog="planar-vacuum", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"planar-vacuum {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--output", "-o", default="-", help="output path ('-' for stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("qind", help="subcritical induced charge Q1 + Qr")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--l-max", type=int, default=2000)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--accel", choices=[e.value for e in sc.Accel], default=sc.Accel.RICHARDSON_TAIL.value)
    common(p)

    p = sub.add_parser("supercritical", help="massless supercritical density profile")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--E0", type=float, default=1.0)
    p.add_argument("--form", choices=("general", "window", "small-sigma"), default="general")
    p.add_argument("--branch", choices=sp.BRANCHES, default="printed")
    _add_grid(p, 1e-2, 1e2, 65)
    common(p)

    p = sub.add_parser("rgflow", help="screening flow of the effective coupling")
    p.add_argument("--g0", type=float, required=True)
    p.add_argument("--e0sq", type=float, required=True)
    p.add_argument("--r0", type=float, default=1.0)
    p.add_argument("--r-max", type=float, default=1e6)
    p.add_argument("--n-points", type=int, default=61)
    common(p)

    p = sub.add_parser("massive", help="coordinate-space induced charge of massive fermions")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--quad-tol", type=float, default=1e-12)
    p.add_argument("--prefactor", choices=sorted(mp_.LARGE_R_PREFACTORS), default="derived")
    p.add_argument("--a-cr", type=float, default=None, help="enable the charged-vacuum density model")
    p.add_argument("--epsilon0", type=float, default=0.05)
    _add_grid(p, 1e-3, 10.0, 41)
    common(p)

    p = sub.add_parser("spectrum", help="bound spectrum of the massive subcritical problem")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--mu", type=float, default=0.0)
    p.add_argument("--k-max", type=int, default=3)
    p.add_argument("--l-max", type=int, default=2)
    common(p)

    p = sub.add_parser("resonance", help="supercritical resonances (massless ladder or dived level)")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--m", type=float, default=0.0)
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--E0", type=float, default=1.0)
    p.add_argument("--k-max", type=int, default=4)
    common(p)

    p = sub.add_parser("specfun-check", help="closed-form identity checks of the special functions")
    p.add_argument("--tol", type=float, default=1e-12)
    common(p)
    return parser


def _render(fmt, header, cols, rows):
    if fmt == "json":
        payload = {"meta": {k: _jsonable(v) for k, v in header.items()},
                   "rows": [{c: _jsonable(r.get(c)) for c in cols} for r in rows]}
        payload["meta"]["columns"] = cols
        return json.dumps(payload, indent=2, sort_keys=False) + "\n"
    buf = io.StringIO()
    for k, v in header.items():
        buf.write(f"# {k}={_fmt(v)}\n")
    for c, d in cols.items():
        buf.write(f"# column.{c}={d}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(list(cols))
    for r in rows:
        w.writerow([_fmt(r.get(c, "")) for c in cols])
    return buf.getvalue()


def run(argv=None, stdout=None, stderr=None):
    """Parse `argv`, run the command and write its table; returns the exit status."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cols, rows, meta = HANDLERS[args.command](args)
    except UsageError as exc:
        stderr.write(f"planar-vacuum: invalid input: {exc}\n")
        return 1
    except ConvergenceError as exc:
        stderr.write(f"planar-vacuum: convergence failure: {exc}\n")
        return 2
    except (PlanarVacuumError, ValueError) as exc:
        stderr.write(f"planar-vacuum: invalid input: {exc}\n")
        return 1

    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "output", "format")}
    header = {"tool": "planar-vacuum", "version": __version__, "backend": BACKEND,
              "command": args.command}
    header.update({f"param.{k}": v for k, v in params.items()})
    header.update(meta)
    text = _render(args.format, header, cols, rows)
    if args.output == "-":
        stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    if args.command == "specfun-check" and not meta["all_pass"]:
        stderr.write("planar-vacuum: specfun-check: an identity exceeded --tol\n")
        return 2
    return 0


def main(argv=None):
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
