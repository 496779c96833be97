"""Compiled vs pure-Python kernel timings.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]

Each kernel is called with identical arguments on both backends; the table
reports the best-of-N wall time per call and the largest relative
difference between the two results.
"""
import argparse
import timeit

from planar_vacuum import _kernels_py as pure

try:
    from planar_vacuum import _kernels as compiled
except ImportError:  # extension not built
    compiled = None

CASES = [
    ("loggamma", (0.3 + 2.5j,), 2000),
    ("digamma", (0.3 + 2.5j,), 2000),
    ("trigamma", (0.7,), 2000),
    ("whittaker_m", (0.3 + 0.1j, 0.7, 4.0), 200),
    ("whittaker_w", (0.3 + 0.1j, 0.7, 4.0), 200),
    ("q1_partial", (0.1, 2000), 5),
    ("qr_partial", (0.3, 0.1, 2000), 5),
    ("phase_partial", (0.8, 100000), 3),
]


def _best(fn, args, number, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=number, repeat=repeat)) / number


def _reldiff(x, y):
    if isinstance(x, tuple):
        return max(_reldiff(a, b) for a, b in zip(x, y))
    return abs(x - y) / max(abs(y), 1e-300)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if compiled is None:
        print("compiled extension not available; build with `pip install -e . --no-build-isolation`")
        return 1
    print(f"{'kernel':<14}{'python [us]':>14}{'compiled [us]':>16}{'speedup':>10}{'max rel diff':>15}")
    for name, fargs, number in CASES:
        fp, fc = getattr(pure, name), getattr(compiled, name)
        tp = _best(fp, fargs, number, args.repeat)
        tc = _best(fc, fargs, number, args.repeat)
        d = _reldiff(fc(*fargs), fp(*fargs))
        print(f"{name:<14}{tp * 1e6:>14.2f}{tc * 1e6:>16.2f}{tp / tc:>10.1f}{d:>15.1e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
