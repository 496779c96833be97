import importlib
import random

import pytest

from planar_vacuum import _backend, _kernels_py

compiled = pytest.importorskip("planar_vacuum._kernels")


def test_default_backend_is_compiled_when_built():
    assert _backend.BACKEND == "compiled"


def test_pure_backend_forced_by_env(monkeypatch):
    monkeypatch.setenv("PLANAR_VACUUM_PURE", "1")
    mod = importlib.reload(_backend)
    try:
        assert mod.BACKEND == "python"
    finally:
        monkeypatch.delenv("PLANAR_VACUUM_PURE")
        importlib.reload(_backend)


def test_scalar_kernels_agree():
    rng = random.Random(7)
    for _ in range(100):
        z = complex(rng.uniform(-5, 20), rng.uniform(-10, 10))
        for name in ("loggamma", "digamma"):
            a = getattr(compiled, name)(z)
            b = getattr(_kernels_py, name)(z)
            assert abs(a - b) <= 1e-14 * max(1.0, abs(b))
        x = rng.uniform(0.05, 30)
        assert abs(compiled.trigamma(x) - _kernels_py.trigamma(x)) <= 1e-15 * _kernels_py.trigamma(x)


def test_whittaker_kernels_agree():
    rng = random.Random(11)
    for _ in range(60):
        k = complex(rng.uniform(-3, 3), rng.uniform(-1, 1))
        m = complex(rng.uniform(0, 3), rng.uniform(-1, 1))
        x = rng.uniform(0.1, 40)
        for name in ("whittaker_m", "whittaker_w"):
            a = getattr(compiled, name)(k, m, x)
            b = getattr(_kernels_py, name)(k, m, x)
            assert abs(a[0] - b[0]) <= 1e-13 * abs(b[0])


@pytest.mark.parametrize("args", [(0.0, 500), (0.3, 2000), (0.45, 64)])
def test_q1_partial_agrees(args):
    assert compiled.q1_partial(*args) == pytest.approx(_kernels_py.q1_partial(*args), rel=1e-14, abs=1e-16)


@pytest.mark.parametrize("args", [(0.3, 0.0, 2000), (0.2, 0.25, 300), (0.01, 0.1, 50)])
def test_qr_partial_agrees(args):
    assert compiled.qr_partial(*args) == pytest.approx(_kernels_py.qr_partial(*args), rel=1e-13, abs=1e-17)


def test_phase_partial_agrees():
    assert compiled.phase_partial(0.1, 10000) == pytest.approx(_kernels_py.phase_partial(0.1, 10000), rel=1e-14)
