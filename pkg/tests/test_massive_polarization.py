import math

import numpy as np
import pytest

from planar_vacuum import massive_polarization as mp
from planar_vacuum.errors import DomainError


def test_polarization_zero_and_sign():
    assert mp.polarization_operator(0.0, 1.0) == 0.0
    vals = [mp.polarization_operator(q * q, 1.0) for q in np.geomspace(1e-3, 1e3, 40)]
    assert all(v < 0 for v in vals)
    assert np.all(np.diff(vals) < 0)


def test_polarization_small_q_coefficient():
    m = 2.0
    q2 = (1e-3 * m) ** 2
    assert mp.polarization_operator(q2, m) / q2 == pytest.approx(-1 / (12 * math.pi * m), rel=1e-5)


def test_polarization_large_q_slope():
    q = 1e5
    assert mp.polarization_operator(q * q, 1.0) / q == pytest.approx(-1 / 16, rel=1e-4)


def test_polarization_series_joins_closed_form():
    m = 1.0
    q_lo = 2 * m * (0.1 - 1e-12)
    q_hi = 2 * m * (0.1 + 1e-12)
    lo = mp.polarization_operator(q_lo ** 2, m)
    hi = mp.polarization_operator(q_hi ** 2, m)
    assert lo == pytest.approx(hi, rel=1e-12)


def test_polarization_domain():
    with pytest.raises(DomainError):
        mp.polarization_operator(-1.0, 1.0)
    with pytest.raises(DomainError):
        mp.polarization_operator(1.0, 0.0)


def test_momentum_charge_sign():
    assert mp.induced_charge_momentum(0.3, 0.5, 1.0) > 0
    with pytest.raises(DomainError):
        mp.induced_charge_momentum(0.3, 0.0, 1.0)


def test_coordinate_charge_small_r_limit():
    a = 0.3
    p = mp.q_m_coordinate(a, 1.0, 1e-9)
    assert p.q_m == pytest.approx(-a * math.pi / 4, rel=1e-8)
    assert p.regime is mp.ChargeRegime.EXACT
    assert p.error <= 1e-12 * abs(p.q_m) + 1e-300


def test_coordinate_charge_monotone_decay():
    q = [mp.q_m_coordinate(0.3, 1.0, r).q_m for r in np.geomspace(1e-3, 10, 30)]
    assert all(v < 0 for v in q)
    assert np.all(np.diff(q) > 0)


def test_coordinate_charge_odd_and_scaling():
    assert mp.q_m_coordinate(-0.2, 1.0, 0.5).q_m == -mp.q_m_coordinate(0.2, 1.0, 0.5).q_m
    # only the product m r enters
    assert mp.q_m_coordinate(0.2, 2.0, 0.25).q_m == pytest.approx(mp.q_m_coordinate(0.2, 1.0, 0.5).q_m, rel=1e-13)


def test_small_r_linear_slope():
    c = mp.fit_small_r_slope()
    assert c == pytest.approx(1.898, abs=2e-3)
    exact = mp.q_m_coordinate(0.3, 1.0, 1e-3).q_m
    assert mp.q_m_small_r(0.3, 1.0, 1e-3) == pytest.approx(exact, rel=5e-4)
    with pytest.raises(DomainError):
        mp.q_m_small_r(0.3, 1.0, 0.5)


def test_large_r_derived_prefactor_converges():
    ratios = [mp.q_m_coordinate(0.3, 1.0, r).q_m / mp.q_m_large_r(0.3, 1.0, r) for r in (5.0, 20.0, 80.0)]
    assert np.all(np.diff(ratios) > 0)
    assert abs(ratios[-1] - 1) < 0.02


def test_large_r_printed_prefactor_ratio():
    d = mp.q_m_large_r(0.3, 1.0, 4.0)
    p = mp.q_m_large_r(0.3, 1.0, 4.0, prefactor="paper")
    assert p / d == pytest.approx(4.0)
    with pytest.raises(DomainError):
        mp.q_m_large_r(0.3, 1.0, 3.0)
    with pytest.raises(DomainError):
        mp.q_m_large_r(0.3, 1.0, 4.0, prefactor="other")


def test_real_polarization_density():
    a_cr, m, eps0 = 0.6, 1.0, 0.05
    r_sw, const = mp.real_polarization_switch(a_cr, m, eps0)
    assert r_sw > 0 and const > 0
    left = mp.real_polarization_density(a_cr, m, eps0, r_sw * (1 - 1e-9))
    right = mp.real_polarization_density(a_cr, m, eps0, r_sw * (1 + 1e-9))
    assert left == pytest.approx(right, rel=1e-6)
    vals = [mp.real_polarization_density(a_cr, m, eps0, r) for r in np.geomspace(1e-6, 1e3, 50)]
    assert all(v < 0 for v in vals)
    with pytest.raises(DomainError):
        mp.real_polarization_density(0.4, m, eps0, 1.0)


def test_total_density_switch():
    only = mp.total_massive_density(0.3, 0.6, 1.0, 0.05, 0.5, real_polarization=False)
    assert only == pytest.approx(mp.q_m_coordinate(0.3, 1.0, 0.5).q_m)
    both = mp.total_massive_density(0.3, 0.6, 1.0, 0.05, 0.5)
    assert both < only


def test_resonance_width_monotone():
    w = [mp.resonance_width(0.6, 1.0, e) for e in (1e-3, 1e-2, 1e-1)]
    assert w[0] < w[1] < w[2] < 1.0
