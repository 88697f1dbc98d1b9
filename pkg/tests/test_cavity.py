from fractions import Fraction

import numpy as np
import pytest

from cavityvac import CavityConfig, Interval, ModeId, Region, ThreeRegion, TwoRegion
from cavityvac.cavity import (
    cospi,
    eval_global_mode,
    eval_local_mode_postslam,
    global_frequency,
    local_frequency,
    local_mode_profile,
    sinpi,
    wavenumbers_degenerate,
)


def test_config_defaults_and_validation():
    cfg = CavityConfig()
    assert (cfg.R, cfg.mu, cfg.N, cfg.M) == (1.0, 0.0, 200, 4000)
    assert CavityConfig(N=7).M == 140
    for bad in (dict(R=0), dict(mu=-1), dict(N=0), dict(N=10, M=5)):
        with pytest.raises(ValueError):
            CavityConfig(**bad)


def test_two_region_intervals():
    regs = TwoRegion(0.3).regions(1.0)
    assert regs[Region.LEFT] == Interval(0.0, 0.3)
    assert regs[Region.RIGHT].start == 0.3
    assert regs[Region.RIGHT].stop == pytest.approx(1.0, abs=1e-15)
    for r in (0.0, 1.0, -0.2, 1.5):
        with pytest.raises(ValueError):
            TwoRegion(r).regions(1.0)


def test_three_region_layout():
    part = ThreeRegion.centered(2.0, 0.5)
    assert part.A == part.C == 0.75
    regs = part.regions(2.0)
    assert list(regs) == [Region.A, Region.B, Region.C]
    assert regs[Region.B].start == 0.75
    assert regs[Region.C].stop == pytest.approx(2.0, abs=1e-15)
    with pytest.raises(ValueError):
        ThreeRegion(0.5, 0.5, 0.5).regions(1.0)
    with pytest.raises(ValueError):
        ThreeRegion(0.5, 0.0, 0.5).regions(1.0)


def test_interval_contains_is_open():
    iv = Interval(0.2, 0.3)
    assert list(iv.contains([0.2, 0.3, 0.5, 0.6])) == [False, True, False, False]


def test_mode_ids_are_one_based():
    assert str(ModeId(Region.LEFT, 3)) == "left3"
    with pytest.raises(ValueError):
        ModeId(Region.A, 0)


def test_frequencies():
    cfg = CavityConfig(R=2.0, mu=3.0)
    assert global_frequency(4, cfg) == pytest.approx(np.hypot(2 * np.pi, 3.0))
    assert local_frequency(1, 0.5, 0.0) == pytest.approx(2 * np.pi)


def test_sinpi_cospi_exact_zeros():
    assert np.all(sinpi(np.arange(-5, 6)) == 0.0)
    assert np.all(cospi(np.arange(-5, 6) + 0.5) == 0.0)
    t = np.linspace(-3, 3, 101)
    assert np.allclose(sinpi(t), np.sin(np.pi * t), atol=1e-14)
    assert np.allclose(cospi(t), np.cos(np.pi * t), atol=1e-14)


def _kg_norm(profile, omega, x):
    # KG inner product of a positive-frequency stationary mode: 2 omega * int |u|^2
    return 2 * omega * np.trapezoid(np.abs(profile) ** 2, x)


def test_global_and_local_modes_are_kg_normalized():
    cfg = CavityConfig(R=1.5, mu=2.0)
    x = np.linspace(0, cfg.R, 40001)
    for n in (1, 4, 9):
        u = eval_global_mode(n, x, 0.0, cfg)
        assert _kg_norm(u, global_frequency(n, cfg), x) == pytest.approx(1.0, rel=1e-6)
    iv = Interval(0.4, 0.7)
    for m in (1, 3):
        u = local_mode_profile(m, x, iv, cfg.mu)
        assert _kg_norm(u, local_frequency(m, iv.length, cfg.mu), x) == pytest.approx(1.0, rel=1e-6)
        assert np.all(u[~iv.contains(x)] == 0.0)


def test_postslam_mode_is_stationary():
    cfg = CavityConfig(mu=1.0)
    part = TwoRegion(0.4)
    x = np.linspace(0, 1, 11)
    mode = ModeId(Region.RIGHT, 2)
    u0 = eval_local_mode_postslam(mode, x, 0.0, part, cfg)
    u1 = eval_local_mode_postslam(mode, x, 0.7, part, cfg)
    w = local_frequency(2, 0.6, 1.0)
    assert np.allclose(u1, u0 * np.exp(-0.7j * w))
    with pytest.raises(ValueError):
        eval_local_mode_postslam(mode, x, -0.1, part, cfg)


def test_wavenumber_degeneracy_is_exact():
    assert wavenumbers_degenerate(2, 1, 1, Fraction(1, 2))
    assert wavenumbers_degenerate(10, 3, 1, Fraction(3, 10))
    assert not wavenumbers_degenerate(3, 1, 1, Fraction(1, 2))
