#!/usr/bin/env python3
"""
Test script for front tracking and the speed sweep.
"""

import os
import sys

import numpy as np
import pytest

# Add the src directory to the path so we can import the modules
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

from fracfront.core.dispersion import critical_speed
from fracfront.core.front import (
    crossing, crossing_count, numerical_speed, signed_speed, smoothed_speed, speed_sweep,
)
from fracfront.models.front import FrontTrack, SweepConfig
from fracfront.models.simulation import SimConfig
from fracfront.utils.exceptions import ContractError


def make_track(positions, dt=0.1, stop=True):
    track = FrontTrack(level=0.1)
    for j, position in enumerate(positions):
        track.record(j * dt, position, 1 if position is not None else 0)
    if stop:
        track.stop_time = (len(positions) - 1) * dt
    return track


def test_crossing_interpolates():
    print("🔍 Testing level crossings...")
    x = [0.0, 1.0, 2.0, 3.0]
    assert crossing(x, [0.0, 0.2, 1.0, 1.0], 0.1) == pytest.approx(0.5)
    assert crossing(x, [0.0, 0.0, 0.0, 0.05], 0.1) is None
    # leftmost of several crossings
    assert crossing(x, [0.0, 1.0, 0.0, 1.0], 0.5) == pytest.approx(0.5)
    assert crossing_count([0.0, 1.0, 0.0, 1.0], 0.5) == 3
    assert crossing_count([0.0, 0.3, 0.6, 0.9], 0.5) == 1


def test_speeds_from_track():
    track = make_track([10.0, 9.8, 9.6, 9.4, 9.2])
    assert signed_speed(track, 0.1) == pytest.approx(-2.0)
    assert numerical_speed(track, 0.1) == pytest.approx(2.0)
    assert smoothed_speed(track) == pytest.approx(2.0)


def test_smoothed_speed_ignores_jitter():
    t = 0.1 * np.arange(101)
    positions = 50.0 - 1.5 * t + 0.01 * (-1.0) ** np.arange(101)
    track = make_track(list(positions))
    assert smoothed_speed(track, fraction=0.5) == pytest.approx(1.5, rel=1e-2)


def test_speed_contract_errors():
    with pytest.raises(ContractError):
        numerical_speed(FrontTrack(), 0.1)
    with pytest.raises(ContractError):
        # T - dt has no crossing
        numerical_speed(make_track([None, None, 5.0]), 0.1)
    with pytest.raises(ContractError):
        smoothed_speed(make_track([None, 5.0]))


def test_track_position_lookup():
    track = make_track([3.0, 2.5, None], stop=False)
    assert track.position_at(0.1) == 2.5
    assert track.position_at(0.2) is None
    assert track.position_at(7.0) is None
    assert track.has_crossing


def test_sweep_config_grid():
    base = dict(alpha=0.5, l=20.0, l0=15.0, omega=1.0, x0=5.0, t_max=1.0)
    progression = SweepConfig(base=base, alpha_start=0.5, alpha_step=0.1, alpha_count=3)
    assert progression.grid() == [0.5, 0.6, 0.7]
    assert SweepConfig(base=base, alphas=[0.9, 0.3]).grid() == [0.9, 0.3]
    with pytest.raises(Exception):
        SweepConfig(base=base)
    with pytest.raises(Exception):
        SweepConfig(base=base, alphas=[0.5], alpha_start=0.5, alpha_step=0.1, alpha_count=2)
    with pytest.raises(Exception):
        SweepConfig(base=base, alpha_start=0.8, alpha_step=0.2, alpha_count=3)


def test_single_alpha_sweep():
    """Classical Fisher-KPP: the measured speed is close to 2."""
    print("🔍 Testing a one-point speed sweep...")
    base = SimConfig(alpha=0.5, l=60.0, l0=50.0, omega=1.0, x0=20.0, t_max=40.0, snapshot_stride=1000)
    rows = speed_sweep([1.0], base)
    assert len(rows) == 1
    row = rows[0]
    assert row.status == 'stopped'
    assert row.alpha == 1.0
    assert row.c_star == pytest.approx(critical_speed(1.0, 1.0))
    assert row.rel_error_smoothed < 0.15
    assert row.stop_time is not None


def test_sweep_reports_failures():
    """A failing run is reported as a row instead of aborting the sweep."""
    base = SimConfig(alpha=0.5, l=20.0, l0=15.0, omega=1.0, x0=5.0, t_max=100.0, dt=0.01,
                     memory_budget_mb=0.5)
    rows = speed_sweep([0.5], base)
    assert rows[0].status == 'failed'
    assert 'MB' in rows[0].message


def test_sweep_survives_unexpected_errors(monkeypatch):
    """A non-library exception in one run still yields a failed row per alpha."""
    import fracfront.core.fkpp_solver as solver

    def broken_run(config, nl=None, u0=None):
        raise RuntimeError(f"boom at alpha={config.alpha}")

    monkeypatch.setattr(solver, 'run', broken_run)
    base = SimConfig(alpha=0.5, l=20.0, l0=15.0, omega=1.0, x0=5.0, t_max=1.0)
    rows = speed_sweep([0.7, 0.3], base)
    assert [r.alpha for r in rows] == [0.3, 0.7]
    assert all(r.status == 'failed' for r in rows)
    assert rows[0].message.startswith('RuntimeError')
    assert 'alpha=0.7' in rows[1].message


def test_sweep_rejects_pure_diffusion():
    base = SimConfig(alpha=0.5, l=20.0, l0=15.0, omega=1.0, x0=5.0, t_max=1.0, nonlinearity={'kind': 'none'})
    with pytest.raises(ContractError):
        speed_sweep([0.5], base)


if __name__ == "__main__":
    test_crossing_interpolates()
    test_speeds_from_track()
    test_smoothed_speed_ignores_jitter()
    test_speed_contract_errors()
    test_track_position_lookup()
    test_sweep_config_grid()
    test_single_alpha_sweep()
    test_sweep_reports_failures()
    with pytest.MonkeyPatch.context() as mp:
        test_sweep_survives_unexpected_errors(mp)
    test_sweep_rejects_pure_diffusion()
    print("✅ All front tests passed")
