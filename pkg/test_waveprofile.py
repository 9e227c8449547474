#!/usr/bin/env python3
"""
Test script for the traveling-wave profile construction.

The full constructions are marked slow; run them with `pytest -m slow`.
They use a coarser grid than the defaults (domain_factor 40, h <= 0.1) and
monotone_tol 1e-8 to keep the run time in minutes.
"""

import math
import os
import sys
from functools import lru_cache

import numpy as np
import pytest
from scipy import integrate

# Add the src directory to the path so we can import the modules
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

from fracfront.core.dispersion import char_roots
from fracfront.core.wavekernels import LatticeGreenOperator, lattice_root
from fracfront.core.waveprofile import (
    R, corner_upper, decay_fit, decay_rate, lower_params, lower_solution, mollifier, profile_rows,
    solve_profile, speed_consistency, subsolution_check, subsolution_defects, upper_params, upper_solution,
)
from fracfront.models.nonlinearity import Nonlinearity
from fracfront.models.wave import LowerSolutionParams, ProfileOptions, WaveProfile
from fracfront.utils.exceptions import ConfigError, ContractError, DiagnosticError, RefusalError

ROOTS = char_roots(0.5, 4.0, 1.0)
LAMBDA1, LAMBDA2 = ROOTS.lambda1, ROOTS.lambda2
FAST_OPTIONS = dict(domain_factor=40.0, step_factor=0.05, max_step=0.1, monotone_tol=1e-8)


@lru_cache(maxsize=None)
def converged_profile(grid_shift=0.0, kappa=None):
    options = ProfileOptions(grid_shift=grid_shift, kappa=kappa, **FAST_OPTIONS)
    return solve_profile(0.5, 4.0, Nonlinearity(), options)


def test_mollifier_unit_mass():
    print("🔍 Testing the mollifier...")
    mass, _ = integrate.quad(mollifier, -1.0, 1.0, epsabs=1e-14)
    assert mass == pytest.approx(1.0, abs=1e-10)
    assert mollifier(1.0) == 0.0
    assert mollifier(-1.5) == 0.0
    assert mollifier(0.0) > mollifier(0.5) > 0.0
    assert np.allclose(mollifier(np.array([-0.3, 0.3])), mollifier(0.3))


def test_R_limits():
    assert R(LAMBDA1, 1e-8) == pytest.approx(1.0, abs=1e-10)
    # Jensen: the exponential moment of a centred density exceeds one
    assert R(LAMBDA1, 0.5) > 1.0
    assert R(2.0, 0.5) > R(1.0, 0.5)


def test_upper_solution_shape():
    params = upper_params(LAMBDA1, 0.1)
    xi = np.linspace(-30.0, 5.0, 3501)
    upper = upper_solution(params, xi)
    assert np.all(upper[xi >= 0.1] == 1.0)
    left = xi <= -0.1
    assert np.allclose(upper[left], params.R_eps * np.exp(LAMBDA1 * xi[left]), rtol=1e-14)
    assert np.all(np.diff(upper) >= -1e-14)
    assert upper.max() <= 1.0 + 1e-12
    # continuous across the mollified window
    inner = upper_solution(params, np.array([-0.1 + 1e-9, 0.1 - 1e-9]))
    assert inner[0] == pytest.approx(params.R_eps * math.exp(-0.1 * LAMBDA1), abs=1e-6)
    assert inner[1] == pytest.approx(1.0, abs=1e-6)


def test_lower_solution_shape():
    low = lower_params(LAMBDA1, LAMBDA2, 0.1, 0.5, 4.0, Nonlinearity())
    assert low.nu == pytest.approx(1.5)
    assert low.h >= 1.5
    assert low.xi0 <= low.xi_star
    assert low.xi0 < 0.0

    xi = np.linspace(-60.0, 5.0, 6501)
    lower = lower_solution(low, xi)
    upper = upper_solution(upper_params(LAMBDA1, 0.1), xi)
    assert np.all(lower[xi >= low.xi0 + 0.1] == 0.0)
    assert lower.min() >= -1e-14
    assert np.all(lower <= upper + 1e-14)
    assert lower.max() > 0.0


def test_lower_params_errors():
    with pytest.raises(ConfigError):
        lower_params(LAMBDA1, LAMBDA2, 0.1, 0.5, 4.0, Nonlinearity(), nu=2.5)
    bad = LowerSolutionParams(lambda1=LAMBDA1, epsilon=0.1, nu=1.5, h=1.5, xi0=-1.0, xi_star=-5.0)
    with pytest.raises(ConfigError):
        lower_solution(bad, np.zeros(3))


def test_decay_fit_recovers_exponential():
    xi = np.linspace(-80.0, 0.0, 8001)
    phi = 3.0 * np.exp(0.4 * xi)
    fit = decay_fit(xi, phi)
    assert fit.exponent == pytest.approx(0.4, abs=1e-10)
    assert fit.amplitude == pytest.approx(3.0, rel=1e-8)
    assert fit.points >= 3


def test_decay_fit_needs_a_decade():
    xi = np.linspace(-1.0, 0.0, 11)
    with pytest.raises(DiagnosticError):
        decay_fit(xi, np.full(11, 0.5))
    with pytest.raises(DiagnosticError):
        decay_fit(xi, 1e-4 * (1.0 + 0.01 * (xi + 1.0)))


def test_refusal_below_cstar():
    with pytest.raises(RefusalError):
        solve_profile(0.5, 3.0)


def test_pure_diffusion_is_rejected():
    with pytest.raises(ConfigError):
        solve_profile(0.5, 4.0, Nonlinearity(kind='none'))


def test_corner_upper_shape():
    params = upper_params(LAMBDA1, 0.1)
    xi = np.linspace(-30.0, 5.0, 701)
    corner = corner_upper(params, xi)
    assert corner.max() == 1.0
    assert np.all(np.diff(corner) >= 0.0)
    assert np.all(corner >= upper_solution(params, xi) - 1e-12)


def _grid_envelopes():
    lam = lattice_root(0.5, 4.0, 0.05, 1.0, 0.5 * LAMBDA1, ROOTS.lambda_star)
    op = LatticeGreenOperator(0.5, 4.0, 1.0, 0.05, 1601, tail_rate=lam)
    xi = 0.05 * (np.arange(1601) - 1200)
    return lam, op, xi


def test_grid_envelopes_are_upper_and_lower_solutions():
    """One splitting sweep lowers the corner envelope and raises the grid lower solution."""
    nl = Nonlinearity()
    lam, op, xi = _grid_envelopes()

    def sweep(psi):
        return op.sweep(psi, psi + nl.f(psi))

    corner = corner_upper(upper_params(lam, 0.1), xi)
    assert np.max(sweep(corner) - corner) <= 1e-10

    low = lower_params(lam, LAMBDA2, 0.1, 0.5, 4.0, nl, dispersion=lambda mu: op.dispersion(mu, 1.0))
    lower = lower_solution(low, xi)
    assert lower.max() > 0.0
    assert np.max(lower - sweep(lower)) <= 1e-8
    assert np.all(sweep(lower) <= sweep(corner) + 1e-14)


def test_lower_params_start_and_dispersion():
    first = lower_params(LAMBDA1, LAMBDA2, 0.1, 0.5, 4.0, Nonlinearity())
    later = lower_params(LAMBDA1, LAMBDA2, 0.1, 0.5, 4.0, Nonlinearity(), h_start=4.0 * first.h)
    assert later.h >= 4.0 * first.h
    assert later.xi0 < first.xi0
    with pytest.raises(ConfigError):
        lower_params(LAMBDA1, LAMBDA2, 0.1, 0.5, 4.0, Nonlinearity(), dispersion=lambda mu: 0.1)


def test_decay_rate_of_profile():
    xi = np.linspace(-80.0, 0.0, 8001)
    profile = WaveProfile.model_construct(xi=xi, phi=3.0 * np.exp(0.4 * xi))
    assert decay_rate(profile) == pytest.approx(0.4, abs=1e-10)


def test_kappa_below_reaction_slope_is_rejected():
    with pytest.raises(ConfigError):
        solve_profile(0.5, 4.0, options=ProfileOptions(kappa=0.5))


@pytest.mark.slow
def test_profile_invariants():
    print("🔍 Building the profile at alpha=0.5, c=4 (slow)...")
    profile = converged_profile()
    assert np.interp(0.0, profile.xi, profile.phi) == pytest.approx(0.5, abs=1e-10)
    assert profile.phi[0] < 1e-4
    assert profile.phi.max() < 1.0 + 1e-10
    assert profile.phi[-1] > 0.5
    assert 0.0 < profile.theta_bound <= 0.5
    assert np.all(profile.lower <= profile.phi + 1e-8)
    assert np.all(profile.phi <= profile.upper + 1e-8)
    assert profile.residual_sup < 1e-3
    assert profile.lambda1_discrete == pytest.approx(LAMBDA1, rel=1e-2)
    assert math.isfinite(profile.residual_sup)
    assert profile.right_deficit > 0.0


@pytest.mark.slow
def test_profile_decays_like_lambda1():
    profile = converged_profile()
    assert profile.decay_exponent is not None
    assert profile.decay_exponent == pytest.approx(LAMBDA1, rel=0.02)
    assert decay_rate(profile) == pytest.approx(profile.decay_exponent)


@pytest.mark.slow
def test_profile_is_a_subsolution():
    profile = converged_profile()
    xs = np.linspace(-5.0, 15.0, 20)
    assert subsolution_check(profile, [1.0, 5.0, 20.0], xs) < 0.0
    with pytest.raises(ContractError):
        subsolution_defects(profile, [1000.0], [0.0])
    with pytest.raises(ContractError):
        subsolution_defects(profile, [0.0], [0.0])


@pytest.mark.slow
def test_profile_rows():
    profile = converged_profile()
    rows = profile_rows(profile)
    assert len(rows) == profile.xi.size
    assert rows[0][2] == 0.0 and rows[-1][2] == 0.0
    assert rows[100][:2] == (profile.xi[100], profile.phi[100])


@pytest.mark.slow
def test_translation_covariance():
    """Shifting the grid by whole cells leaves the normalized profile in place.

    The translation mode is neutral for the monotone iteration, so agreement
    is only checked to 1e-3.
    """
    base = converged_profile()
    shifted = converged_profile(grid_shift=10 * base.h)
    xi = np.linspace(-10.0, 10.0, 201)
    diff = np.interp(xi, base.xi, base.phi) - np.interp(xi, shifted.xi, shifted.phi)
    assert np.max(np.abs(diff)) < 1e-3


@pytest.mark.slow
def test_speed_consistency():
    """The PDE started from the profile moves at roughly the profile speed."""
    profile = converged_profile()
    speed, deviation = speed_consistency(profile)
    assert speed > 0.0
    assert deviation < 0.25


@pytest.mark.slow
def test_profile_independent_of_kappa():
    """The fixed point of the splitting iteration does not depend on kappa."""
    base = converged_profile()
    other = converged_profile(kappa=1.25)
    assert other.kappa == 1.25
    xi = np.linspace(-10.0, 10.0, 201)
    diff = np.interp(xi, base.xi, base.phi) - np.interp(xi, other.xi, other.phi)
    assert np.max(np.abs(diff)) < 1e-3


if __name__ == "__main__":
    test_mollifier_unit_mass()
    test_R_limits()
    test_upper_solution_shape()
    test_lower_solution_shape()
    test_lower_params_errors()
    test_decay_fit_recovers_exponential()
    test_decay_fit_needs_a_decade()
    test_refusal_below_cstar()
    test_pure_diffusion_is_rejected()
    test_corner_upper_shape()
    test_grid_envelopes_are_upper_and_lower_solutions()
    test_lower_params_start_and_dispersion()
    test_decay_rate_of_profile()
    test_kappa_below_reaction_slope_is_rejected()
    test_profile_invariants()
    test_profile_decays_like_lambda1()
    test_profile_is_a_subsolution()
    test_profile_rows()
    test_translation_covariance()
    test_speed_consistency()
    test_profile_independent_of_kappa()
    print("✅ All profile tests passed")
