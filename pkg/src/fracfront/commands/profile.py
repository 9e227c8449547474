#!/usr/bin/env python3
"""
Profile command: asymptotic traveling wave for a given speed.
"""

import time

import click
import numpy as np

from fracfront.commands.common import app_config, finish, handle_errors, new_writer
from fracfront.core.waveprofile import profile_rows, solve_profile, subsolution_check
from fracfront.models.wave import ProfileConfig
from fracfront.storage.run_config import load_run_config
from fracfront.utils.display import display_profile
from fracfront.utils.logger import setup_logger

logger = setup_logger(__name__)


def sidecar(profile, defect) -> dict:
    """JSON sidecar of a converged profile."""
    low = profile.lower_params
    return {
        'c': profile.c,
        'c_requested': profile.c_requested,
        'critical_offset': profile.critical_offset if profile.c != profile.c_requested else None,
        'alpha': profile.alpha,
        'nonlinearity': profile.nonlinearity.model_dump(mode='json'),
        'lambda1': profile.lambda1,
        'lambda1_discrete': profile.lambda1_discrete,
        'lambda2': profile.lambda2,
        'kappa': profile.kappa,
        'splitting_bound': profile.theta_bound,
        'h': profile.h,
        'epsilon': profile.upper_params.epsilon,
        'nu': low.nu,
        'h_lower': low.h,
        'xi0': low.xi0,
        'xi_star': low.xi_star,
        'iterations': profile.iterations,
        'final_increment': profile.final_increment,
        'max_monotone_violation': profile.max_monotone_violation,
        'residual_sup': profile.residual_sup,
        'decay_exponent': profile.decay_exponent,
        'decay_amplitude': profile.decay_amplitude,
        'right_deficit': profile.right_deficit,
        'right_exponent': profile.right_exponent,
        'subsolution_max_defect': defect,
        'diagnostics': profile.diagnostics,
    }


@click.command()
@click.option('--config', 'config_path', required=True, type=click.Path(), help='JSON profile configuration')
@click.pass_context
@handle_errors
def profile(ctx, config_path):
    """Construct the traveling-wave profile and check the sub-solution property."""
    started = time.perf_counter()
    defaults = {'options': app_config(ctx).get('profile', {})}
    config = load_run_config(config_path, ProfileConfig, 'profile', defaults=defaults)

    wave = solve_profile(config.alpha, config.c, config.nonlinearity, config.options,
                         at_critical=config.at_critical)
    xs = np.linspace(config.subsolution_x_min, config.subsolution_x_max, config.subsolution_x_count)
    defect = subsolution_check(wave, config.subsolution_times, xs)

    writer = new_writer(ctx)
    writer.add_csv('profile.csv', ['xi', 'phi', 'residual'], profile_rows(wave))
    writer.add_json('profile.json', sidecar(wave, defect))
    display_profile(wave, defect)
    finish(ctx, writer, 'profile', config.model_dump(mode='json'), started, steps=wave.iterations)
