#!/usr/bin/env python3
"""
Simulate command: one time-fractional Fisher-KPP run with front tracking.
"""

import time

import click

from fracfront.commands.common import app_config, finish, handle_errors, new_writer
from fracfront.core.dispersion import critical_speed
from fracfront.core.fkpp_solver import run, variance_slope
from fracfront.models.simulation import SimConfig
from fracfront.storage.run_config import load_run_config
from fracfront.utils.display import display_trajectory, display_variance
from fracfront.utils.logger import setup_logger

logger = setup_logger(__name__)


def snapshot_name(t: float) -> str:
    return f"snapshot_t{t:.6f}.csv"


@click.command()
@click.option('--config', 'config_path', required=True, type=click.Path(), help='JSON run configuration (SimConfig)')
@click.pass_context
@handle_errors
def simulate(ctx, config_path):
    """Run the solver, track the front and write snapshots."""
    started = time.perf_counter()
    defaults = app_config(ctx).get('solver', {})
    config = load_run_config(config_path, SimConfig, 'simulate', defaults=defaults)
    writer = new_writer(ctx)
    logger.info(f"simulate alpha={config.alpha} l={config.l} dx={config.dx} dt={config.dt} t_max={config.t_max}")

    if config.nonlinearity.is_zero:
        result = variance_slope(config)
        writer.add_csv('variance.csv', ['t', 'variance'], zip(result.times, result.variances))
        writer.add_json('variance.json', result.model_dump(exclude={'times', 'variances'}))
        display_variance(result)
        finish(ctx, writer, 'simulate', config.model_dump(mode='json'), started, steps=config.max_steps)
        return

    trajectory = run(config)
    track = trajectory.track
    for t, u in trajectory.snapshots:
        writer.add_csv(snapshot_name(t), ['x', 'u'], zip(trajectory.x.tolist(), u.tolist()))
    writer.add_csv('track.csv', ['t', 'x_star'], zip(track.times, track.x_star))

    c_star = critical_speed(config.alpha, config.nonlinearity.fprime0)
    front = {
        'status': trajectory.status,
        'level': track.level,
        'stop_time': track.stop_time,
        'c_num': track.c_num,
        'c_num_signed': track.c_num_signed,
        'c_num_smoothed': track.c_num_smoothed,
        'c_star': c_star,
        'rel_error': abs(track.c_num - c_star) / c_star if track.c_num is not None else None,
        'max_crossings': track.max_crossings,
        'steps': trajectory.steps,
        'range_violation': trajectory.range_violation,
    }
    writer.add_json('front.json', front)
    display_trajectory(trajectory, c_star)
    finish(ctx, writer, 'simulate', config.model_dump(mode='json'), started, steps=trajectory.steps)
