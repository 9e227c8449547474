#!/usr/bin/env python3
"""
Speed sweep command: numerical front speed against c*_alpha over an alpha grid.
"""

import time

import click

from fracfront.commands.common import app_config, finish, handle_errors, new_writer
from fracfront.core.front import speed_sweep as run_sweep
from fracfront.models.front import SweepConfig
from fracfront.storage.run_config import load_run_config
from fracfront.utils.display import display_sweep
from fracfront.utils.logger import setup_logger

logger = setup_logger(__name__)

COLUMNS = ['alpha', 'c_num', 'c_num_smoothed', 'c_star', 'rel_error', 'rel_error_smoothed', 'stop_time', 'status']


@click.command(name='speed-sweep')
@click.option('--config', 'config_path', required=True, type=click.Path(), help='JSON sweep configuration')
@click.pass_context
@handle_errors
def speed_sweep(ctx, config_path):
    """Run the front experiment for every alpha of the grid."""
    started = time.perf_counter()
    defaults = {'base': app_config(ctx).get('solver', {})}
    config = load_run_config(config_path, SweepConfig, 'speed-sweep', defaults=defaults)
    threads = ctx.obj.get('threads', 1)

    rows = run_sweep(config.grid(), config.base, threads=threads)
    writer = new_writer(ctx)
    writer.add_csv('sweep.csv', COLUMNS, ([getattr(row, name) for name in COLUMNS] for row in rows))
    display_sweep(rows)
    finish(ctx, writer, 'speed-sweep', config.model_dump(mode='json'), started)
