#!/usr/bin/env python3
"""
fracfront - Main Entry Point
"""

import logging

import click

from fracfront import __version__
from fracfront.commands.checks import dispersion, kernel_check, malthus_check
from fracfront.commands.common import app_config
from fracfront.commands.config import config
from fracfront.commands.profile import profile
from fracfront.commands.simulate import simulate
from fracfront.commands.speed_sweep import speed_sweep
from fracfront.utils import display
from fracfront.utils.logger import set_console_level, setup_logger

# Set up logger
logger = setup_logger(__name__)


@click.group()
@click.version_option(__version__, prog_name='fracfront')
@click.option('--out', 'out_dir', type=click.Path(file_okay=False), default='.', show_default=True,
              help='Directory for output files')
@click.option('--threads', type=click.IntRange(min=1), default=1, show_default=True,
              help='Worker processes for speed-sweep')
@click.option('--seed', type=int, default=None, help='Reserved; every algorithm is deterministic')
@click.option('--verbose', '-v', is_flag=True, help='Debug logging on the console')
@click.option('--quiet', '-q', is_flag=True, help='No terminal summaries')
@click.pass_context
def cli(ctx, out_dir, threads, seed, verbose, quiet):
    """fracfront - fronts of the time-fractional Fisher-KPP equation."""
    ctx.ensure_object(dict)
    ctx.obj['out_dir'] = out_dir
    ctx.obj['threads'] = threads
    ctx.obj['seed'] = seed

    if verbose:
        set_console_level(logging.DEBUG)
    display.console.quiet = quiet
    display.set_colors(bool(app_config(ctx).get('display.colors', True)))

    logger.debug(f"CLI initialized with out={out_dir}, threads={threads}, seed={seed}")


# Register commands
cli.add_command(simulate)
cli.add_command(speed_sweep)
cli.add_command(profile)
cli.add_command(dispersion)
cli.add_command(kernel_check)
cli.add_command(malthus_check)
cli.add_command(config)


def main():
    """Main entry point for the CLI application."""
    cli()


if __name__ == '__main__':
    main()
