"""
Shared plumbing of the subcommands: error mapping, outputs and manifests.
"""

import functools
import sys
import time
from typing import Any, Dict, Optional

import click

from fracfront import __version__
from fracfront.models.manifest import RunManifest
from fracfront.storage.config_manager import ConfigManager
from fracfront.storage.output_writer import OutputWriter, dumps
from fracfront.utils.display import display_error
from fracfront.utils.exceptions import FracFrontError
from fracfront.utils.logger import setup_logger

logger = setup_logger(__name__)

NUMERIC_FAILURE = 3


def handle_errors(func):
    """Translate FracFrontError into its exit code; anything unexpected exits with 3."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (click.exceptions.ClickException, click.exceptions.Exit, click.exceptions.Abort):
            raise
        except FracFrontError as e:
            logger.error(f"{type(e).__name__}: {e} {e.details or ''}")
            display_error(str(e), e.exit_code)
            sys.exit(e.exit_code)
        except Exception as e:
            logger.exception(f"unexpected failure: {e}")
            display_error(f"unexpected failure: {e}", NUMERIC_FAILURE)
            sys.exit(NUMERIC_FAILURE)
    return wrapper


def app_config(ctx: click.Context) -> ConfigManager:
    if 'app_config' not in ctx.obj:
        ctx.obj['app_config'] = ConfigManager()
    return ctx.obj['app_config']


def new_writer(ctx: click.Context) -> OutputWriter:
    precision = int(app_config(ctx).get('output.precision', 17))
    return OutputWriter(ctx.obj.get('out_dir', '.'), precision=precision)


def finish(ctx: click.Context, writer: OutputWriter, subcommand: str, config: Dict[str, Any],
           started: float, steps: Optional[int] = None) -> RunManifest:
    """Commit the staged outputs together with their manifest."""
    manifest = RunManifest(subcommand=subcommand, version=__version__, config=config,
                           wall_seconds=time.perf_counter() - started, steps=steps)
    writer.commit(manifest)
    return manifest


def emit_json(data: Dict[str, Any]) -> None:
    """JSON report on stdout."""
    click.echo(dumps(data), nl=False)
