import click
import yaml

from fracfront.commands.common import app_config
from fracfront.utils.logger import setup_logger

logger = setup_logger(__name__)


@click.group()
def config():
    """Manage application defaults (~/.fracfront/config.yaml)."""
    pass


@config.command(name='set')
@click.argument('key')
@click.argument('value')
@click.pass_context
def set_config(ctx, key, value):
    """Set a configuration value (YAML scalars: 1e-10, true, 17)."""
    parsed = yaml.safe_load(value)
    # PyYAML reads 1e-10 (no dot) as a string
    if isinstance(parsed, str):
        try:
            parsed = float(parsed)
        except ValueError:
            pass
    app_config(ctx).set(key, parsed)
    click.echo(f"Set '{key}' to '{parsed}'")


@config.command(name='get')
@click.argument('key')
@click.pass_context
def get_config(ctx, key):
    """Get a configuration value."""
    value = app_config(ctx).get(key)
    click.echo(f"{key}: {value}")
