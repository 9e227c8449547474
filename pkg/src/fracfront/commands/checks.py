#!/usr/bin/env python3
"""
Check commands: dispersion, kernel-check and malthus-check emit JSON reports.
"""

import time

import click

from fracfront.commands.common import app_config, emit_json, finish, handle_errors, new_writer
from fracfront.reports.base_report import ReportManager
from fracfront.reports.dispersion_report import DispersionCheckReport
from fracfront.reports.kernel_check_report import KernelCheckReport
from fracfront.reports.malthus_report import MalthusCheckReport
from fracfront.utils.display import display_dispersion, display_report
from fracfront.utils.exceptions import DiagnosticError
from fracfront.utils.logger import setup_logger

logger = setup_logger(__name__)


def report_manager() -> ReportManager:
    manager = ReportManager()
    manager.register_report('dispersion', DispersionCheckReport())
    manager.register_report('kernel-check', KernelCheckReport())
    manager.register_report('malthus-check', MalthusCheckReport())
    return manager


def _fail_on_checks(manager: ReportManager, data: dict) -> None:
    failed = manager.failed_checks(data)
    if failed:
        raise DiagnosticError(f"failed checks: {', '.join(failed)}", details={'failed': failed})


@click.command()
@click.option('--alpha', type=float, default=0.5, show_default=True)
@click.option('--c', 'speed', type=float, default=4.0, show_default=True, help='Wave speed')
@click.option('--fprime0', type=float, default=1.0, show_default=True, help="f'(0)")
@click.pass_context
@handle_errors
def dispersion(ctx, alpha, speed, fprime0):
    """Roots of the characteristic polynomial (JSON on stdout)."""
    data = report_manager().generate_report('dispersion', alpha=alpha, c=speed, fprime0=fprime0)
    emit_json(data)
    display_dispersion(data)


@click.command(name='kernel-check')
@click.option('--alpha', type=float, default=0.5, show_default=True)
@click.option('--c', 'speed', type=float, default=2.0, show_default=True, help='Wave speed')
@click.option('--kappa', type=float, default=2.0, show_default=True)
@click.option('--half-width', type=float, default=20.0, show_default=True, help='Table half width L')
@click.option('--step', type=float, default=1e-3, show_default=True, help='Table step h')
@click.pass_context
@handle_errors
def kernel_check(ctx, alpha, speed, kappa, half_width, step):
    """Kernel identities with measured and expected values (JSON on stdout)."""
    manager = report_manager()
    data = manager.generate_report('kernel-check', alpha=alpha, c=speed, kappa=kappa, L=half_width, h=step)
    emit_json(data)
    display_report(data)
    _fail_on_checks(manager, data)


@click.command(name='malthus-check')
@click.option('--alpha', type=float, default=0.5, show_default=True)
@click.option('--zeta', type=float, default=-1.0, show_default=True)
@click.option('--t-end', type=float, default=1.0, show_default=True)
@click.option('--dt', 'dts', type=float, multiple=True, help='Step sizes (default 1/40, 1/80, 1/160)')
@click.option('--explicit', is_flag=True, help='Treat zeta v explicitly')
@click.pass_context
@handle_errors
def malthus_check(ctx, alpha, zeta, t_end, dts, explicit):
    """L1 order study for d^alpha v = zeta v (JSON on stdout, CSV in --out)."""
    started = time.perf_counter()
    specfun = app_config(ctx).get('specfun', {})
    ml_options = {
        'series_radius': specfun.get('ml_series_radius', 2.0),
        'switch': specfun.get('ml_switch', 10.0),
        'max_abs_z': specfun.get('ml_max_abs_z', 1e4),
    }
    manager = report_manager()
    kwargs = {'alpha': alpha, 'zeta': zeta, 't_end': t_end, 'implicit': not explicit, 'ml_options': ml_options}
    if dts:
        kwargs['dts'] = sorted(dts, reverse=True)
    data = manager.generate_report('malthus-check', **kwargs)

    rows = data.pop('rows')
    writer = new_writer(ctx)
    writer.add_csv('malthus.csv', ['t', 'v_numeric', 'v_exact', 'abs_error'], rows)
    emit_json(data)
    display_report(data)
    finish(ctx, writer, 'malthus-check', dict(kwargs), started)
