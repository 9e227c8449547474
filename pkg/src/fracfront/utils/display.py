"""
Display utilities for the fracfront command line.

Everything goes to stderr; stdout is reserved for JSON reports.
"""

from typing import Any, Dict, List, Optional

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from fracfront.models.front import SweepRow, Trajectory
from fracfront.models.simulation import VarianceResult
from fracfront.models.wave import WaveProfile

console = Console(stderr=True)


def set_colors(enabled: bool) -> None:
    console.no_color = not enabled


def _fmt(value: Optional[float], digits: int = 6) -> str:
    if value is None:
        return "-"
    return f"{value:.{digits}g}"


def display_error(message: str, exit_code: int) -> None:
    console.print(Panel(message, title=f"[bold red]error (exit {exit_code})[/bold red]", border_style="red"))


def display_trajectory(trajectory: Trajectory, c_star: Optional[float]) -> None:
    """Summary of a simulate run."""
    track = trajectory.track
    status_colors = {'stopped': 'green', 'horizon': 'yellow', 'no_crossing': 'red'}
    color = status_colors.get(trajectory.status, 'white')

    table = Table(title=f"[bold blue]simulate alpha={trajectory.config.alpha}[/bold blue]",
                  show_header=True, header_style="bold magenta")
    table.add_column("Quantity", min_width=18)
    table.add_column("Value", justify="right")
    table.add_row("status", f"[{color}]{trajectory.status}[/{color}]")
    table.add_row("steps", str(trajectory.steps))
    table.add_row("stop time T", _fmt(track.stop_time))
    table.add_row("c_num", _fmt(track.c_num))
    table.add_row("c_num (smoothed)", _fmt(track.c_num_smoothed))
    table.add_row("c*_alpha", _fmt(c_star))
    table.add_row("max crossings", str(track.max_crossings))
    if trajectory.range_violation > 0.0:
        table.add_row("range violation", f"[red]{trajectory.range_violation:.3e}[/red]")
    table.add_row("wall time [s]", f"{trajectory.wall_seconds:.2f}")
    console.print(table)


def display_variance(result: VarianceResult) -> None:
    console.print(Panel(
        f"slope {result.slope:.4f} (alpha {result.alpha})\n"
        f"prefactor {result.prefactor:.4f} (2/Gamma(1+alpha) = {result.expected_prefactor:.4f})\n"
        f"boundary mass {result.boundary_mass:.2e}",
        title="[bold blue]variance diagnostic[/bold blue]",
    ))


def display_sweep(rows: List[SweepRow]) -> None:
    table = Table(title="[bold blue]speed sweep[/bold blue]", show_header=True, header_style="bold magenta")
    for name in ("alpha", "c_num", "smoothed", "c*", "rel. error", "status"):
        table.add_column(name, justify="right")
    for row in rows:
        error = row.rel_error_smoothed
        if error is None:
            error_str = "-"
        else:
            color = "green" if error < 0.1 else "yellow" if error < 0.3 else "red"
            error_str = f"[{color}]{error:.4f}[/{color}]"
        table.add_row(_fmt(row.alpha, 4), _fmt(row.c_num), _fmt(row.c_num_smoothed), _fmt(row.c_star),
                      error_str, row.status)
    console.print(table)


def display_profile(profile: WaveProfile, defect: Optional[float]) -> None:
    table = Table(title=f"[bold blue]profile alpha={profile.alpha} c={profile.c:.6g}[/bold blue]",
                  show_header=True, header_style="bold magenta")
    table.add_column("Quantity", min_width=20)
    table.add_column("Value", justify="right")
    table.add_row("lambda1 / grid", f"{profile.lambda1:.6f} / {profile.lambda1_discrete:.6f}")
    table.add_row("lambda2", _fmt(profile.lambda2))
    table.add_row("kappa, ||P^-1 N||", f"{profile.kappa:.4f}, {profile.theta_bound:.4f}")
    table.add_row("iterations", str(profile.iterations))
    table.add_row("residual sup", f"{profile.residual_sup:.3e}")
    table.add_row("decay exponent", _fmt(profile.decay_exponent))
    table.add_row("right deficit", f"{profile.right_deficit:.3e}")
    if defect is not None:
        color = "green" if defect < 0.0 else "red"
        table.add_row("sub-solution defect", f"[{color}]{defect:.3e}[/{color}]")
    if profile.c != profile.c_requested:
        table.add_row("critical offset", f"{profile.critical_offset:.1e}")
    console.print(table)


def display_report(data: Dict[str, Any]) -> None:
    """Check list of a report: name, measured, expected, pass flag."""
    checks = data.get('checks', [])
    table = Table(title=f"[bold blue]{data.get('report_name', 'report')}[/bold blue]",
                  show_header=True, header_style="bold magenta")
    table.add_column("Check", min_width=20)
    table.add_column("Measured", justify="right")
    table.add_column("Expected", justify="right")
    table.add_column("Tolerance", justify="right")
    table.add_column("", width=4)
    for check in checks:
        mark = "[green]ok[/green]" if check['passed'] else "[red]FAIL[/red]"
        table.add_row(check['name'], _fmt(check['measured'], 8), _fmt(check['expected'], 8),
                      _fmt(check['tolerance'], 2), mark)
    console.print(table)


def display_dispersion(data: Dict[str, Any]) -> None:
    roots = ", ".join(f"{r:.8f}" for r in data['roots']) or "none"
    console.print(Panel(
        f"c = {data['c']}, c*_alpha = {data['cstar']:.8f}\n"
        f"regime: {data['regime']}\n"
        f"roots: {roots}",
        title=f"[bold blue]dispersion alpha={data['alpha']}[/bold blue]",
    ))
