"""
1-D time-fractional Fisher-KPP solver on [0, l] with Neumann boundaries.

Implicit diffusion, explicit reaction and the full L1 memory:

    a (u_{j+1,k} - u_{j,k} + mem_{j,k}) - (D_h u_{j+1})_k = f(u_{j,k}),
    a = 1 / (Gamma(2-alpha) dt^alpha),

with ghost nodes u_{-1} := u_1 and u_{K+1} := u_{K-1} folded into the first
and last rows of the tridiagonal system.
"""

import time
from typing import Optional

import numpy as np
from scipy.linalg import solve_banded

from fracfront.core.caputo import l1_weights, lagged_memory
from fracfront.core.front import crossing, crossing_count, numerical_speed, signed_speed, smoothed_speed
from fracfront.core.specfun import gamma
from fracfront.models.front import FrontTrack, Trajectory
from fracfront.models.nonlinearity import Nonlinearity
from fracfront.models.simulation import (
    InitialKind, RunStatus, SimConfig, SimState, VarianceResult,
)
from fracfront.utils.exceptions import (
    ConfigError, ContractError, DiagnosticError, MemoryBudgetError, NumericalError,
)
from fracfront.utils.logger import setup_logger

logger = setup_logger(__name__)

MIN_REGION_NODES = 4
RANGE_TOL = 1e-8
LOG_STRIDE = 500


def init(config: SimConfig, u0: Optional[np.ndarray] = None) -> SimState:
    """
    Initial state on the grid x_k = k dx.

    Step data: 0 on [0, l0) and omega on [l0, l], the node at l0 included.
    Pulse data: omega on the nodes within pulse_width/2 of l/2.
    An explicit u0 replaces both.

    Raises:
        ConfigError: Fewer than 4 nodes in a region of the step
        ContractError: u0 does not match the grid
        MemoryBudgetError: The full history would exceed memory_budget_mb
    """
    n = config.nodes
    x = config.dx * np.arange(n)

    if u0 is not None:
        u0 = np.asarray(u0, dtype=float)
        if u0.shape != x.shape:
            raise ContractError(f"initial data has shape {u0.shape}, grid has {n} nodes")
    elif config.initial == InitialKind.PULSE.value:
        inside = np.abs(x - 0.5 * config.l) <= 0.5 * config.pulse_width + 1e-9 * config.dx
        if not inside.any():
            raise ConfigError(f"pulse_width={config.pulse_width} does not cover a grid node at dx={config.dx}")
        u0 = np.where(inside, config.omega, 0.0)
    else:
        right = x >= config.l0 - 1e-9 * config.dx
        left_nodes, right_nodes = int((~right).sum()), int(right.sum())
        if min(left_nodes, right_nodes) < MIN_REGION_NODES:
            raise ConfigError(
                f"grid too coarse to represent l0={config.l0}: {left_nodes} nodes left, "
                f"{right_nodes} right (need {MIN_REGION_NODES})",
                details={'dx': config.dx, 'l0': config.l0},
            )
        u0 = np.where(right, config.omega, 0.0)

    steps = config.max_steps
    needed_mb = (2 * steps + 1) * n * 8 / 2 ** 20
    if needed_mb > config.memory_budget_mb:
        raise MemoryBudgetError(
            f"L1 history needs {needed_mb:.0f} MB, budget is {config.memory_budget_mb:.0f} MB",
            details={'steps': steps, 'nodes': n},
        )

    history = np.empty((steps + 1, n))
    history[0] = u0
    diffs = np.empty((steps, n))
    weights = l1_weights(config.alpha, steps + 1, config.dt)
    logger.debug(f"init: {n} nodes, {steps} steps, history {needed_mb:.1f} MB")
    return SimState(config=config, x=x, history=history, diffs=diffs, j=0, weights=weights)


def diffusion_matrix(n: int, dx: float, a: float) -> np.ndarray:
    """Banded (1, 1) storage of a I - D_h with ghost-node Neumann rows."""
    inv_dx2 = 1.0 / (dx * dx)
    ab = np.empty((3, n))
    ab[0, :] = -inv_dx2
    ab[1, :] = a + 2.0 * inv_dx2
    ab[2, :] = -inv_dx2
    ab[0, 0] = 0.0
    ab[2, -1] = 0.0
    ab[0, 1] = -2.0 * inv_dx2
    ab[2, -2] = -2.0 * inv_dx2
    return ab


def step(state: SimState, nl: Nonlinearity) -> SimState:
    """
    Advance one time step in place and return the state.

    Raises:
        ContractError: History buffer exhausted or system not diagonally dominant
    """
    j = state.j
    if j >= state.diffs.shape[0]:
        raise ContractError(f"history buffer full after {j} steps")

    a = state.weights.scale
    ab = diffusion_matrix(state.x.size, state.config.dx, a)
    if not np.all(np.abs(ab[1]) >= np.abs(np.roll(ab[0], -1)) + np.abs(np.roll(ab[2], 1))):
        raise ContractError("diffusion matrix lost diagonal dominance")

    u = state.history[j]
    mem = lagged_memory(state.diffs, state.weights, j)
    rhs = a * (u - mem) + nl.f(u)
    u_new = solve_banded((1, 1), ab, rhs, check_finite=False)
    if not np.all(np.isfinite(u_new)):
        raise NumericalError(f"non-finite values at step {j + 1}", details={'step': j + 1})

    state.history[j + 1] = u_new
    state.diffs[j] = u_new - u
    state.j = j + 1

    if not nl.is_zero:
        violation = max(-float(u_new.min()), float(u_new.max()) - 1.0, 0.0)
        if violation > RANGE_TOL and violation > state.range_violation:
            logger.warning(f"step {state.j}: solution leaves [0, 1] by {violation:.3e}")
        state.range_violation = max(state.range_violation, violation)
    return state


def run(config: SimConfig, nl: Optional[Nonlinearity] = None, u0: Optional[np.ndarray] = None) -> Trajectory:
    """
    Step until t_max or until the tracked front passes x0.

    Args:
        config: Simulation configuration
        nl: Reaction term; defaults to config.nonlinearity
        u0: Optional initial data on the solver grid

    Returns:
        Trajectory with snapshots every snapshot_stride steps (plus the final
        layer) and the full front track
    """
    nl = nl or config.nonlinearity
    started = time.perf_counter()
    state = init(config, u0)
    track = FrontTrack(level=config.level)

    def observe():
        position = crossing(state.x, state.u, config.level)
        track.record(state.t, position, crossing_count(state.u, config.level))
        return position

    snapshots = [(0.0, state.u.copy())]
    observe()
    status = RunStatus.HORIZON

    while state.j < config.max_steps:
        step(state, nl)
        position = observe()
        if state.j % config.snapshot_stride == 0:
            snapshots.append((state.t, state.u.copy()))
        if state.j % LOG_STRIDE == 0:
            logger.debug(f"t={state.t:.3f} x*={position}")
        if position is not None and position < config.x0:
            status = RunStatus.STOPPED
            track.stop_time = state.t
            break

    if snapshots[-1][0] != state.t:
        snapshots.append((state.t, state.u.copy()))

    if status == RunStatus.STOPPED:
        track.c_num = numerical_speed(track, config.dt)
        track.c_num_signed = signed_speed(track, config.dt)
        track.c_num_smoothed = smoothed_speed(track)
        logger.info(f"alpha={config.alpha}: front reached x0={config.x0} at T={track.stop_time:.4f}, "
                    f"c_num={track.c_num:.5f}, smoothed={track.c_num_smoothed:.5f}")
    elif not track.has_crossing:
        status = RunStatus.NO_CROSSING
        logger.info(f"alpha={config.alpha}: level {config.level} never crossed before t={state.t:.3f}")
    else:
        logger.info(f"alpha={config.alpha}: horizon t_max={config.t_max} reached before x0")

    return Trajectory(
        config=config,
        x=state.x,
        snapshots=snapshots,
        track=track,
        status=status,
        steps=state.j,
        range_violation=state.range_violation,
        wall_seconds=time.perf_counter() - started,
    )


def _variance(x: np.ndarray, u: np.ndarray, center: float) -> float:
    return float(np.sum((x - center) ** 2 * u) / np.sum(u))


def variance_slope(config: SimConfig, boundary_fraction: float = 0.05,
                   boundary_tol: float = 1e-6) -> VarianceResult:
    """
    Log-log slope of the variance increment of pure diffusion from a centred pulse.

    Fits log(var(t) - var(0)) against log t over [t_max/10, t_max].

    Raises:
        ConfigError: Reaction not identically zero or initial data not a pulse
        DiagnosticError: More than boundary_tol of the mass near the boundaries
    """
    if not config.nonlinearity.is_zero:
        raise ConfigError("variance_slope needs the pure-diffusion nonlinearity (kind='none')")
    if config.initial != InitialKind.PULSE.value:
        raise ConfigError("variance_slope needs pulse initial data")

    state = init(config)
    nl = config.nonlinearity
    center = 0.5 * config.l
    band = boundary_fraction * config.l
    near_boundary = (state.x <= band) | (state.x >= config.l - band)

    var0 = _variance(state.x, state.u, center)
    times, variances = [], []
    boundary_mass = 0.0
    t_start = config.t_max / 10.0

    while state.j < config.max_steps:
        step(state, nl)
        if state.t < t_start - 1e-12:
            continue
        total = np.sum(state.u)
        boundary_mass = max(boundary_mass, float(np.sum(state.u[near_boundary]) / total))
        times.append(state.t)
        variances.append(_variance(state.x, state.u, center))

    if boundary_mass > boundary_tol:
        raise DiagnosticError(
            f"boundary contamination {boundary_mass:.2e} exceeds {boundary_tol:.0e}; widen the domain",
            details={'boundary_mass': boundary_mass},
        )
    if len(times) < 2:
        raise DiagnosticError("fit window holds fewer than two time levels")

    increments = np.asarray(variances) - var0
    slope, intercept = np.polyfit(np.log(times), np.log(increments), 1)
    prefactor = float(np.exp(np.mean(np.log(increments) - config.alpha * np.log(times))))
    logger.info(f"variance slope alpha={config.alpha}: {slope:.4f}")
    return VarianceResult(
        alpha=config.alpha,
        slope=float(slope),
        intercept=float(intercept),
        prefactor=prefactor,
        expected_prefactor=2.0 / gamma(1.0 + config.alpha),
        times=times,
        variances=list(variances),
        boundary_mass=boundary_mass,
    )
