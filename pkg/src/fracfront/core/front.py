"""
Level-set front tracking, stop condition and numerical propagation speed.
"""

from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence

import numpy as np

from fracfront.core.dispersion import critical_speed
from fracfront.models.front import FrontTrack, SweepRow
from fracfront.models.nonlinearity import Nonlinearity
from fracfront.models.simulation import RunStatus, SimConfig
from fracfront.utils.exceptions import ContractError, FracFrontError
from fracfront.utils.logger import setup_logger

logger = setup_logger(__name__)

SMOOTHING_FRACTION = 0.1


def _sign_changes(u: np.ndarray, level: float) -> np.ndarray:
    below = np.asarray(u, dtype=float) < level
    return np.flatnonzero(below[:-1] != below[1:])


def crossing(x: Sequence[float], u: Sequence[float], level: float) -> Optional[float]:
    """
    Leftmost position where u crosses level, by linear interpolation.

    Args:
        x: Grid nodes
        u: Grid values
        level: Contour value

    Returns:
        The interpolated position, or None without a sign change of u - level
    """
    x = np.asarray(x, dtype=float)
    u = np.asarray(u, dtype=float)
    changes = _sign_changes(u, level)
    if changes.size == 0:
        return None
    k = int(changes[0])
    return float(x[k] + (level - u[k]) * (x[k + 1] - x[k]) / (u[k + 1] - u[k]))


def crossing_count(u: Sequence[float], level: float) -> int:
    """Number of sign changes of u - level (1 for a monotone front)."""
    return int(_sign_changes(np.asarray(u, dtype=float), level).size)


def _stop_pair(track: FrontTrack, dt: float):
    if not track.times:
        raise ContractError("empty front track")
    t_end = track.stop_time if track.stop_time is not None else track.times[-1]
    x_end = track.position_at(t_end)
    x_prev = track.position_at(t_end - dt)
    if x_end is None or x_prev is None:
        raise ContractError(
            f"front track has no crossing at T={t_end} and T-dt={t_end - dt}",
            details={'T': t_end, 'dt': dt},
        )
    return x_end, x_prev


def signed_speed(track: FrontTrack, dt: float) -> float:
    """(x*(T) - x*(T - dt)) / dt; negative for a front moving left."""
    x_end, x_prev = _stop_pair(track, dt)
    return (x_end - x_prev) / dt


def numerical_speed(track: FrontTrack, dt: float) -> float:
    """
    Speed magnitude |x*(T) - x*(T - dt)| / dt at the stop time.

    Raises:
        ContractError: No recorded crossing at T or T - dt
    """
    return abs(signed_speed(track, dt))


def smoothed_speed(track: FrontTrack, fraction: float = SMOOTHING_FRACTION) -> float:
    """Magnitude of the least-squares slope of x*(t) over the last fraction of the track."""
    t_end = track.stop_time if track.stop_time is not None else (track.times[-1] if track.times else 0.0)
    pairs = [(t, xs) for t, xs in zip(track.times, track.x_star) if xs is not None and t <= t_end]
    count = max(2, int(np.ceil(fraction * len(pairs))))
    if len(pairs) < 2:
        raise ContractError("smoothed speed needs at least two tracked positions")
    times, positions = np.array(pairs[-count:]).T
    slope = np.polyfit(times, positions, 1)[0]
    return float(abs(slope))


def _sweep_task(payload):
    """Runs in a worker process: one alpha of a sweep."""
    from fracfront.core.fkpp_solver import run

    config = SimConfig.model_validate(payload['config'])
    nl = Nonlinearity.model_validate(payload['nl'])
    c_star = critical_speed(config.alpha, nl.fprime0)
    try:
        trajectory = run(config, nl)
    except FracFrontError as e:
        return SweepRow(alpha=config.alpha, c_star=c_star, status='failed', message=str(e)).model_dump()
    except Exception as e:
        logger.error(f"alpha={config.alpha}: unexpected {type(e).__name__}: {e}")
        return SweepRow(alpha=config.alpha, c_star=c_star, status='failed',
                        message=f"{type(e).__name__}: {e}").model_dump()

    track = trajectory.track
    row = SweepRow(alpha=config.alpha, c_star=c_star, status=trajectory.status,
                   stop_time=track.stop_time)
    if trajectory.status == RunStatus.STOPPED.value:
        row.c_num = track.c_num
        row.c_num_smoothed = track.c_num_smoothed
        row.rel_error = abs(track.c_num - c_star) / c_star
        row.rel_error_smoothed = abs(track.c_num_smoothed - c_star) / c_star
    return row.model_dump()


def speed_sweep(alphas: Sequence[float], base: SimConfig, nl: Optional[Nonlinearity] = None,
                threads: int = 1) -> List[SweepRow]:
    """
    Run the front experiment for each alpha and compare with c*_alpha.

    Args:
        alphas: Orders to run
        base: Configuration shared by all runs (alpha is replaced)
        nl: Reaction term; defaults to base.nonlinearity
        threads: Worker processes (1 runs in-process)

    Returns:
        One SweepRow per alpha, ordered by alpha; failed runs carry status 'failed'
    """
    nl = nl or base.nonlinearity
    if not nl.validate_kpp():
        raise ContractError("speed sweep needs a KPP nonlinearity with f'(0) > 0")

    payloads = [
        {'config': base.model_copy(update={'alpha': float(a)}).model_dump(mode='json'),
         'nl': nl.model_dump(mode='json')}
        for a in sorted(alphas)
    ]
    logger.info(f"speed sweep over {len(payloads)} alphas with {threads} worker(s)")
    if threads > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(_sweep_task, payloads))
    else:
        rows = [_sweep_task(p) for p in payloads]

    results = [SweepRow.model_validate(r) for r in rows]
    failures = [r.alpha for r in results if r.status == 'failed']
    if failures:
        logger.warning(f"speed sweep: runs failed for alpha in {failures}")
    return results
