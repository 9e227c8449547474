"""
L1 discretization of the Caputo derivative.

Weights, the memory sum and a scalar fractional-ODE integrator used as the
oracle for the time stepping of the PDE solver.
"""

import math
from typing import Optional, Sequence

import numpy as np

from fracfront.core.specfun import gamma, mittag_leffler
from fracfront.models.scheme import L1Weights, MalthusResult, MalthusRun, OrderStudy
from fracfront.models.special import MLParams
from fracfront.utils.exceptions import ContractError, DomainError, StepSizeError
from fracfront.utils.logger import setup_logger

logger = setup_logger(__name__)


def l1_weights(alpha: float, count: int, dt: float = 1.0) -> L1Weights:
    """
    Build the L1 weights w[m] = (m+1)^(1-alpha) - m^(1-alpha).

    Args:
        alpha: Order in (0, 1]
        count: Number of weights
        dt: Time step stored with the weights

    Returns:
        L1Weights
    """
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    if count < 1:
        raise DomainError(f"weight count must be >= 1, got {count}")

    powers = np.arange(count + 1, dtype=float) ** (1.0 - alpha)
    w = np.diff(powers)
    # 0^0 = 1 in numpy; the alpha = 1 limit keeps w[0] = 1
    w[0] = 1.0
    return L1Weights(alpha=alpha, count=count, w=w, gamma_2ma=gamma(2.0 - alpha), dt=dt)


def history_sum(history: Sequence[float], weights: L1Weights) -> np.ndarray:
    """
    L1 approximation of the Caputo derivative at the newest entry.

    (1 / (Gamma(2-alpha) dt^alpha)) sum_{m=0}^{j} w[m] (v_{j+1-m} - v_{j-m})

    Args:
        history: v_0 .. v_{j+1} along axis 0 (scalars or grid layers)
        weights: L1 weights with count >= len(history) - 1

    Returns:
        The derivative value (scalar or array over the trailing axes)
    """
    values = np.asarray(history, dtype=float)
    if values.ndim == 0 or values.shape[0] < 2:
        raise ContractError("history_sum needs at least two history entries")
    ndiffs = values.shape[0] - 1
    if weights.count < ndiffs:
        raise ContractError(
            f"history of length {values.shape[0]} needs {ndiffs} weights, got {weights.count}",
            details={'history_length': int(values.shape[0]), 'weights': weights.count},
        )

    diffs = np.diff(values, axis=0)
    # d_{j-m} pairs with w[m]
    total = weights.scale * np.tensordot(weights.w[ndiffs - 1::-1], diffs, axes=(0, 0))
    return float(total) if np.ndim(total) == 0 else total


def lagged_memory(diffs: np.ndarray, weights: L1Weights, count: int) -> np.ndarray:
    """
    Known part of the L1 sum before step count: sum_{m=1}^{count} w[m] d_{count-m}.

    Args:
        diffs: Stored increments d_0 .. d_{count-1} along axis 0
        weights: L1 weights with count >= count + 1
        count: Number of stored increments to use

    Returns:
        Unscaled memory term
    """
    if count == 0:
        return np.zeros(diffs.shape[1:]) if diffs.ndim > 1 else 0.0
    if weights.count < count + 1:
        raise ContractError(f"need {count + 1} weights, got {weights.count}")
    return weights.w[count:0:-1] @ diffs[:count]


def solve_malthus(run: MalthusRun) -> MalthusResult:
    """
    Integrate d^alpha v = zeta v with the L1 scheme.

    The implicit variant solves
        a (w0 (v_{j+1} - v_j) + mem_j) = zeta v_{j+1},  a = 1/(Gamma(2-alpha) dt^alpha)
    for v_{j+1}; the explicit variant evaluates zeta v_j instead.

    Raises:
        StepSizeError: 1 - zeta Gamma(2-alpha) dt^alpha <= 0 for the implicit variant
    """
    weights = l1_weights(run.alpha, run.nsteps + 1, run.dt)
    a = weights.scale
    if run.implicit and 1.0 - run.zeta / a <= 0.0:
        raise StepSizeError(
            f"implicit L1 step ill-posed: 1 - zeta Gamma(2-alpha) dt^alpha = {1.0 - run.zeta / a:.3g}",
            details={'zeta': run.zeta, 'dt': run.dt, 'alpha': run.alpha},
        )

    v = np.empty(run.nsteps + 1)
    diffs = np.empty(run.nsteps)
    v[0] = run.v0
    for j in range(run.nsteps):
        mem = lagged_memory(diffs, weights, j)
        if run.implicit:
            v[j + 1] = a * (v[j] - mem) / (a - run.zeta)
        else:
            v[j + 1] = v[j] - mem + run.zeta * v[j] / a
        diffs[j] = v[j + 1] - v[j]

    t = run.dt * np.arange(run.nsteps + 1)
    logger.debug(f"Malthus run alpha={run.alpha} zeta={run.zeta} dt={run.dt}: v(T)={v[-1]:.12g}")
    return MalthusResult(run=run, t=t, v=v)


def malthus_exact(alpha: float, zeta: float, v0: float, t: np.ndarray, **ml_options) -> np.ndarray:
    """v0 E_{alpha,1}(zeta t^alpha); ml_options go to mittag_leffler."""
    return np.array([v0 * mittag_leffler(MLParams(alpha=alpha, z=zeta * ti ** alpha), **ml_options)
                     for ti in np.atleast_1d(t)])


def order_study(alpha: float, zeta: float, t_end: float, dts: Sequence[float],
                v0: float = 1.0, implicit: bool = True, ml_options: Optional[dict] = None) -> OrderStudy:
    """
    Observed convergence order of the Malthus run at t_end under step refinement.

    Args:
        alpha: Order
        zeta: Growth rate
        t_end: Final time (must be an integer multiple of every dt)
        dts: Decreasing step sizes
        v0: Initial value
        implicit: Treat zeta v implicitly
        ml_options: Branch settings of the Mittag-Leffler reference

    Returns:
        OrderStudy with log2 error ratios between consecutive steps
    """
    exact = float(malthus_exact(alpha, zeta, v0, np.array([t_end]), **(ml_options or {}))[0])
    values, errors = [], []
    for dt in dts:
        nsteps = int(round(t_end / dt))
        if not math.isclose(nsteps * dt, t_end, rel_tol=1e-12):
            raise ContractError(f"t_end={t_end} is not a multiple of dt={dt}")
        result = solve_malthus(MalthusRun(alpha=alpha, zeta=zeta, v0=v0, dt=dt,
                                          nsteps=nsteps, implicit=implicit))
        values.append(float(result.v[-1]))
        errors.append(abs(float(result.v[-1]) - exact))

    orders = [
        math.log(errors[i] / errors[i + 1]) / math.log(dts[i] / dts[i + 1])
        for i in range(len(dts) - 1)
    ]
    logger.info(f"L1 order study alpha={alpha} zeta={zeta}: orders {['%.3f' % o for o in orders]}")
    return OrderStudy(alpha=alpha, zeta=zeta, t_end=t_end, exact=exact, dts=list(dts),
                      values=values, errors=errors, orders=orders, expected_order=2.0 - alpha)
