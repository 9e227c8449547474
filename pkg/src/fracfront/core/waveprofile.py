"""
Asymptotic traveling waves u(t, x) = phi(x + c t) by monotone iteration.

Starting from the mollified upper solution, the iterates

    psi_j = P^-1 (N psi_{j-1} + kappa^2 psi_{j-1} + f(psi_{j-1}))

decrease pointwise towards a profile that stays above the mollified lower
solution. A = P - N is the grid operator of kappa^2 - d^2 + c^alpha d^alpha
(LatticeGreenOperator); its fixed points solve the grid profile equation for
every admissible kappa. The profile is translated so that phi(0) = 1/2.
"""

import math
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate, special

from fracfront.core.dispersion import char_poly, char_roots
from fracfront.core.front import crossing
from fracfront.core.specfun import gamma
from fracfront.core.wavekernels import LatticeGreenOperator, fractional_derivative, lattice_root
from fracfront.models.dispersion import RootRegime
from fracfront.models.nonlinearity import Nonlinearity
from fracfront.models.simulation import SimConfig
from fracfront.models.wave import (
    DecayFit, LowerSolutionParams, ProfileOptions, UpperSolutionParams, WaveProfile,
)
from fracfront.utils.exceptions import (
    ConfigError, ContractError, ConvergenceError, DiagnosticError, MonotonicityError, RefusalError,
)
from fracfront.utils.logger import setup_logger

logger = setup_logger(__name__)

MAX_H_DOUBLINGS = 60
LOWER_CHECK_TOL = 1e-8
SANDWICH_TOL = 1e-8
# FFT round-off floor; smaller profile values carry no information
PROFILE_FLOOR = 1e-10
LOG_STRIDE = 200


@lru_cache(maxsize=1)
def _bump_constant() -> float:
    mass, _ = integrate.quad(lambda y: math.exp(-1.0 / (1.0 - y * y)), -1.0, 1.0, epsabs=1e-15, epsrel=1e-13)
    return 1.0 / mass


def mollifier(y):
    """rho(y) = C exp(-1 / (1 - y^2)) on |y| < 1, zero outside, unit mass."""
    y = np.asarray(y, dtype=float)
    inside = np.abs(y) < 1.0
    safe = np.where(inside, 1.0 - y * y, 1.0)
    out = np.where(inside, _bump_constant() * np.exp(-1.0 / safe), 0.0)
    return float(out) if out.ndim == 0 else out


def _moment(lower: float, upper: float, mu: float) -> float:
    """int_lower^upper rho(y) exp(-mu y) dy."""
    if upper <= lower:
        return 0.0
    value, _ = integrate.quad(lambda y: mollifier(y) * math.exp(-mu * y), lower, upper,
                              epsabs=1e-15, epsrel=1e-13, limit=200)
    return value


def R(lam: float, epsilon: float) -> float:
    """R(lambda, epsilon) = int rho(y) exp(-lambda epsilon y) dy."""
    return _moment(-1.0, 1.0, lam * epsilon)


def upper_params(lambda1: float, epsilon: float) -> UpperSolutionParams:
    return UpperSolutionParams(lambda1=lambda1, epsilon=epsilon, R_eps=R(lambda1, epsilon))


def upper_solution(params: UpperSolutionParams, xi) -> np.ndarray:
    """
    rho_eps * min(exp(lambda1 xi), 1) in closed form.

    R_eps exp(lambda1 xi) for xi <= -eps, 1 for xi >= eps, and
    int_{-1}^eta rho + exp(lambda1 xi) int_eta^1 rho(y) exp(-eps lambda1 y) dy
    with eta = xi / eps in between.
    """
    xi = np.asarray(xi, dtype=float)
    lam, eps = params.lambda1, params.epsilon
    out = np.ones_like(xi)
    left = xi <= -eps
    out[left] = params.R_eps * np.exp(lam * xi[left])
    for idx in np.flatnonzero(np.abs(xi) < eps):
        eta = xi[idx] / eps
        out[idx] = _moment(-1.0, eta, 0.0) + math.exp(lam * xi[idx]) * _moment(eta, 1.0, eps * lam)
    return out


def lower_params(lambda1: float, lambda2: float, epsilon: float, alpha: float, c: float,
                 nl: Nonlinearity, nu: Optional[float] = None,
                 dispersion: Optional[Callable[[float], float]] = None,
                 h_start: float = 1.5) -> LowerSolutionParams:
    """
    nu (default: midpoint of (1, min(1 + a, lambda2 / lambda1))) and the
    smallest h >= h_start in the doubling sequence with xi0 <= xi_star.

    dispersion replaces V(mu) = char_poly(mu, alpha, c, f'(0)) when the lower
    solution must hold for a discretized operator.

    Raises:
        ConfigError: nu outside its interval or no admissible h
    """
    a, M = nl.kpp_a, nl.kpp_M
    nu_max = min(1.0 + a, lambda2 / lambda1)
    if nu_max <= 1.0:
        raise ConfigError(f"empty nu interval: min(1 + a, lambda2/lambda1) = {nu_max}")
    if nu is None:
        nu = 0.5 * (1.0 + nu_max)
    if not 1.0 < nu < nu_max:
        raise ConfigError(f"nu={nu} must lie in (1, {nu_max})", details={'nu': nu, 'nu_max': nu_max})

    if dispersion is None:
        v_nu = char_poly(nu * lambda1, alpha, c, nl.fprime0)
    else:
        v_nu = dispersion(nu * lambda1)
    if v_nu >= 0.0:
        raise ConfigError(f"V(nu lambda1) = {v_nu} must be negative", details={'nu': nu})
    r1 = R(lambda1, epsilon)
    r_nu = R(nu * lambda1, epsilon)

    h = max(h_start, 1.5)
    for _ in range(MAX_H_DOUBLINGS):
        xi0 = -math.log(h) / (lambda1 * (nu - 1.0))
        xi_star = math.log(-h * r_nu * v_nu / (M * r1 ** (1.0 + a))) / ((1.0 + a - nu) * lambda1)
        if xi0 <= xi_star:
            return LowerSolutionParams(lambda1=lambda1, epsilon=epsilon, nu=nu, h=h, xi0=xi0, xi_star=xi_star)
        h *= 2.0
    raise ConfigError(f"no admissible h after {MAX_H_DOUBLINGS} doublings", details={'nu': nu})


def lower_solution(params: LowerSolutionParams, xi) -> np.ndarray:
    """
    rho_eps * max(exp(lambda1 xi) - h exp(nu lambda1 xi), 0) in closed form.

    Raises:
        ConfigError: (nu, h) inadmissible (xi0 > xi_star)
    """
    if params.xi0 > params.xi_star:
        raise ConfigError(f"inadmissible lower solution: xi0={params.xi0} > xi_star={params.xi_star}",
                          details={'h': params.h, 'nu': params.nu})
    xi = np.asarray(xi, dtype=float)
    lam, eps, nu, h, xi0 = params.lambda1, params.epsilon, params.nu, params.h, params.xi0
    out = np.zeros_like(xi)
    left = xi <= xi0 - eps
    out[left] = R(lam, eps) * np.exp(lam * xi[left]) - h * R(nu * lam, eps) * np.exp(nu * lam * xi[left])
    for idx in np.flatnonzero(np.abs(xi - xi0) < eps):
        eta = (xi[idx] - xi0) / eps
        out[idx] = math.exp(lam * xi[idx]) * _moment(eta, 1.0, eps * lam) \
            - h * math.exp(nu * lam * xi[idx]) * _moment(eta, 1.0, eps * nu * lam)
    return out


def _source(psi: np.ndarray, kappa: float, nl: Nonlinearity) -> np.ndarray:
    # iterates live in [0, 1]; the clamp only absorbs round-off
    return kappa * kappa * psi + nl.f(np.clip(psi, 0.0, 1.0))


def _grid(lambda1: float, lambda2: float, options: ProfileOptions) -> Tuple[float, float]:
    h = min(options.step_factor / lambda2, options.max_step)
    m = int(math.ceil(options.domain_factor / lambda1 / h))
    return m * h, h


def _resolve_speed(alpha: float, c: float, nl: Nonlinearity, at_critical: bool,
                   options: ProfileOptions):
    report = char_roots(alpha, c, nl.fprime0)
    if at_critical:
        c = report.cstar
        report = char_roots(alpha, c, nl.fprime0)
    if report.regime == RootRegime.NONE.value:
        raise RefusalError(
            f"no traveling wave for c={c} below c*_alpha={report.cstar:.6f}",
            details={'c': c, 'cstar': report.cstar, 'alpha': alpha},
        )
    if report.regime == RootRegime.CRITICAL.value:
        shifted = c * (1.0 + options.critical_offset)
        logger.info(f"c={c} is critical; solving at c(1+{options.critical_offset}) = {shifted:.8f}")
        report = char_roots(alpha, shifted, nl.fprime0)
        if report.regime != RootRegime.TWO_ROOTS.value:
            raise ConfigError(f"critical offset {options.critical_offset} too small to separate the roots")
    return c, report


def _lattice_kappa(nl: Nonlinearity, options: ProfileOptions) -> float:
    # kappa^2 + f is non-decreasing on [0, 1] only for kappa^2 >= max |f'|
    kappa_min = math.sqrt(nl.max_abs_fprime())
    if options.kappa is None:
        return kappa_min
    if options.kappa < kappa_min * (1.0 - 1e-12):
        raise ConfigError(f"kappa={options.kappa} below sqrt(max |f'|) = {kappa_min:.6f}",
                          details={'kappa': options.kappa, 'kappa_min': kappa_min})
    return options.kappa


def corner_upper(params: UpperSolutionParams, xi) -> np.ndarray:
    """min(R_eps exp(lambda1 xi), 1): the unmollified envelope, an exact upper solution on the grid."""
    xi = np.asarray(xi, dtype=float)
    return np.minimum(params.R_eps * np.exp(np.minimum(params.lambda1 * xi, 0.0)), 1.0)


def solve_profile(alpha: float, c: float, nl: Optional[Nonlinearity] = None,
                  options: Optional[ProfileOptions] = None, at_critical: bool = False) -> WaveProfile:
    """
    Construct the traveling-wave profile for speed c.

    Args:
        alpha: Fractional order in (0, 1)
        c: Requested speed; c = c*_alpha is replaced by c (1 + critical_offset)
        nl: KPP reaction term (default logistic)
        options: Numerical options
        at_critical: Solve at the critical speed regardless of c

    Returns:
        WaveProfile normalized to phi(0) = 1/2

    Raises:
        RefusalError: c < c*_alpha
        ConfigError: Not a KPP reaction, or kappa^2 < max |f'|
        MonotonicityError: An iterate rose above its predecessor beyond monotone_tol
        ConvergenceError: No lower solution on the grid, or the iteration budget ran out
        DiagnosticError: The converged profile leaves the envelope or violates a profile invariant
    """
    nl = nl or Nonlinearity()
    options = options or ProfileOptions()
    if not nl.validate_kpp():
        raise ConfigError("profile construction needs a KPP nonlinearity with f'(0) > 0")

    c_requested, report = _resolve_speed(alpha, c, nl, at_critical, options)
    c = report.c
    lam1, lam2 = report.lambda1, report.lambda2
    L, h = _grid(lam1, lam2, options)
    m = int(round(L / h))
    xi = h * np.arange(-m, m + 1) + options.grid_shift
    kappa = _lattice_kappa(nl, options)

    try:
        lam_h = lattice_root(alpha, c, h, nl.fprime0, 0.5 * lam1, report.lambda_star)
    except ValueError as e:
        raise ConvergenceError(f"lattice dispersion root not bracketed: {e}",
                               details={'lambda1': lam1, 'h': h}) from e
    op = LatticeGreenOperator(alpha, c, kappa, h, xi.size, tail_rate=lam_h)
    logger.info(f"profile alpha={alpha} c={c:.6f}: lambda1={lam1:.6f} (grid {lam_h:.6f}), "
                f"lambda2={lam2:.6f}, kappa={kappa:.4f}, h={h:.4g}, n={xi.size}, band={op.band}")

    def sweep(psi):
        return op.sweep(psi, _source(psi, kappa, nl))

    epsilon = options.epsilon or 0.1 / lam2
    corner = False
    for halving in range(options.max_epsilon_halvings + 1):
        up = upper_params(lam_h, epsilon)
        phi_up = upper_solution(up, xi)
        first = sweep(phi_up)
        upper_excess = float(np.max(first - phi_up))
        if upper_excess <= options.monotone_tol:
            break
        if halving == options.max_epsilon_halvings:
            logger.info(f"mollified upper solution misses by {upper_excess:.2e} down to "
                        f"epsilon={epsilon:.3e}; starting from the corner envelope")
            corner = True
            phi_up = corner_upper(up, xi)
            first = sweep(phi_up)
            upper_excess = float(np.max(first - phi_up))
            if upper_excess > options.monotone_tol:
                raise MonotonicityError(f"corner envelope rises by {upper_excess:.3e} after one sweep",
                                        details={'epsilon': epsilon, 'excess': upper_excess})
            break
        logger.info(f"epsilon={epsilon:.3e}: upper excess {upper_excess:.2e}; halving")
        epsilon *= 0.5

    h_start = 1.5
    for _ in range(MAX_H_DOUBLINGS):
        low = lower_params(lam_h, lam2, epsilon, alpha, c, nl, options.nu,
                           dispersion=lambda mu: op.dispersion(mu, nl.fprime0), h_start=h_start)
        phi_low = lower_solution(low, xi)
        lower_deficit = float(np.max(phi_low - sweep(phi_low)))
        if lower_deficit <= LOWER_CHECK_TOL:
            break
        logger.info(f"lower solution with h={low.h:.4g} misses by {lower_deficit:.2e}; doubling h")
        h_start = 2.0 * low.h
    else:
        raise ConvergenceError(f"no lower solution of the grid iteration after {MAX_H_DOUBLINGS} doublings",
                               details={'deficit': lower_deficit, 'h': low.h})

    prev, current = phi_up, first
    iterations = 1
    worst = max(upper_excess, 0.0)
    increment = float(np.max(np.abs(current - prev)))
    while increment >= options.outer_tol:
        if iterations >= options.max_iterations:
            raise ConvergenceError(
                f"monotone iteration not converged after {iterations} iterations",
                details={'increment': increment, 'iterations': iterations},
            )
        nxt = sweep(current)
        rise = nxt - current
        k = int(np.argmax(rise))
        if rise[k] > options.monotone_tol:
            raise MonotonicityError(
                f"iterate {iterations + 1} rises by {rise[k]:.3e} at xi={xi[k]:.4f}",
                details={'iteration': iterations + 1, 'xi': float(xi[k]), 'rise': float(rise[k])},
            )
        worst = max(worst, float(rise[k]))
        prev, current = current, nxt
        iterations += 1
        increment = float(np.max(np.abs(current - prev)))
        if iterations % LOG_STRIDE == 0:
            logger.debug(f"iteration {iterations}: sup increment {increment:.3e}")

    phi = current
    below = float(np.max(phi_low - phi))
    above = float(np.max(phi - phi_up))
    sandwich = max(below, above, 0.0)
    if sandwich > SANDWICH_TOL:
        raise DiagnosticError(f"profile leaves the upper/lower envelope by {sandwich:.3e}",
                              details={'below_lower': below, 'above_upper': above})

    shift = crossing(xi, phi, 0.5)
    if shift is None or phi[-1] <= 0.5:
        raise DiagnosticError("profile does not cross 1/2 inside the domain",
                              details={'left': float(phi[0]), 'right': float(phi[-1])})

    profile = WaveProfile(
        c=c,
        c_requested=c_requested,
        alpha=alpha,
        lambda1=lam1,
        lambda2=lam2,
        lambda1_discrete=lam_h,
        kappa=kappa,
        theta_bound=op.theta,
        nonlinearity=nl,
        xi=xi - shift,
        phi=phi,
        upper=phi_up,
        lower=phi_low,
        shift=shift,
        h=h,
        upper_params=up,
        lower_params=low,
        iterations=iterations,
        final_increment=increment,
        max_monotone_violation=worst,
        interior_margin=int(math.ceil(10.0 / (kappa * h))),
        diagnostics={'sandwich_violation': sandwich, 'lower_check_deficit': lower_deficit,
                     'upper_check_excess': upper_excess, 'domain_half_width': L,
                     'corner_seed': float(corner), 'memory_band': float(op.band)},
    )
    _check_invariants(profile)

    res = residual(profile)
    profile.residual_sup = float(np.max(np.abs(res[_interior(profile)])))
    try:
        fit = decay_fit(profile.xi, profile.phi)
        profile.decay_exponent, profile.decay_amplitude = fit.exponent, fit.amplitude
    except DiagnosticError as e:
        logger.warning(f"left-tail decay not resolved: {e}")
    profile.right_deficit, profile.right_exponent = right_tail(profile)
    logger.info(f"profile converged in {iterations} iterations, residual {profile.residual_sup:.3e}")
    return profile


def _interior(profile: WaveProfile) -> slice:
    return slice(1, profile.xi.size - 1 - profile.interior_margin)


def _check_invariants(profile: WaveProfile) -> None:
    phi = profile.phi
    inner = phi[_interior(profile)]
    drops = np.diff(inner)[inner[:-1] > PROFILE_FLOOR]
    if drops.size and float(drops.min()) <= 0.0:
        raise DiagnosticError("profile is not strictly increasing", details={'min_step': float(drops.min())})
    if phi[0] >= 1e-4:
        raise DiagnosticError(f"left end phi={phi[0]:.3e} not below 1e-4; enlarge domain_factor")
    if float(phi.max()) >= 1.0 + PROFILE_FLOOR:
        raise DiagnosticError(f"profile exceeds 1 (max {phi.max():.15f})")


def residual(profile: WaveProfile) -> np.ndarray:
    """
    c^alpha d^alpha phi - phi'' - f(phi) at every node.

    The fractional term integrates the piecewise-linear phi' with the
    exponential left tail exp(lambda1 xi); the first and last entries use
    one-sided second differences and are not meaningful.
    """
    phi, h = profile.phi, profile.h
    frac = fractional_derivative(phi, h, profile.alpha, tail_rate=profile.lambda1_discrete)
    second = np.zeros_like(phi)
    second[1:-1] = (phi[2:] - 2.0 * phi[1:-1] + phi[:-2]) / (h * h)
    return profile.c ** profile.alpha * frac - second - profile.nonlinearity.f(np.clip(phi, 0.0, 1.0))


def decay_fit(xi, phi, lower: float = 1e-8, upper: float = 1e-3) -> DecayFit:
    """
    Fit phi ~ A exp(lambda xi) over the leftmost decade of values in (lower, upper).

    Raises:
        DiagnosticError: The window does not span a full decade
    """
    xi = np.asarray(xi, dtype=float)
    phi = np.asarray(phi, dtype=float)
    above = np.flatnonzero(phi >= upper)
    stop = int(above[0]) if above.size else phi.size
    window = np.flatnonzero((phi[:stop] > lower) & (phi[:stop] < upper))
    if window.size < 3:
        raise DiagnosticError(f"only {window.size} nodes with {lower} < phi < {upper}")
    floor = float(phi[window].min())
    if float(phi[window].max()) < 10.0 * floor:
        raise DiagnosticError("left tail resolves less than a decade",
                              details={'min': floor, 'max': float(phi[window].max())})
    decade = window[phi[window] <= 10.0 * floor]
    if decade.size < 3:
        decade = window
    slope, intercept = np.polyfit(xi[decade], np.log(phi[decade]), 1)
    return DecayFit(exponent=float(slope), amplitude=float(math.exp(intercept)), points=int(decade.size))


def decay_rate(profile: WaveProfile) -> float:
    """Fitted left-tail exponent of the profile."""
    return decay_fit(profile.xi, profile.phi).exponent


def right_tail(profile: WaveProfile) -> Tuple[float, Optional[float]]:
    """
    Deficit 1 - phi at the last interior node and the exponent p of a fit
    1 - phi ~ B xi^-p over the right half of the interior (None when unresolved).
    """
    stop = profile.xi.size - 1 - profile.interior_margin
    xi, gap = profile.xi[:stop], 1.0 - profile.phi[:stop]
    deficit = float(gap[-1])
    xi_end = float(xi[-1])
    mask = (xi >= 0.5 * xi_end) & (gap > PROFILE_FLOOR)
    if xi_end <= 0.0 or np.count_nonzero(mask) < 3:
        return deficit, None
    slope, _ = np.polyfit(np.log(xi[mask]), np.log(gap[mask]), 1)
    return deficit, float(-slope)


def _partial_memory(phi: np.ndarray, i: int, span: float, h: float, alpha: float, tail_rate: float) -> float:
    """(1/Gamma(1-alpha)) int_0^span phi'(xi_i - s) s^-alpha ds for piecewise-linear phi."""
    k = np.arange(i)
    lo = k * h
    keep = lo < span
    lo = lo[keep]
    hi = np.minimum(lo + h, span)
    slopes = (phi[i - k[keep]] - phi[i - k[keep] - 1]) / h
    total = float(np.sum(slopes * (hi ** (1.0 - alpha) - lo ** (1.0 - alpha)))) / gamma(2.0 - alpha)
    edge = i * h
    if span > edge and tail_rate > 0.0:
        q = special.gammaincc(1.0 - alpha, tail_rate * np.array([edge, span]))
        total += tail_rate ** alpha * phi[0] * math.exp(tail_rate * edge) * float(q[0] - q[1])
    return total


def subsolution_defects(profile: WaveProfile, t_samples: Sequence[float],
                        x_samples: Sequence[float]) -> np.ndarray:
    """
    d^alpha_t v - v_xx - f(v) for v(t, x) = phi(x + c t), shape (len(t), len(x)).

    With v at rest before t = 0 the Caputo derivative only sees the memory
    over s in (0, c t); each value is taken at the node nearest x + c t.

    Raises:
        ContractError: A sample falls outside the interior of the profile grid
    """
    phi, h, alpha, c = profile.phi, profile.h, profile.alpha, profile.c
    nl = profile.nonlinearity
    stop = profile.xi.size - 1 - profile.interior_margin
    out = np.empty((len(t_samples), len(x_samples)))
    for a, t in enumerate(t_samples):
        if t <= 0.0:
            raise ContractError(f"sub-solution samples need t > 0, got {t}")
        for b, x in enumerate(x_samples):
            i = int(round((x + c * t - profile.xi[0]) / h))
            if not 1 <= i < stop:
                raise ContractError(f"xi = x + c t = {x + c * t} outside the profile interior",
                                    details={'t': t, 'x': x})
            memory = _partial_memory(phi, i, c * t, h, alpha, profile.lambda1_discrete)
            second = (phi[i + 1] - 2.0 * phi[i] + phi[i - 1]) / (h * h)
            out[a, b] = c ** alpha * memory - second - float(nl.f(min(max(phi[i], 0.0), 1.0)))
    return out


def subsolution_check(profile: WaveProfile, t_samples: Sequence[float], x_samples: Sequence[float]) -> float:
    """Largest sub-solution defect over the samples; negative for a sub-solution."""
    defects = subsolution_defects(profile, t_samples, x_samples)
    worst = float(defects.max())
    logger.debug(f"sub-solution defect max {worst:.3e} over {defects.size} samples")
    return worst


def speed_consistency(profile: WaveProfile, l: float = 100.0, dx: float = 0.25, dt: float = 0.05,
                      t_max: float = 8.0) -> Tuple[float, float]:
    """
    Run the PDE from u0(x) = phi(x - 3l/4) and measure the speed of the 1/2 level.

    Returns:
        (measured speed, relative deviation from c); the speed is the
        least-squares slope over the second half of the run
    """
    from fracfront.core.fkpp_solver import run

    config = SimConfig(alpha=profile.alpha, l=l, l0=0.75 * l, omega=1.0, x0=0.1 * l, level=0.5,
                       dx=dx, dt=dt, t_max=t_max, snapshot_stride=10 ** 6, nonlinearity=profile.nonlinearity)
    x = dx * np.arange(config.nodes)
    u0 = np.interp(x - 0.75 * l, profile.xi, np.clip(profile.phi, 0.0, 1.0))
    trajectory = run(config, u0=u0)
    track = trajectory.track
    pairs = [(t, p) for t, p in zip(track.times, track.x_star) if p is not None and t >= 0.5 * t_max]
    if len(pairs) < 2:
        raise DiagnosticError("level 1/2 not tracked over the second half of the run")
    times, positions = np.array(pairs).T
    speed = float(abs(np.polyfit(times, positions, 1)[0]))
    deviation = abs(speed - profile.c) / profile.c
    logger.info(f"speed consistency: measured {speed:.4f} against c={profile.c:.4f} ({deviation:.1%})")
    return speed, deviation


def profile_rows(profile: WaveProfile) -> List[Tuple[float, float, float]]:
    """(xi, phi, residual) rows; the residual is zero outside the interior."""
    res = np.zeros_like(profile.phi)
    inner = _interior(profile)
    res[inner] = residual(profile)[inner]
    return list(zip(profile.xi.tolist(), profile.phi.tolist(), res.tolist()))
