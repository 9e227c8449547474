"""
Gamma and Mittag-Leffler functions used as analytic oracles.

E_{alpha,beta}(z) = sum_k z^k / Gamma(alpha k + beta) is evaluated on the
real axis by one of three branches:

- the power series, for |z| <= SERIES_RADIUS and |z|^(1/alpha) <= 12;
- the asymptotic expansion, for |z| >= ASYMPTOTIC_SWITCH when its optimally
  truncated remainder is below 1e-12 relative;
- the real-axis Laplace-inversion integral (beta = 1 only) everywhere else.
"""

import math
from typing import Optional

import numpy as np
from scipy import integrate, special

from fracfront.models.special import MLParams
from fracfront.utils.exceptions import DomainError, QuadratureError, RangeError
from fracfront.utils.logger import setup_logger

logger = setup_logger(__name__)

SERIES_RADIUS = 2.0
SERIES_EXPONENT_CAP = 12.0
ASYMPTOTIC_SWITCH = 10.0
MAX_ABS_Z = 1.0e4
MAX_EXPONENT = 700.0

SERIES_MAX_TERMS = 500
SERIES_REL_TOL = 1e-16
ASYMPTOTIC_MAX_TERMS = 60
ASYMPTOTIC_REL_TOL = 1e-12


def gamma(x: float) -> float:
    """
    Euler's Gamma function on the positive half-line.

    Args:
        x: Positive argument

    Returns:
        Gamma(x)

    Raises:
        DomainError: If x is not a positive finite number
    """
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"gamma is only defined here for positive x, got {x}")
    value = float(special.gamma(x))
    if not math.isfinite(value):
        raise RangeError(f"gamma({x}) overflows double precision")
    return value


def ml_series(alpha: float, beta: float, z: float) -> float:
    """Power series of E_{alpha,beta}(z), truncated at 1e-16 relative or 500 terms."""
    if z == 0.0:
        return float(special.rgamma(beta))

    log_abs_z = math.log(abs(z))
    negative = z < 0.0
    total = 0.0
    for k in range(SERIES_MAX_TERMS):
        magnitude = math.exp(k * log_abs_z - special.gammaln(alpha * k + beta))
        term = -magnitude if (negative and k % 2) else magnitude
        total += term
        next_magnitude = math.exp((k + 1) * log_abs_z - special.gammaln(alpha * (k + 1) + beta))
        if next_magnitude < SERIES_REL_TOL * abs(total):
            logger.debug(f"ML series converged after {k + 1} terms at z={z}")
            return total

    raise RangeError(
        f"Mittag-Leffler series did not converge in {SERIES_MAX_TERMS} terms",
        details={'alpha': alpha, 'beta': beta, 'z': z},
    )


def ml_asymptotic(alpha: float, z: float):
    """
    Optimally truncated asymptotic expansion of E_{alpha,1}(z) for large |z|.

    Returns:
        Tuple (value, error_estimate); the estimate is the magnitude of the
        smallest retained term.
    """
    algebraic = 0.0
    smallest = math.inf
    for k in range(1, ASYMPTOTIC_MAX_TERMS + 1):
        term = -(z ** -k) * float(special.rgamma(1.0 - alpha * k))
        magnitude = abs(term)
        if magnitude == 0.0:
            # Pole of Gamma(1 - alpha k): the term vanishes identically
            continue
        if magnitude > smallest:
            break
        algebraic += term
        smallest = magnitude

    value = algebraic
    if z > 0.0:
        value += math.exp(z ** (1.0 / alpha)) / alpha
    return value, (smallest if math.isfinite(smallest) else 0.0)


def ml_integral(alpha: float, z: float) -> float:
    """
    E_{alpha,1}(z) for 0 < alpha < 1 from its real-axis inversion integral.

    E(z) = [z > 0] exp(z^(1/alpha))/alpha
           - z sin(pi alpha)/(pi alpha) int_0^inf exp(-u^(1/alpha)) / (u^2 - 2 z u cos(pi alpha) + z^2) du
    """
    if z == 0.0:
        return 1.0
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"inversion integral needs 0 < alpha < 1, got {alpha}")

    cos_pa = math.cos(math.pi * alpha)
    inv_alpha = 1.0 / alpha

    def integrand(u):
        return math.exp(-u ** inv_alpha) / (u * u - 2.0 * z * u * cos_pa + z * z)

    peak = max(z * cos_pa, 0.0)
    pieces = [(0.0, peak), (peak, math.inf)] if peak > 0.0 else [(0.0, math.inf)]
    total = 0.0
    error = 0.0
    for lower, upper in pieces:
        value, abserr = integrate.quad(integrand, lower, upper, epsabs=0.0, epsrel=1e-13, limit=400)
        total += value
        error += abserr
    if error > 1e-10 * abs(total):
        raise QuadratureError(
            f"Mittag-Leffler inversion integral inaccurate at z={z}",
            details={'alpha': alpha, 'z': z, 'abserr': error, 'value': total},
        )

    result = -z * math.sin(math.pi * alpha) / (math.pi * alpha) * total
    if z > 0.0:
        result += math.exp(z ** inv_alpha) / alpha
    return result


def mittag_leffler(params: MLParams,
                   series_radius: float = SERIES_RADIUS,
                   switch: float = ASYMPTOTIC_SWITCH,
                   max_abs_z: float = MAX_ABS_Z) -> float:
    """
    Evaluate the Mittag-Leffler function E_{alpha,beta}(z) for real z.

    Args:
        params: alpha in (0, 1], beta > 0 and finite z
        series_radius: Largest |z| handled by the power series
        switch: Smallest |z| for which the asymptotic expansion is tried
        max_abs_z: Documented evaluation range

    Returns:
        E_{alpha,beta}(z)

    Raises:
        RangeError: Outside the documented range, on overflow, or for
            beta != 1 outside the convergent series regime
    """
    alpha, beta, z = params.alpha, params.beta, params.z

    if z == 0.0:
        return 1.0 if beta == 1.0 else float(special.rgamma(beta))
    if abs(z) > max_abs_z:
        raise RangeError(
            f"|z|={abs(z)} exceeds the Mittag-Leffler range {max_abs_z}",
            details={'alpha': alpha, 'z': z},
        )
    if alpha == 1.0 and beta == 1.0:
        if z > MAX_EXPONENT:
            raise RangeError(f"exp({z}) overflows", details={'z': z})
        return math.exp(z)
    if z > 0.0 and z ** (1.0 / alpha) > MAX_EXPONENT:
        raise RangeError(
            f"E_{alpha}({z}) overflows double precision",
            details={'alpha': alpha, 'z': z},
        )

    if abs(z) <= series_radius and abs(z) ** (1.0 / alpha) <= SERIES_EXPONENT_CAP:
        return ml_series(alpha, beta, z)

    if beta != 1.0:
        raise RangeError(
            f"E_{{{alpha},{beta}}}({z}) is only available from the power series",
            details={'alpha': alpha, 'beta': beta, 'z': z},
        )

    if abs(z) >= switch and alpha < 1.0:
        value, estimate = ml_asymptotic(alpha, z)
        if estimate <= ASYMPTOTIC_REL_TOL * abs(value):
            logger.debug(f"ML asymptotic branch at z={z} (estimate {estimate:.2e})")
            return value

    return ml_integral(alpha, z)


def mittag_leffler_values(alpha: float, z: np.ndarray, beta: float = 1.0,
                          series_radius: Optional[float] = None,
                          switch: Optional[float] = None) -> np.ndarray:
    """Elementwise E_{alpha,beta} over an array of real arguments."""
    kwargs = {}
    if series_radius is not None:
        kwargs['series_radius'] = series_radius
    if switch is not None:
        kwargs['switch'] = switch
    flat = np.asarray(z, dtype=float).ravel()
    out = np.array([mittag_leffler(MLParams(alpha=alpha, beta=beta, z=v), **kwargs) for v in flat])
    return out.reshape(np.shape(z))
