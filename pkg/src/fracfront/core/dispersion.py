"""
Characteristic polynomial of the linearization around u = 0.

V(lambda) = lambda^2 - (c lambda)^alpha + f'(0) is convex on (0, inf) and has
zero, one (c = c*_alpha) or two positive roots.
"""

import math
from typing import List

from scipy.optimize import root_scalar

from fracfront.models.dispersion import DispersionReport, RootRegime
from fracfront.utils.exceptions import ConvergenceError, DomainError
from fracfront.utils.logger import setup_logger

logger = setup_logger(__name__)

CRITICAL_REL_TOL = 1e-9
ROOT_XTOL = 1e-15
MAX_BRACKET_STEPS = 200


def _check_params(alpha: float, c: float, fprime0: float) -> None:
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    if c <= 0.0:
        raise DomainError(f"wave speed must be positive, got {c}")
    if fprime0 <= 0.0:
        raise DomainError(f"f'(0) must be positive, got {fprime0}")


def char_poly(lam: float, alpha: float, c: float, fprime0: float) -> float:
    """
    V(lambda) = lambda^2 - (c lambda)^alpha + f'(0).

    Raises:
        DomainError: lambda <= 0 (fractional power branch)
    """
    if lam <= 0.0:
        raise DomainError(f"V(lambda) needs lambda > 0, got {lam}")
    return lam * lam - (c * lam) ** alpha + fprime0


def char_poly_second_derivative(lam: float, alpha: float, c: float) -> float:
    """V''(lambda) = 2 + alpha (1 - alpha) c^alpha / lambda^(2 - alpha)."""
    if lam <= 0.0:
        raise DomainError(f"V''(lambda) needs lambda > 0, got {lam}")
    return 2.0 + alpha * (1.0 - alpha) * c ** alpha / lam ** (2.0 - alpha)


def critical_speed(alpha: float, fprime0: float) -> float:
    """
    c*_alpha = (2^(1/alpha) / sqrt(alpha)) (f'(0) / (2 - alpha))^((2 - alpha) / (2 alpha)).
    """
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    if fprime0 <= 0.0:
        raise DomainError(f"f'(0) must be positive, got {fprime0}")
    return (2.0 ** (1.0 / alpha) / math.sqrt(alpha)) * (fprime0 / (2.0 - alpha)) ** ((2.0 - alpha) / (2.0 * alpha))


def minimizer(alpha: float, c: float) -> float:
    """lambda* = (alpha/2)^(1/(2-alpha)) c^(alpha/(2-alpha)), the minimizer of V."""
    return (alpha / 2.0) ** (1.0 / (2.0 - alpha)) * c ** (alpha / (2.0 - alpha))


def _solve(func, lower: float, upper: float) -> float:
    result = root_scalar(func, bracket=[lower, upper], method='brentq', xtol=ROOT_XTOL, rtol=1e-15)
    if not result.converged:
        raise ConvergenceError(
            f"root bracketing on [{lower}, {upper}] did not converge: {result.flag}",
            details={'bracket': [lower, upper], 'iterations': result.iterations},
        )
    return result.root


def char_roots(alpha: float, c: float, fprime0: float) -> DispersionReport:
    """
    Positive roots of V.

    Args:
        alpha: Fractional order
        c: Wave speed
        fprime0: f'(0)

    Returns:
        DispersionReport with zero roots (c < c*), the single minimizer
        (|c - c*| <= 1e-9 c*) or the ordered pair (lambda1, lambda2)
    """
    _check_params(alpha, c, fprime0)
    cstar = critical_speed(alpha, fprime0)
    lam_star = minimizer(alpha, c)
    v_star = char_poly(lam_star, alpha, c, fprime0)

    def v(lam):
        return char_poly(lam, alpha, c, fprime0)

    roots: List[float] = []
    if abs(c - cstar) <= CRITICAL_REL_TOL * cstar or (c > cstar and v_star >= 0.0):
        regime = RootRegime.CRITICAL
        roots = [lam_star]
    elif c < cstar:
        regime = RootRegime.NONE
    else:
        regime = RootRegime.TWO_ROOTS

        lower = lam_star * 1e-3
        steps = 0
        while v(lower) <= 0.0:
            lower /= 10.0
            steps += 1
            if steps > MAX_BRACKET_STEPS:
                raise ConvergenceError("could not bracket lambda1 from below",
                                       details={'alpha': alpha, 'c': c, 'fprime0': fprime0})

        upper = 2.0 * lam_star
        steps = 0
        while v(upper) <= 0.0:
            upper *= 2.0
            steps += 1
            if steps > MAX_BRACKET_STEPS:
                raise ConvergenceError("could not bracket lambda2 from above",
                                       details={'alpha': alpha, 'c': c, 'fprime0': fprime0})

        roots = [_solve(v, lower, lam_star), _solve(v, lam_star, upper)]

    logger.debug(f"char_roots(alpha={alpha}, c={c}, f'(0)={fprime0}) -> {regime.value} {roots}")
    return DispersionReport(
        alpha=alpha,
        c=c,
        fprime0=fprime0,
        cstar=cstar,
        lambda_star=lam_star,
        v_at_lambda_star=v_star,
        regime=regime,
        roots=roots,
        residuals=[v(r) for r in roots],
    )
