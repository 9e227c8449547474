"""
Kernels of the traveling-wave integral equation and the Green operator.

With L = d^2 - c^alpha d^alpha - kappa^2 the profile equation becomes

    psi = K_alpha * psi + K_0 * g,    g = kappa^2 psi + f(psi),

where K_0(xi) = exp(-kappa |xi|) / (2 kappa) and K_alpha = -c^alpha d^alpha K_0.
In the scaled variable x = kappa xi, for xi > 0,

    K_alpha(xi) = -(c^alpha kappa^(alpha-1) / (2 Gamma(1-alpha))) (A(x) - B(x)),
    A(x) = int_x^inf e^{-(s-x)} s^-alpha ds,   B(x) = int_0^x e^{-(x-s)} s^-alpha ds,

and K_alpha(xi) = -(c kappa)^alpha K_0(xi) for xi <= 0. The primitive
Q(xi) = int_{-inf}^xi K_alpha = -(c^alpha kappa^(alpha-2) / (2 Gamma(1-alpha))) (A + B)
vanishes at +inf.

Grid functions are cell averages: convolution weights are exact cell
integrals taken from the primitives, and values beyond the grid are the
constant extensions of the end values. Constants therefore pass through the
discrete operators exactly.
"""

import math
from typing import Optional, Tuple

import numpy as np
from scipy import fft as sp_fft
from scipy import integrate, sparse, special
from scipy.optimize import brentq
from scipy.signal import fftconvolve, lfilter
from scipy.sparse.linalg import splu

from fracfront.core.caputo import l1_weights
from fracfront.core.specfun import gamma
from fracfront.models.kernels import GreenResult, KernelConfig, KernelTable
from fracfront.utils.exceptions import ConfigError, ContractError, ConvergenceError, QuadratureError
from fracfront.utils.logger import setup_logger

logger = setup_logger(__name__)

GAUSS_NODES = 16
QUAD_RTOL = 1e-12
MAX_KAPPA_DOUBLINGS = 40
# exp(-60) is below double precision relative to the retained part
EXP_CUTOFF = 60.0
MAX_LATTICE_BAND = 256


def k0(xi, kappa: float):
    """K_0(xi) = exp(-kappa |xi|) / (2 kappa)."""
    return np.exp(-kappa * np.abs(xi)) / (2.0 * kappa)


def k0_primitive(xi, kappa: float):
    """int_{-inf}^xi K_0; tends to 1/kappa^2."""
    xi = np.asarray(xi, dtype=float)
    k2 = kappa * kappa
    decay = np.exp(-kappa * np.abs(xi)) / (2.0 * k2)
    return np.where(xi <= 0.0, decay, 1.0 / k2 - decay)


def _quad(func, lower, upper, x):
    value, abserr = integrate.quad(func, lower, upper, epsabs=0.0, epsrel=QUAD_RTOL, limit=400)
    if abserr > 1e-9 * max(abs(value), 1e-300):
        raise QuadratureError(
            f"kernel quadrature did not converge at x={x}",
            details={'x': x, 'value': value, 'abserr': abserr},
        )
    return value


def scaled_integrals(x: float, alpha: float) -> Tuple[float, float]:
    """
    A(x) and B(x) for x > 0 by adaptive quadrature.

    The s^-alpha endpoint singularity is removed with s = u^p, p = 1/(1-alpha),
    which turns s^-alpha ds into p du.
    """
    if x <= 0.0:
        return math.exp(x) * gamma(1.0 - alpha), 0.0
    p = 1.0 / (1.0 - alpha)

    if x < 1.0:
        root = x ** (1.0 - alpha)
        a_val = p * _quad(lambda u: math.exp(x - u ** p), root, math.inf, x)
        b_val = p * _quad(lambda u: math.exp(u ** p - x), 0.0, root, x)
        return a_val, b_val

    a_val = _quad(lambda t: math.exp(-t) * (x + t) ** -alpha, 0.0, math.inf, x)
    b_head = p * _quad(lambda u: math.exp(u ** p - x), 0.0, 1.0, x)
    b_tail = _quad(lambda t: math.exp(-t) * (x - t) ** -alpha, 0.0, min(x - 1.0, EXP_CUTOFF), x)
    return a_val, b_head + b_tail


def _prefactor(cfg: KernelConfig, power: float) -> float:
    return cfg.c ** cfg.alpha * cfg.kappa ** (cfg.alpha - power) / (2.0 * gamma(1.0 - cfg.alpha))


def k_alpha(xi, cfg: KernelConfig):
    """
    Pointwise K_alpha: closed form for xi <= 0, singular quadrature for xi > 0.

    Raises:
        QuadratureError: Quadrature failure, reported with the offending xi
    """
    xi_arr = np.atleast_1d(np.asarray(xi, dtype=float))
    out = np.empty_like(xi_arr)
    neg = xi_arr <= 0.0
    out[neg] = -(cfg.c * cfg.kappa) ** cfg.alpha * k0(xi_arr[neg], cfg.kappa)
    pref = _prefactor(cfg, 1.0)
    for idx in np.flatnonzero(~neg):
        try:
            a_val, b_val = scaled_integrals(cfg.kappa * xi_arr[idx], cfg.alpha)
        except QuadratureError as e:
            raise QuadratureError(f"K_alpha quadrature failed at xi={xi_arr[idx]}",
                                  details={'xi': float(xi_arr[idx]), **e.details}) from e
        out[idx] = -pref * (a_val - b_val)
    return float(out[0]) if np.ndim(xi) == 0 else out


def k_alpha_primitive(xi, cfg: KernelConfig) -> float:
    """Q(xi) = int_{-inf}^xi K_alpha by quadrature (scalar)."""
    if xi <= 0.0:
        return -(cfg.c * cfg.kappa) ** cfg.alpha * math.exp(cfg.kappa * xi) / (2.0 * cfg.kappa ** 2)
    a_val, b_val = scaled_integrals(cfg.kappa * xi, cfg.alpha)
    return -_prefactor(cfg, 2.0) * (a_val + b_val)


def _cell_integrals(edges: np.ndarray, alpha: float, forward: bool) -> np.ndarray:
    """
    Gauss-Legendre cell integrals in u = s^(1-alpha) over [edges[n], edges[n+1]].

    forward:  int e^{-(s_right - s)} s^-alpha ds  (B recurrence)
    backward: int e^{-(s - s_left)} s^-alpha ds   (A recurrence)
    """
    p = 1.0 / (1.0 - alpha)
    nodes, gw = special.roots_legendre(GAUSS_NODES)
    u_lo = edges[:-1] ** (1.0 - alpha)
    u_hi = edges[1:] ** (1.0 - alpha)
    mid = 0.5 * (u_hi + u_lo)
    half = 0.5 * (u_hi - u_lo)
    u = mid[:, None] + half[:, None] * nodes[None, :]
    s = u ** p
    if forward:
        integrand = np.exp(s - edges[1:, None])
    else:
        integrand = np.exp(edges[:-1, None] - s)
    return p * half * (integrand @ gw)


def scaled_integrals_grid(alpha: float, delta: float, count: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    A and B on x_n = n delta, n = 0..count-1, by the exponential recurrences

        B_n = e^{-delta} B_{n-1} + I_n,   A_n = e^{-delta} A_{n+1} + J_n.
    """
    x = delta * np.arange(count)
    decay = math.exp(-delta)
    cells_b = _cell_integrals(x, alpha, forward=True)
    b_vals = lfilter([1.0], [1.0, -decay], np.concatenate(([0.0], cells_b)))

    a_end, _ = scaled_integrals(x[-1], alpha)
    cells_a = _cell_integrals(x, alpha, forward=False)
    backward = np.concatenate(([a_end], cells_a[::-1]))
    a_vals = lfilter([1.0], [1.0, -decay], backward)[::-1]
    return a_vals, b_vals


def _half_lags(n: int, h: float) -> np.ndarray:
    return (np.arange(2 * n) - n + 0.5) * h


def _build(cfg: KernelConfig, L: float, h: float) -> KernelTable:
    ratio = L / h
    m = int(round(ratio))
    if m < 1 or abs(ratio - m) > 1e-9 * max(1.0, ratio):
        raise ContractError(f"L/h must be a positive integer, got L={L}, h={h}")
    n = 2 * m + 1
    alpha, kappa = cfg.alpha, cfg.kappa
    xi = (np.arange(n) - m) * h

    delta = 0.5 * kappa * h
    a_vals, b_vals = scaled_integrals_grid(alpha, delta, 4 * m + 2)

    q_pref = _prefactor(cfg, 2.0)
    neg_q = -(cfg.c * kappa) ** alpha / (2.0 * kappa ** 2)

    lags = _half_lags(n, h)
    q_half = np.empty(2 * n)
    negative = lags < 0.0
    q_half[negative] = neg_q * np.exp(kappa * lags[negative])
    odd = 2 * (np.arange(2 * n)[~negative] - n) + 1
    q_half[~negative] = -q_pref * (a_vals[odd] + b_vals[odd])

    samples = np.empty(n)
    samples[: m + 1] = -(cfg.c * kappa) ** alpha * k0(xi[: m + 1], kappa)
    even = 2 * np.arange(1, m + 1)
    samples[m + 1:] = -_prefactor(cfg, 1.0) * (a_vals[even] - b_vals[even])

    q_left = neg_q * math.exp(-kappa * L)
    q_right = -q_pref * (a_vals[2 * m] + b_vals[2 * m])
    zero_mean = integrate.trapezoid(samples, dx=h) + q_left - q_right
    negative_mass = (np.sum(np.abs(samples[: m + 1])) - 0.5 * (abs(samples[0]) + abs(samples[m]))) * h \
        + abs(q_left)
    l1_norm = float(np.sum(np.abs(np.diff(q_half))) + abs(q_half[0]) + abs(q_half[-1]))

    cfg = cfg.model_copy(update={'theta_bound': l1_norm})
    return KernelTable(
        cfg=cfg,
        L=m * h,
        h=h,
        xi=xi,
        samples=samples,
        q_half=q_half,
        neg_coefficient=-(cfg.c * kappa) ** alpha / (2.0 * kappa),
        tail_coefficient=alpha * cfg.c ** alpha / (kappa ** 2 * gamma(1.0 - alpha)),
        l1_norm=l1_norm,
        negative_mass=float(negative_mass),
        zero_mean=float(zero_mean),
    )


def build_table(cfg: KernelConfig, L: float, h: float) -> KernelTable:
    """
    Tabulate K_alpha on xi_i = -L + i h with its primitive at half-offset lags.

    Raises:
        ContractError: L/h not integral
        ConfigError: Measured L1 norm of K_alpha >= 1 (kappa too small)
    """
    table = _build(cfg, L, h)
    if table.l1_norm >= 1.0:
        raise ConfigError(
            f"measured ||K_alpha||_L1 = {table.l1_norm:.4f} >= 1; choose a larger kappa (now {cfg.kappa})",
            details={'kappa': cfg.kappa, 'norm': table.l1_norm},
        )
    logger.debug(f"kernel table: n={table.n}, h={h}, kappa={cfg.kappa}, norm={table.l1_norm:.4f}")
    return table


def select_kappa(alpha: float, c: float, max_abs_fprime: float, L: float, h: float,
                 target: float = 0.5) -> KernelTable:
    """
    kappa^2 = 2 max|f'|, doubled until the measured norm of K_alpha is <= target.
    """
    kappa2 = 2.0 * max_abs_fprime if max_abs_fprime > 0.0 else 1.0
    for _ in range(MAX_KAPPA_DOUBLINGS):
        table = _build(KernelConfig(alpha=alpha, c=c, kappa=math.sqrt(kappa2)), L, h)
        if table.l1_norm <= target:
            logger.info(f"kappa={math.sqrt(kappa2):.4f}: ||K_alpha||_L1 = {table.l1_norm:.4f}")
            return table
        logger.debug(f"kappa^2={kappa2}: norm {table.l1_norm:.4f} > {target}, doubling")
        kappa2 *= 2.0
    raise ConvergenceError(f"no kappa with ||K_alpha|| <= {target} after {MAX_KAPPA_DOUBLINGS} doublings")


class CellConvolution:
    """
    Discrete convolution with exact cell weights and constant end extensions.

    weights[k + n - 1] = Q((k + 1/2) h) - Q((k - 1/2) h), |k| <= n - 1.
    """

    def __init__(self, q_half: np.ndarray, total: float, h: float):
        n = q_half.size // 2
        self.n = n
        self.h = h
        self.weights = np.diff(q_half)
        self.left_tail = total - q_half[n:]
        self.right_tail = q_half[:n].copy()
        self._nfft = sp_fft.next_fast_len(3 * n - 2, real=True)
        self._spectrum = sp_fft.rfft(self.weights, self._nfft)

    def __call__(self, psi: np.ndarray) -> np.ndarray:
        if psi.size != self.n:
            raise ContractError(f"grid function has {psi.size} nodes, operator expects {self.n}")
        full = sp_fft.irfft(sp_fft.rfft(psi, self._nfft) * self._spectrum, self._nfft)
        return full[self.n - 1: 2 * self.n - 1] + psi[0] * self.left_tail + psi[-1] * self.right_tail


class GreenOperator:
    """G * g as the fixed point of psi = K_alpha * psi + K_0 * g."""

    def __init__(self, table: KernelTable):
        self.table = table
        self.kappa = table.cfg.kappa
        self.kalpha = CellConvolution(table.q_half, 0.0, table.h)
        self.k0 = CellConvolution(k0_primitive(_half_lags(table.n, table.h), self.kappa),
                                  1.0 / self.kappa ** 2, table.h)

    def apply(self, g: np.ndarray, psi0: Optional[np.ndarray] = None, tol: float = 1e-10,
              max_iter: int = 2000) -> GreenResult:
        source = self.k0(np.asarray(g, dtype=float))
        psi = source.copy() if psi0 is None else np.asarray(psi0, dtype=float).copy()
        increments = []
        for iteration in range(1, max_iter + 1):
            new = self.kalpha(psi) + source
            inc = float(np.max(np.abs(new - psi)))
            increments.append(inc)
            psi = new
            if not math.isfinite(inc) or (len(increments) > 3 and inc > 1e3 * max(increments[0], tol)):
                raise ConvergenceError("Green iteration diverges",
                                       details={'iteration': iteration, 'increment': inc})
            if inc < tol:
                return GreenResult(psi=psi, iterations=iteration, increments=increments)
        raise ConvergenceError(f"Green iteration not converged in {max_iter} sweeps",
                               details={'increment': increments[-1]})


def green_apply(g: np.ndarray, cfg: KernelConfig, table: KernelTable, psi0: Optional[np.ndarray] = None,
                tol: float = 1e-10) -> GreenResult:
    """
    psi = G * g by Picard iteration psi <- K_alpha * psi + K_0 * g.

    Args:
        g: Grid function on table.xi, extended by its end values
        cfg: Kernel configuration (must match the table)
        table: Kernel table with norm < 1
        psi0: Optional starting guess
        tol: Sup-norm increment tolerance

    Raises:
        ContractError: Table norm >= 1 or mismatched configuration
        ConvergenceError: Divergence or iteration budget exhausted
    """
    if table.l1_norm >= 1.0:
        raise ContractError(f"Green iteration needs ||K_alpha|| < 1, table has {table.l1_norm:.4f}")
    if abs(cfg.kappa - table.cfg.kappa) > 1e-14 * cfg.kappa or abs(cfg.c - table.cfg.c) > 1e-14 * cfg.c:
        raise ContractError("kernel configuration does not match the table")
    return GreenOperator(table).apply(g, psi0=psi0, tol=tol)


def lattice_dispersion(mu: float, alpha: float, c: float, h: float, fprime0: float) -> float:
    """
    Grid counterpart of V(mu) = mu^2 - c^alpha mu^alpha + f'(0) for LatticeGreenOperator.

    exp(mu xi) is an exact mode of the operator away from its right end:
    (A - kappa^2) exp(mu xi) = (f'(0) - V_h(mu)) exp(mu xi).
    """
    z = mu * h
    count = int(math.ceil(EXP_CUTOFF / z)) + 1
    w = l1_weights(alpha, count).w
    memory = -math.expm1(-z) * float(np.sum(w * np.exp(-z * np.arange(count))))
    second = 4.0 * math.sinh(0.5 * z) ** 2 / (h * h)
    return second - c ** alpha * h ** -alpha / gamma(2.0 - alpha) * memory + fprime0


def lattice_root(alpha: float, c: float, h: float, fprime0: float, lower: float, upper: float) -> float:
    """Root of lattice_dispersion in [lower, upper]."""
    return brentq(lambda mu: lattice_dispersion(mu, alpha, c, h, fprime0), lower, upper, xtol=1e-15)


class LatticeGreenOperator:
    """
    Green operator of kappa^2 - d^2 + c^alpha d^alpha on a uniform grid of n nodes.

    The fractional term is the L1 product rule on the piecewise-linear grid
    function; left of the grid psi is continued by psi_0 exp(tail_rate (xi - xi_0)),
    or by psi_0 when tail_rate is None. The second difference uses the same
    continuation as left ghost node and a reflecting node on the right.
    The matrix A has non-positive off-diagonal entries and row sums >= kappa^2,
    so A^-1 >= 0 and the operator preserves order.

    A = P - N with P banded (the nearest `band` memory lags, psi_0 included)
    and N >= 0 holding the rest of the memory. P is factored once; N is
    applied by FFT convolution.
    """

    def __init__(self, alpha: float, c: float, kappa: float, h: float, n: int,
                 tail_rate: Optional[float] = None, max_band: int = MAX_LATTICE_BAND):
        if not 0.0 < alpha < 1.0:
            raise ConfigError(f"alpha must lie in (0, 1), got {alpha}")
        if n < 4:
            raise ContractError(f"lattice operator needs at least 4 nodes, got {n}")
        if tail_rate is not None and tail_rate <= 0.0:
            raise ConfigError(f"tail rate must be positive, got {tail_rate}")
        self.alpha, self.c, self.kappa, self.h, self.n = alpha, c, kappa, h, n
        self.tail_rate = tail_rate
        self.scale = c ** alpha * h ** -alpha / gamma(2.0 - alpha)
        self.ratio = math.exp(-tail_rate * h) if tail_rate else 1.0

        extra = int(math.ceil(EXP_CUTOFF / (tail_rate * h))) if tail_rate else 0
        w = l1_weights(alpha, n + extra).w
        v = np.zeros(n)
        v[1:] = w[:n - 1] - w[1:n]
        tau = np.zeros(n)
        if tail_rate:
            # tau_i = (1 - x) sum_k w_{i+k} x^k, x = exp(-tail_rate h)
            tau = (1.0 - self.ratio) * lfilter([1.0], [1.0, -self.ratio], w[::-1])[::-1][:n]
        # weight of psi_0 in row i: everything at or beyond the left edge
        beta = np.empty(n)
        beta[0] = w[0] - tau[0]
        beta[1:] = w[:n - 1] - tau[1:]

        kappa2 = kappa * kappa
        below = np.flatnonzero(self.scale * w[1:n - 1] <= kappa2)
        band = int(below[0]) + 1 if below.size else n - 2
        self.band = max(1, min(band, max_band, n - 2))

        inv_h2 = 1.0 / (h * h)
        main = np.full(n, kappa2 + self.scale * w[0] + 2.0 * inv_h2)
        main[0] -= self.ratio * inv_h2 + self.scale * beta[0]
        main[-1] -= inv_h2
        diagonals, offsets = [main, np.full(n - 1, -inv_h2)], [0, 1]
        for m in range(1, self.band + 1):
            lag = np.full(n - m, -self.scale * v[m])
            lag[0] = -self.scale * beta[m]
            if m == 1:
                lag -= inv_h2
            diagonals.append(lag)
            offsets.append(-m)
        self._P = sparse.diags(diagonals, offsets, shape=(n, n), format='csc')
        self._lu = splu(self._P, permc_spec='NATURAL')

        self._far = v.copy()
        self._far[:self.band + 1] = 0.0
        self._beta = beta.copy()
        self._beta[:self.band + 1] = 0.0
        ones = np.ones(n)
        self.theta = float(np.max(self.far_memory(ones) / (self._P @ ones)))
        logger.debug(f"lattice operator n={n} h={h:.4g} kappa={kappa:.4f} band={self.band} "
                     f"theta={self.theta:.4f} tail={tail_rate}")

    def far_memory(self, psi: np.ndarray) -> np.ndarray:
        """N psi."""
        out = self.scale * self._beta * psi[0]
        if self.band < self.n - 2:
            inner = psi.copy()
            inner[0] = 0.0
            out = out + self.scale * fftconvolve(self._far, inner)[:self.n]
        return out

    def matvec(self, psi: np.ndarray) -> np.ndarray:
        """A psi."""
        psi = np.asarray(psi, dtype=float)
        return self._P @ psi - self.far_memory(psi)

    def sweep(self, psi: np.ndarray, g: np.ndarray) -> np.ndarray:
        """One splitting step P^-1 (N psi + g)."""
        return self._lu.solve(self.far_memory(psi) + g)

    def apply(self, g: np.ndarray, psi0: Optional[np.ndarray] = None, tol: float = 1e-10,
              max_iter: int = 2000) -> GreenResult:
        """A^-1 g by the splitting iteration; increments shrink at least by theta per sweep."""
        g = np.asarray(g, dtype=float)
        if g.shape != (self.n,):
            raise ContractError(f"grid function has shape {g.shape}, operator has {self.n} nodes")
        psi = self._lu.solve(g) if psi0 is None else np.asarray(psi0, dtype=float).copy()
        increments = []
        for iteration in range(1, max_iter + 1):
            new = self.sweep(psi, g)
            inc = float(np.max(np.abs(new - psi)))
            increments.append(inc)
            psi = new
            if not math.isfinite(inc):
                raise ConvergenceError("lattice Green iteration diverges", details={'iteration': iteration})
            if inc < tol:
                return GreenResult(psi=psi, iterations=iteration, increments=increments)
        raise ConvergenceError(f"lattice Green iteration not converged in {max_iter} sweeps",
                               details={'increment': increments[-1]})

    def dispersion(self, mu: float, fprime0: float) -> float:
        return lattice_dispersion(mu, self.alpha, self.c, self.h, fprime0)


def fractional_derivative(phi: np.ndarray, h: float, alpha: float, tail_rate: Optional[float] = None) -> np.ndarray:
    """
    (1/Gamma(1-alpha)) int_0^inf phi'(xi - s) s^-alpha ds at every node.

    phi is piecewise linear on the grid; left of the grid it is continued by
    phi_0 exp(tail_rate (xi - xi_0)) when tail_rate is given, else by phi_0.
    """
    n = phi.size
    out = np.zeros(n)
    if n > 1:
        weights = l1_weights(alpha, n - 1).w
        conv = fftconvolve(weights, np.diff(phi))[: n - 1]
        out[1:] = conv * h ** -alpha / gamma(2.0 - alpha)
    if tail_rate:
        d = tail_rate * h * np.arange(n)
        out += tail_rate ** alpha * phi[0] * np.exp(d) * special.gammaincc(1.0 - alpha, d)
    return out


def linear_residual(psi: np.ndarray, g: np.ndarray, cfg: KernelConfig, h: float) -> np.ndarray:
    """psi'' - c^alpha d^alpha psi - kappa^2 psi + g on the interior nodes."""
    second = (psi[2:] - 2.0 * psi[1:-1] + psi[:-2]) / (h * h)
    frac = fractional_derivative(psi, h, cfg.alpha)[1:-1]
    return second - cfg.c ** cfg.alpha * frac - cfg.kappa ** 2 * psi[1:-1] + g[1:-1]
