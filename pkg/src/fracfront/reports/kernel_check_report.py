#!/usr/bin/env python3
"""
Kernel Check Report - identities of K_0, K_alpha and the Green operator.
"""

from typing import Any, Dict

import numpy as np

from fracfront.core.wavekernels import GreenOperator, LatticeGreenOperator, build_table, k_alpha, select_kappa
from fracfront.models.kernels import KernelConfig
from fracfront.reports.base_report import BaseReport, make_check
from fracfront.utils.logger import setup_logger

logger = setup_logger(__name__)

SAMPLE_POINTS = (0.5, 1.0, 5.0)
LATTICE_STEP = 0.02
LATTICE_NODES = 2001
SELECTION_STEP = 0.02


class KernelCheckReport(BaseReport):
    """Measured against expected values of the kernel identities."""

    def __init__(self):
        super().__init__(
            name="Kernel Check Report",
            description="Closed forms, zero mean, negative mass, tail constant, norm scaling, G * kappa^2 = 1 "
                        "and the grid operator of the profile iteration",
        )

    def generate(self, alpha: float = 0.5, c: float = 2.0, kappa: float = 2.0,
                 L: float = 20.0, h: float = 1e-3, **kwargs) -> Dict[str, Any]:
        cfg = KernelConfig(alpha=alpha, c=c, kappa=kappa)
        table = build_table(cfg, L, h)
        m = (table.n - 1) // 2
        checks = []

        xi_neg = -np.array([0.25, 1.0, 3.0])
        closed = -(c * kappa) ** alpha * np.exp(-kappa * np.abs(xi_neg)) / (2.0 * kappa)
        measured = float(np.max(np.abs(k_alpha(xi_neg, cfg) - closed)))
        checks.append(make_check("negative-side closed form", measured, 0.0, 1e-14))

        # recurrence table against pointwise quadrature
        worst = 0.0
        for xi in SAMPLE_POINTS:
            idx = m + int(round(xi / h))
            if idx < table.n:
                exact = k_alpha(xi, cfg)
                worst = max(worst, abs(table.samples[idx] - exact) / abs(exact))
        checks.append(make_check("table vs quadrature (relative)", worst, 0.0, 1e-8))

        checks.append(make_check("zero mean", table.zero_mean, 0.0, 1e-4))
        checks.append(make_check("negative mass", table.negative_mass,
                                 (c * kappa) ** alpha / (2.0 * kappa ** 2), 1e-6))

        far = 200.0 / kappa
        tail = far ** (1.0 + alpha) * k_alpha(far, cfg)
        checks.append(make_check("tail constant", tail, table.tail_coefficient, 0.1, relative=True))

        doubled = build_table(KernelConfig(alpha=alpha, c=c, kappa=2.0 * kappa), L, h)
        checks.append(make_check("norm scaling 2^(alpha-2)", doubled.l1_norm / table.l1_norm,
                                 2.0 ** (alpha - 2.0), 1e-2, relative=True))

        op = GreenOperator(table)
        green = op.apply(np.full(table.n, kappa ** 2), tol=1e-13)
        checks.append(make_check("G * kappa^2 = 1", float(np.max(np.abs(green.psi - 1.0))), 0.0, 1e-8))
        step = op.apply(kappa ** 2 / (1.0 + np.exp(-table.xi)), tol=1e-12)
        ratios = step.contraction_ratios
        ratio = float(np.max(ratios[1:])) if len(ratios) > 1 else 0.0
        checks.append(make_check("Picard contraction <= norm + 0.05", ratio, 0.0, table.l1_norm + 0.05))

        # kappa policy for a unit reaction slope
        selected = select_kappa(alpha, c, 1.0, L, SELECTION_STEP)
        checks.append(make_check("selected kappa norm <= 1/2", selected.l1_norm, 0.0, 0.5))

        # the grid operator used by the profile iteration
        lattice = LatticeGreenOperator(alpha, c, kappa, LATTICE_STEP, LATTICE_NODES)
        flat = lattice.apply(np.full(lattice.n, kappa ** 2), tol=1e-13)
        checks.append(make_check("lattice G * kappa^2 = 1", float(np.max(np.abs(flat.psi - 1.0))), 0.0, 1e-10))
        centre = LATTICE_STEP * (np.arange(lattice.n) - lattice.n // 2)
        bump = lattice.apply(np.exp(-centre ** 2), tol=1e-13)
        checks.append(make_check("lattice G order-preserving (negative part)",
                                 max(0.0, -float(bump.psi.min())), 0.0, 1e-14))
        checks.append(make_check("lattice splitting bound <= 1/2", lattice.theta, 0.0, 0.5))

        logger.debug(f"kernel check alpha={alpha} c={c} kappa={kappa}: "
                     f"{sum(check['passed'] for check in checks)}/{len(checks)} passed")
        return {
            'report_name': self.name,
            'alpha': alpha,
            'c': c,
            'kappa': kappa,
            'L': table.L,
            'h': h,
            'norm': table.l1_norm,
            'selected_kappa': selected.cfg.kappa,
            'checks': checks,
            'passed': all(check['passed'] for check in checks),
        }
