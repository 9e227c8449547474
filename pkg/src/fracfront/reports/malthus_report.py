#!/usr/bin/env python3
"""
Malthus Check Report - L1 scheme against the Mittag-Leffler solution.
"""

from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from fracfront.core.caputo import malthus_exact, order_study, solve_malthus
from fracfront.models.scheme import MalthusRun
from fracfront.reports.base_report import BaseReport, make_check
from fracfront.utils.logger import setup_logger

logger = setup_logger(__name__)

DEFAULT_DTS = (1.0 / 40.0, 1.0 / 80.0, 1.0 / 160.0)


class MalthusCheckReport(BaseReport):
    """Error table and observed order of d^alpha v = zeta v under step halving."""

    def __init__(self):
        super().__init__(
            name="Malthus Check Report",
            description="Observed L1 order at a fixed time against v0 E_alpha(zeta t^alpha)",
        )

    def generate(self, alpha: float = 0.5, zeta: float = -1.0, t_end: float = 1.0,
                 dts: Sequence[float] = DEFAULT_DTS, implicit: bool = True,
                 ml_options: Optional[dict] = None, **kwargs) -> Dict[str, Any]:
        study = order_study(alpha, zeta, t_end, dts, implicit=implicit, ml_options=ml_options)

        finest = min(dts)
        result = solve_malthus(MalthusRun(alpha=alpha, zeta=zeta, dt=finest,
                                          nsteps=int(round(t_end / finest)), implicit=implicit))
        exact = malthus_exact(alpha, zeta, 1.0, result.t, **(ml_options or {}))
        rows: List[List[float]] = [
            [float(t), float(v), float(e), float(abs(v - e))] for t, v, e in zip(result.t, result.v, exact)
        ]

        # the L1 order at a fixed time lies between 1 and 2 - alpha for this data
        last = study.orders[-1] if study.orders else float('nan')
        checks = [
            make_check("errors decrease", float(np.all(np.diff(study.errors) < 0.0)), 1.0, 0.0),
            make_check("observed order", last, 0.5 * (1.0 + study.expected_order),
                       0.5 * (study.expected_order - 1.0) + 0.3),
        ]
        return {
            'report_name': self.name,
            'alpha': alpha,
            'zeta': zeta,
            't_end': t_end,
            'implicit': implicit,
            'exact': study.exact,
            'dts': study.dts,
            'errors': study.errors,
            'orders': study.orders,
            'expected_order': study.expected_order,
            'checks': checks,
            'passed': all(check['passed'] for check in checks),
            'rows': rows,
        }
