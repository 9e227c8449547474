#!/usr/bin/env python3
"""
Dispersion Report - roots of the characteristic polynomial at a given speed.
"""

from typing import Any, Dict

from fracfront.core.dispersion import char_poly_second_derivative, char_roots
from fracfront.reports.base_report import BaseReport
from fracfront.utils.logger import setup_logger

logger = setup_logger(__name__)


class DispersionCheckReport(BaseReport):
    """Root regime, roots, residuals and c*_alpha."""

    def __init__(self):
        super().__init__(
            name="Dispersion Report",
            description="Positive roots of V(lambda) = lambda^2 - (c lambda)^alpha + f'(0)",
        )

    def generate(self, alpha: float = 0.5, c: float = 4.0, fprime0: float = 1.0, **kwargs) -> Dict[str, Any]:
        report = char_roots(alpha, c, fprime0)
        data = report.model_dump(mode='json')
        data['report_name'] = self.name
        data['curvature'] = [char_poly_second_derivative(r, alpha, c) for r in report.roots]
        data['has_wave'] = report.regime != 'none'
        logger.debug(f"dispersion report: {data['regime']} {data['roots']}")
        return data
