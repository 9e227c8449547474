#!/usr/bin/env python3
"""
Base Report Module - Base classes for the check reports
"""

import json
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional

from fracfront.utils.logger import setup_logger

logger = setup_logger(__name__)


def make_check(name: str, measured: float, expected: float, tolerance: float,
               relative: bool = False) -> Dict[str, Any]:
    """One check row; relative compares |measured - expected| / |expected|."""
    deviation = abs(measured - expected)
    if relative and expected != 0.0:
        deviation /= abs(expected)
    return {
        'name': name,
        'measured': float(measured),
        'expected': float(expected),
        'tolerance': float(tolerance),
        'relative': relative,
        'passed': bool(deviation <= tolerance),
    }


class BaseReport(ABC):
    """Abstract base class for all reports."""

    def __init__(self, name: str, description: str):
        """
        Initialize the base report.

        Args:
            name: Name of the report
            description: Description of the report
        """
        self.name = name
        self.description = description

    @abstractmethod
    def generate(self, **kwargs) -> Dict[str, Any]:
        """
        Generate the report data.

        Returns:
            Dict containing report data
        """

    def export(self, data: Dict[str, Any], format: str = 'json') -> str:
        """
        Export the report as JSON (default) or plain text.

        Args:
            data: Report data generated by generate()
            format: Export format (json, txt)
        """
        if format == 'txt':
            return self._export_text(data)
        return json.dumps(data, indent=2, sort_keys=True)

    def _export_text(self, data: Dict[str, Any]) -> str:
        output = ["=" * 50, data.get('report_name', self.name), "=" * 50]
        for check in data.get('checks', []):
            flag = 'ok' if check['passed'] else 'FAIL'
            output.append(f"  [{flag}] {check['name']}: {check['measured']:.10g} "
                          f"(expected {check['expected']:.10g}, tol {check['tolerance']:.1g})")
        return "\n".join(output)


class ReportManager:
    """Manager for handling different types of reports."""

    def __init__(self):
        self.reports: Dict[str, BaseReport] = {}

    def register_report(self, report_id: str, report: BaseReport) -> None:
        self.reports[report_id] = report
        logger.debug(f"Registered report: {report_id}")

    def get_report(self, report_id: str) -> Optional[BaseReport]:
        return self.reports.get(report_id)

    def list_reports(self) -> Dict[str, Dict[str, str]]:
        return {rid: {'name': r.name, 'description': r.description} for rid, r in self.reports.items()}

    def generate_report(self, report_id: str, **kwargs) -> Dict[str, Any]:
        """
        Generate a specific report.

        Errors of the report propagate so the caller can map them to exit codes.

        Raises:
            KeyError: Unknown report id
        """
        report = self.get_report(report_id)
        if report is None:
            raise KeyError(f"Report '{report_id}' not found")
        logger.info(f"Generating report: {report.name}")
        data = report.generate(**kwargs)
        data.setdefault('report_name', report.name)
        data.setdefault('report_description', report.description)
        return data

    def failed_checks(self, data: Dict[str, Any]) -> List[str]:
        return [c['name'] for c in data.get('checks', []) if not c['passed']]
