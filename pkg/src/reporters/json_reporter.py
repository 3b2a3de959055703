"""JSON reporter for the machine summary."""

from ..core.checks import Report
from .base import BaseReporter


class JSONReporter(BaseReporter):
    """Reporter that outputs JSON with sorted keys."""

    extension = ".json"

    def generate(self, report: Report) -> str:
        """Generate JSON report.

        Args:
            report: Run report

        Returns:
            JSON string
        """
        return self.filter_checks(report).to_json() + "\n"
