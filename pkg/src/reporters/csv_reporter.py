"""CSV reporter for data tables (scan rows, trajectories, ratio ladders)."""

import csv
import io
from fractions import Fraction

from ..core.checks import Report
from .base import BaseReporter


def format_cell(value) -> str:
    """Exact text for rationals, shortest round-trip text for floats, empty for None."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    if hasattr(value, "item"):
        return format_cell(value.item())
    return str(value)


class CSVReporter(BaseReporter):
    """Reporter that writes the report's table; without a table, one row per check."""

    extension = ".csv"

    def generate(self, report: Report) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        if report.rows:
            columns = report.columns or list(report.rows[0])
            writer.writerow(columns)
            for row in report.rows:
                writer.writerow([format_cell(row.get(c)) for c in columns])
        else:
            writer.writerow(["name", "status", "measured", "tolerance"])
            for check in self.filter_checks(report).checks:
                data = check.to_dict()
                writer.writerow([check.name, data["status"], format_cell(data["measured"]),
                                 format_cell(data["tolerance"])])
        return buffer.getvalue()
