"""HTML reporter: a human-readable table of checks."""

from jinja2 import Template

from ..core.checks import Report
from .base import BaseReporter
from .csv_reporter import format_cell

HTML_TEMPLATE = """<!DOCTYPE html>
<html lang="en">
<head>
    <meta charset="UTF-8">
    <title>hartree-lab {{ summary.command }} report</title>
    <style>
        body { font-family: -apple-system, 'Segoe UI', Roboto, sans-serif; background: #f5f5f5; color: #333; }
        .container { max-width: 1100px; margin: 0 auto; padding: 20px; }
        header { background: #34495e; color: white; padding: 20px 30px; border-radius: 8px; margin-bottom: 20px; }
        .summary { display: flex; gap: 20px; margin-bottom: 20px; }
        .stat-card { background: white; padding: 15px 20px; border-radius: 8px; }
        .stat-card .value { font-size: 1.8em; font-weight: bold; }
        table { width: 100%; border-collapse: collapse; background: white; }
        th, td { text-align: left; padding: 6px 10px; border-bottom: 1px solid #ddd; font-size: 0.9em; }
        .pass { color: #28a745; }
        .fail { color: #dc3545; }
        code { font-family: 'Courier New', monospace; }
    </style>
</head>
<body>
    <div class="container">
        <header>
            <h1>{{ summary.command }}: <span class="{{ summary.verdict|lower }}">{{ summary.verdict }}</span></h1>
            <div>config {{ provenance.config_hash|default("-") }} &middot; seed {{ provenance.seed|default("-") }}
                &middot; version {{ provenance.version|default("-") }}</div>
        </header>
        <div class="summary">
            <div class="stat-card"><h3>Checks</h3><div class="value">{{ summary.total_checks }}</div></div>
            <div class="stat-card"><h3>Passed</h3><div class="value pass">{{ summary.passed }}</div></div>
            <div class="stat-card"><h3>Failed</h3><div class="value fail">{{ summary.failed }}</div></div>
        </div>
        <table>
            <tr><th>Check</th><th>Status</th><th>Measured</th><th>Tolerance</th><th>Message</th></tr>
            {% for check in checks %}
            <tr>
                <td><code>{{ check.name }}</code></td>
                <td class="{{ check.status }}">{{ check.status|upper }}</td>
                <td>{{ check.measured }}</td>
                <td>{{ check.tolerance }}</td>
                <td>{{ check.message }}</td>
            </tr>
            {% endfor %}
        </table>
    </div>
</body>
</html>
"""


class HTMLReporter(BaseReporter):
    """Reporter that renders checks as an HTML table (no data table)."""

    extension = ".html"

    def generate(self, report: Report) -> str:
        """Generate HTML report.

        Args:
            report: Run report

        Returns:
            HTML string
        """
        summary = report.get_summary()
        shown = self.filter_checks(report)
        template = Template(HTML_TEMPLATE, autoescape=True)
        return template.render(
            summary=summary,
            provenance=report.provenance,
            checks=[
                {
                    "name": c.name,
                    "status": c.status.value,
                    "measured": format_cell(c.to_dict()["measured"]),
                    "tolerance": format_cell(c.to_dict()["tolerance"]),
                    "message": c.message,
                }
                for c in shown.checks
            ],
        )
