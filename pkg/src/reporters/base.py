"""Base reporter class."""

import os
import tempfile
from abc import ABC, abstractmethod
from dataclasses import replace
from pathlib import Path
from typing import Union

from ..core.checks import Report


class BaseReporter(ABC):
    """Base class for all reporters."""

    extension = ".txt"

    def __init__(self, failures_only: bool = False):
        """Initialize reporter.

        Args:
            failures_only: Render failing checks only
        """
        self.failures_only = failures_only

    def filter_checks(self, report: Report) -> Report:
        """Drop passing checks when ``failures_only`` is set.

        The summary keeps counting every check.
        """
        if not self.failures_only:
            return report
        return replace(report, checks=report.get_failures(), metadata={**report.metadata, "summary": report.get_summary()})

    @abstractmethod
    def generate(self, report: Report) -> str:
        """Generate report.

        Args:
            report: Run report

        Returns:
            Report as string
        """

    def save(self, report: Report, output_path: Union[str, Path]) -> Path:
        """Write the report atomically: temp file in the target directory, then ``os.replace``.

        Args:
            report: Run report
            output_path: Path to save report

        Returns:
            The written path
        """
        path = Path(output_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        text = self.generate(report)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
                f.write(text)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return path
