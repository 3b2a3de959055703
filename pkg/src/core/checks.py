"""Data structures for check results and run reports."""

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional


class CheckStatus(str, Enum):
    """Outcome of a single check."""

    PASS = "pass"
    FAIL = "fail"


def jsonable(value: Any) -> Any:
    """Convert exact and numpy values into JSON-safe primitives.

    Fractions become ``"num/den"`` strings so that exact values survive the
    round trip; non-finite floats become strings.
    """
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if hasattr(value, "to_dict"):
        return value.to_dict()
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "item"):  # numpy scalar
        value = value.item()
        if isinstance(value, (bool, int)):
            return value
    if isinstance(value, complex):
        return [jsonable(value.real), jsonable(value.imag)]
    if isinstance(value, float):
        if math.isfinite(value):
            return value
        return str(value)
    return str(value)


@dataclass
class Check:
    """A single named pass/fail check with its measured value."""

    name: str
    status: CheckStatus
    measured: Any = None
    tolerance: Any = None
    message: str = ""
    metadata: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_bool(cls, name: str, ok: bool, **kwargs: Any) -> "Check":
        """Build a check from a boolean outcome."""
        return cls(name=name, status=CheckStatus.PASS if ok else CheckStatus.FAIL, **kwargs)

    @property
    def passed(self) -> bool:
        return self.status == CheckStatus.PASS

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {
            "name": self.name,
            "status": self.status.value,
            "measured": jsonable(self.measured),
            "tolerance": jsonable(self.tolerance),
            "message": self.message,
            "metadata": jsonable(self.metadata),
        }


@dataclass
class Report:
    """Result of one CLI run: checks, an optional data table and provenance.

    Reports carry no timestamps, so the same config and seed reproduce the same
    bytes.
    """

    command: str
    checks: List[Check] = field(default_factory=list)
    columns: List[str] = field(default_factory=list)
    rows: List[Dict[str, Any]] = field(default_factory=list)
    provenance: Dict[str, Any] = field(default_factory=dict)
    metadata: Dict[str, Any] = field(default_factory=dict)

    def add(self, check: Check) -> Check:
        """Append a check, rejecting duplicate names."""
        if any(c.name == check.name for c in self.checks):
            raise ValueError(f"duplicate check name: {check.name}")
        self.checks.append(check)
        return check

    def extend(self, checks: List[Check]) -> None:
        for check in checks:
            self.add(check)

    def get_failures(self) -> List[Check]:
        """Get the failing checks."""
        return [c for c in self.checks if not c.passed]

    def get_check(self, name: str) -> Optional[Check]:
        for check in self.checks:
            if check.name == name:
                return check
        return None

    @property
    def passed(self) -> bool:
        return not self.get_failures()

    def get_summary(self) -> Dict[str, Any]:
        """Get summary statistics."""
        failures = self.get_failures()
        return {
            "command": self.command,
            "verdict": "PASS" if not failures else "FAIL",
            "total_checks": len(self.checks),
            "passed": len(self.checks) - len(failures),
            "failed": len(failures),
            "failed_checks": [c.name for c in failures],
        }

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {
            "summary": self.get_summary(),
            "checks": {c.name: c.to_dict() for c in self.checks},
            "provenance": jsonable(self.provenance),
            "metadata": jsonable(self.metadata),
        }

    def to_json(self) -> str:
        """Convert to JSON string with sorted keys."""
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)
