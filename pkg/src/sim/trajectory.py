"""Sampled solutions: times, optional fields and per-sample diagnostics."""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from ..core.errors import ParameterError
from ..lorentz.grid import GridFunction

DIAGNOSTICS = ("mass", "energy", "hdot_s", "h_s", "lorentz", "sobolev_lorentz")


@dataclass
class Trajectory:
    """Samples of one run. ``times`` is strictly increasing."""

    columns: List[str] = field(default_factory=list)
    times: List[float] = field(default_factory=list)
    fields: List[GridFunction] = field(default_factory=list)
    diagnostics: Dict[str, List[float]] = field(default_factory=dict)

    def record(self, t: float, u: Optional[GridFunction], values: Dict[str, float]) -> None:
        if self.times and not t > self.times[-1]:
            raise ParameterError(f"sample time {t} does not follow {self.times[-1]}", tag="trajectory")
        self.times.append(t)
        if u is not None:
            self.fields.append(u)
        for name in self.columns:
            self.diagnostics.setdefault(name, []).append(values[name])

    def __len__(self) -> int:
        return len(self.times)

    @property
    def final(self) -> GridFunction:
        if not self.fields:
            raise ParameterError("trajectory stored no fields", tag="trajectory")
        return self.fields[-1]

    def relative_drift(self, name: str) -> float:
        """max_k |x_k - x_0| / |x_0| of a diagnostic column."""
        series = self.diagnostics[name]
        base = abs(series[0])
        if base == 0.0:
            return max(abs(x) for x in series)
        return max(abs(x - series[0]) for x in series) / base

    def to_rows(self) -> List[Dict[str, float]]:
        """One row per sample: ``t`` followed by the diagnostic columns."""
        rows = []
        for k, t in enumerate(self.times):
            row = {"t": t}
            row.update({name: self.diagnostics[name][k] for name in self.columns})
            rows.append(row)
        return rows
