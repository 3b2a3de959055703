"""Distribution functions and decreasing rearrangements of grid fields."""

from dataclasses import dataclass

import numpy as np

from ..core.errors import NonFiniteFieldError
from .grid import GridFunction


@dataclass(frozen=True)
class RearrangementProfile:
    """f* as a step function: ``heights[k]`` on [k h, (k + 1) h).

    Heights are non-increasing; the profile covers every cell, so its total
    measure is the box volume.
    """

    heights: np.ndarray
    cell_measure: float

    @property
    def size(self) -> int:
        return int(self.heights.size)

    @property
    def measures(self) -> np.ndarray:
        """Right ends t_k = k h of the steps, k = 1..size."""
        return self.cell_measure * np.arange(1, self.size + 1, dtype=float)

    @property
    def total_measure(self) -> float:
        return self.size * self.cell_measure

    def support_measure(self) -> float:
        return float(np.count_nonzero(self.heights)) * self.cell_measure

    def f_star(self, t) -> np.ndarray:
        """f*(t) for t >= 0 (vectorised)."""
        t = np.asarray(t, dtype=float)
        idx = np.floor(t / self.cell_measure).astype(np.int64)
        out = np.zeros_like(t)
        inside = idx < self.size
        out[inside] = self.heights[idx[inside]]
        return out

    def distribution(self, lam) -> np.ndarray:
        """d_f(lam) = measure of {|f| > lam} (vectorised over lam)."""
        ascending = self.heights[::-1]
        lam = np.asarray(lam, dtype=float)
        above = self.size - np.searchsorted(ascending, lam, side="right")
        return above * self.cell_measure

    def power(self, exponent: float) -> "RearrangementProfile":
        """Profile of |f|**exponent; rearrangement commutes with increasing maps."""
        return RearrangementProfile(self.heights ** exponent, self.cell_measure)

    def scaled(self, factor: float) -> "RearrangementProfile":
        return RearrangementProfile(self.heights * abs(factor), self.cell_measure)


def rearrangement(f: GridFunction) -> RearrangementProfile:
    """Exact decreasing rearrangement of the discrete measure.

    Sorting is stable on (-|value|, cell index), so ties are broken by cell
    order and the profile does not depend on thread count.

    Raises:
        NonFiniteFieldError: If any sample is NaN or infinite
    """
    magnitudes = np.abs(f.flat())
    if not np.all(np.isfinite(magnitudes)):
        raise NonFiniteFieldError("cannot rearrange a field with non-finite values")
    order = np.argsort(-magnitudes, kind="stable")
    return RearrangementProfile(magnitudes[order], f.grid.cell_measure)


def distribution_function(f: GridFunction, lam) -> np.ndarray:
    """d_f(lam) = h * #{cells with |f| > lam}."""
    return rearrangement(f).distribution(lam)
