"""Wave-number lattices and the FFT entry points shared by every multiplier."""

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.fft

from ..core.config import thread_count
from ..lorentz.grid import GridSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FrequencyLattice:
    """Angular wave numbers of a grid: integer multiples of pi/L per axis, in FFT order."""

    grid: GridSpec
    axis: np.ndarray
    squared_norm: np.ndarray

    @property
    def norm(self) -> np.ndarray:
        return np.sqrt(self.squared_norm)

    @property
    def nyquist(self) -> float:
        return np.pi / self.grid.spacing


@lru_cache(maxsize=32)
def lattice_for(grid: GridSpec) -> FrequencyLattice:
    """Lattice of ``grid``, cached per grid."""
    axis = 2.0 * np.pi * scipy.fft.fftfreq(grid.points, d=grid.spacing)
    k2 = np.zeros(grid.shape)
    for i in range(grid.n):
        shape = [1] * grid.n
        shape[i] = grid.points
        k2 = k2 + axis.reshape(shape) ** 2
    k2.setflags(write=False)
    axis.setflags(write=False)
    return FrequencyLattice(grid, axis, k2)


def forward(values: np.ndarray) -> np.ndarray:
    """Unnormalised forward transform (sign -i)."""
    return scipy.fft.fftn(values, workers=thread_count())


def inverse(values: np.ndarray) -> np.ndarray:
    return scipy.fft.ifftn(values, workers=thread_count())


def plancherel_sum(grid: GridSpec, spectrum: np.ndarray, weight=None) -> float:
    """h / N^n * sum(weight * |F|^2), the continuum L^2 pairing of the samples."""
    power = np.abs(spectrum) ** 2
    if weight is not None:
        power = power * weight
    return float(grid.cell_measure / grid.total_points * np.sum(power))


def spectral_tail_fraction(grid: GridSpec, spectrum: np.ndarray) -> float:
    """Share of spectral energy with |xi| above half the Nyquist wave number."""
    lat = lattice_for(grid)
    power = np.abs(spectrum) ** 2
    total = float(np.sum(power))
    if total == 0.0:
        return 0.0
    top = lat.squared_norm > (0.5 * lat.nyquist) ** 2
    return float(np.sum(power[top])) / total


def band_radius(grid: GridSpec, spectrum: np.ndarray, fraction: float = 0.999) -> float:
    """Smallest |xi| enclosing ``fraction`` of the spectral energy."""
    lat = lattice_for(grid)
    power = (np.abs(spectrum) ** 2).reshape(-1)
    total = power.sum()
    if total == 0.0:
        return 0.0
    k = lat.norm.reshape(-1)
    order = np.argsort(k, kind="stable")
    cumulative = np.cumsum(power[order])
    idx = int(np.searchsorted(cumulative, fraction * total))
    return float(k[order][min(idx, k.size - 1)])
