"""Uniform cell-centred grids on [-L, L)^n and fields sampled on them."""

from dataclasses import dataclass, field
from typing import Callable, Tuple

import numpy as np

from ..core.errors import NonFiniteFieldError, ParameterError


@dataclass(frozen=True)
class GridSpec:
    """``points`` cells per axis on [-half_width, half_width)^n.

    Cell centres sit at -L + (j + 1/2) * spacing, so no centre is the origin.
    """

    n: int
    points: int
    half_width: float

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError("grid dimension must be positive", tag="grid")
        if self.points < 8 or self.points & (self.points - 1):
            raise ParameterError(f"points per axis must be a power of two >= 8, got {self.points}", tag="grid")
        if not self.half_width > 0:
            raise ParameterError("half-width must be positive", tag="grid")
        object.__setattr__(self, "half_width", float(self.half_width))

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / self.points

    @property
    def cell_measure(self) -> float:
        return self.spacing ** self.n

    @property
    def total_points(self) -> int:
        return self.points ** self.n

    @property
    def volume(self) -> float:
        return (2.0 * self.half_width) ** self.n

    @property
    def shape(self) -> Tuple[int, ...]:
        return (self.points,) * self.n

    def axis(self) -> np.ndarray:
        return -self.half_width + (np.arange(self.points) + 0.5) * self.spacing

    def coordinates(self) -> Tuple[np.ndarray, ...]:
        """Broadcastable coordinate arrays, one per axis."""
        ax = self.axis()
        coords = []
        for i in range(self.n):
            shape = [1] * self.n
            shape[i] = self.points
            coords.append(ax.reshape(shape))
        return tuple(coords)

    def radius(self) -> np.ndarray:
        """|x| at every cell centre."""
        r2 = np.zeros(self.shape)
        for c in self.coordinates():
            r2 = r2 + c * c
        return np.sqrt(r2)

    def dilated(self, delta: float) -> "GridSpec":
        """Grid on which f(delta x) has the same samples as f on this grid."""
        return GridSpec(self.n, self.points, self.half_width / float(delta))

    def padded(self) -> "GridSpec":
        """Twice the points with the same spacing, for aliasing-free convolution."""
        return GridSpec(self.n, 2 * self.points, 2.0 * self.half_width)


@dataclass
class GridFunction:
    """Real or complex samples on a grid, stored with shape ``grid.shape``."""

    grid: GridSpec
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.asarray(self.values)
        if values.ndim == 1 and values.size == self.grid.total_points:
            values = values.reshape(self.grid.shape)  # row-major axis order
        if values.shape != self.grid.shape:
            raise ParameterError(f"values of shape {values.shape} do not fit grid {self.grid.shape}", tag="grid")
        self.values = values

    @classmethod
    def from_function(cls, grid: GridSpec, func: Callable[..., np.ndarray]) -> "GridFunction":
        """Sample ``func(*coordinates)`` at the cell centres."""
        return cls(grid, np.broadcast_to(func(*grid.coordinates()), grid.shape).copy())

    @classmethod
    def radial(cls, grid: GridSpec, profile: Callable[[np.ndarray], np.ndarray]) -> "GridFunction":
        return cls(grid, profile(grid.radius()))

    def require_finite(self) -> "GridFunction":
        if not np.all(np.isfinite(self.values)):
            raise NonFiniteFieldError("field contains non-finite values")
        return self

    def flat(self) -> np.ndarray:
        return self.values.reshape(-1)

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.values)

    def with_values(self, values: np.ndarray) -> "GridFunction":
        return GridFunction(self.grid, values)

    def l2_norm(self) -> float:
        return float(np.sqrt(self.grid.cell_measure * np.sum(np.abs(self.values) ** 2)))

    def lp_norm(self, p: float) -> float:
        """Discrete Lebesgue norm, computed directly from the samples."""
        if np.isinf(p):
            return float(np.max(np.abs(self.values)))
        return float((self.grid.cell_measure * np.sum(np.abs(self.values) ** p)) ** (1.0 / p))

    def matched_dilation(self, delta: float, exponent: float = 0.0) -> "GridFunction":
        """delta**exponent * f(delta x), represented exactly on the dilated grid."""
        return GridFunction(self.grid.dilated(delta), self.values * float(delta) ** exponent)

    def __add__(self, other: "GridFunction") -> "GridFunction":
        return self.with_values(self.values + other.values)

    def __sub__(self, other: "GridFunction") -> "GridFunction":
        return self.with_values(self.values - other.values)

    def __mul__(self, scalar) -> "GridFunction":
        return self.with_values(self.values * scalar)

    __rmul__ = __mul__
