"""Equation parameters, solver state and Picard settings."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from ..core.errors import ParameterError
from ..exponents.critical import ParameterPoint
from ..lorentz.grid import GridFunction, GridSpec
from ..spectral.operators import RieszOperator

logger = logging.getLogger(__name__)


@dataclass
class EquationParams:
    """Everything the right-hand side lambda (I_alpha * |x|^-b |u|^p) |x|^-b |u|^{p-2} u needs.

    The weight |x|^{-b} is sampled once at the cell centres, none of which is
    the origin, so it is finite everywhere.
    """

    point: ParameterPoint
    grid: GridSpec
    zero_mode: str = "annihilate"
    weight: np.ndarray = field(init=False, repr=False)
    riesz: RieszOperator = field(init=False, repr=False)

    def __post_init__(self):
        if self.point.p < 2:
            raise ParameterError(f"the solver needs p >= 2, got p = {self.point.p}", tag="power_at_least_two")
        if self.grid.n != self.point.n:
            raise ParameterError("grid dimension differs from the parameter point", tag="grid")
        self.weight = np.power(self.grid.radius(), -float(self.point.b))
        self.weight.setflags(write=False)
        self.riesz = RieszOperator(float(self.point.alpha), self.point.n, self.zero_mode)

    @property
    def lam(self) -> int:
        return self.point.lam

    @property
    def p(self) -> float:
        return float(self.point.p)

    @property
    def s(self) -> float:
        return float(self.point.s)

    @property
    def scaling_exponent(self) -> float:
        return float(self.point.scaling_exponent)

    def on_grid(self, grid: GridSpec) -> "EquationParams":
        return EquationParams(self.point, grid, self.zero_mode)

    @classmethod
    def from_config(cls, config) -> "EquationParams":
        """Build from a RunConfig (point fields plus points and half_width)."""
        point = ParameterPoint(config.n, config.s, config.alpha, config.b, lam=config.lam)
        grid = GridSpec(config.n, config.points, float(config.half_width))
        return cls(point, grid)


@dataclass
class SimState:
    """Field and time; ``mass0`` is the mass at the start of the run."""

    u: GridFunction
    t: float = 0.0
    mass0: Optional[float] = None

    def __post_init__(self):
        self.u.require_finite()
        if not self.u.is_complex:
            self.u = self.u.with_values(self.u.values.astype(np.complex128))
        if self.mass0 is None:
            self.mass0 = self.u.l2_norm() ** 2


@dataclass
class PicardConfig:
    """Horizon, node count and ball of the fixed-point iteration.

    ``ball_m`` and ``ball_n`` default to 2 C ||u0||_{H^s} and 2 epsilon,
    filled in by the contraction run.
    """

    horizon: float
    iteration_cap: int = 8
    nodes: int = 21
    epsilon: float = 0.1
    ball_m: Optional[float] = None
    ball_n: Optional[float] = None

    def __post_init__(self):
        if not self.horizon > 0:
            raise ParameterError("Picard horizon must be positive", tag="picard")
        if self.iteration_cap < 3:
            raise ParameterError("iteration cap must be at least 3", tag="picard")
        if self.nodes < 3 or self.nodes % 2 == 0:
            raise ParameterError("Picard node count must be odd and at least 3", tag="picard")

    @classmethod
    def from_config(cls, config) -> "PicardConfig":
        return cls(
            horizon=float(config.horizon),
            iteration_cap=config.iteration_cap,
            nodes=config.picard_nodes,
            epsilon=float(config.epsilon),
        )


def gaussian_data(grid: GridSpec, amplitude: float, width: float = 1.0, phase: Optional[Fraction] = None) -> GridFunction:
    """amplitude * exp(-|x|^2 / (2 width^2)), optionally times a plane-wave phase along the first axis."""
    r = grid.radius()
    values = amplitude * np.exp(-0.5 * (r / width) ** 2) + 0j
    if phase:
        values = values * np.exp(1j * float(phase) * grid.coordinates()[0])
    return GridFunction(grid, values)
