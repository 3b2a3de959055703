"""Fourier multipliers: fractional Laplacian, Bessel potential, free propagator and Riesz potential.

Transforms use the forward sign -i with wave numbers xi = 2 pi k / (2L), so the
symbol of (-Delta)^{s/2} is |xi|^s with no further constants.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Union

import numpy as np
from scipy.special import gamma

from ..core.errors import NonFiniteFieldError, ParameterError
from ..lorentz.grid import GridFunction, GridSpec
from .lattice import forward, inverse, lattice_for

logger = logging.getLogger(__name__)

Multiplier = Union[np.ndarray, Callable[[np.ndarray], np.ndarray]]

ZERO_MODE_POLICIES = ("annihilate", "regularize")


def _finite(f: GridFunction) -> None:
    if not np.all(np.isfinite(f.values)):
        raise NonFiniteFieldError("multiplier input contains non-finite values")


def multiplier_apply(f: GridFunction, m: Multiplier, real_symbol: bool = False) -> GridFunction:
    """Transform, multiply pointwise, transform back.

    Args:
        f: Input field
        m: Symbol array on the grid's lattice, or a callable of |xi|^2
        real_symbol: The symbol is real and even, so a real input stays real

    Returns:
        The filtered field
    """
    _finite(f)
    if callable(m):
        m = m(lattice_for(f.grid).squared_norm)
    out = inverse(forward(f.values) * m)
    if real_symbol and not f.is_complex:
        out = out.real
    return f.with_values(out)


def fractional_laplacian(f: GridFunction, s: float) -> GridFunction:
    """(-Delta)^{s/2} with symbol |xi|^s, s >= 0."""
    if s < 0:
        raise ParameterError("fractional_laplacian needs s >= 0; use riesz for negative orders", tag="order")
    return multiplier_apply(f, lambda k2: np.power(k2, 0.5 * s), real_symbol=True)


def bessel(f: GridFunction, s: float) -> GridFunction:
    """(1 - Delta)^{s/2} with symbol (1 + |xi|^2)^{s/2}."""
    return multiplier_apply(f, lambda k2: np.power(1.0 + k2, 0.5 * s), real_symbol=True)


def propagator_symbol(grid: GridSpec, t: float) -> np.ndarray:
    return np.exp(-1j * t * lattice_for(grid).squared_norm)


def propagator(f: GridFunction, t: float) -> GridFunction:
    """Free Schrodinger flow e^{it Delta}: symbol exp(-i t |xi|^2)."""
    return multiplier_apply(f, propagator_symbol(f.grid, t))


def riesz_constant(n: int, alpha: float) -> float:
    """c_{n,alpha} = Gamma((n - alpha)/2) / (Gamma(alpha/2) pi^{n/2} 2^alpha)."""
    return float(gamma(0.5 * (n - alpha)) / (gamma(0.5 * alpha) * math.pi ** (0.5 * n) * 2.0 ** alpha))


@dataclass(frozen=True)
class RieszOperator:
    """I_alpha = convolution with c_{n,alpha} |x|^{alpha - n}, symbol |xi|^{-alpha}.

    The input is zero-padded to twice the points per axis before the
    transform and cropped afterwards. With ``"annihilate"`` the xi = 0 mode is
    dropped and outputs on the padded box are mean-free; ``"regularize"``
    replaces |xi| at the origin by the smallest nonzero wave number.
    """

    alpha: float
    n: int
    zero_mode: str = "annihilate"

    def __post_init__(self):
        if not 0 < self.alpha < self.n:
            raise ParameterError(f"Riesz order must satisfy 0 < alpha < n, got {self.alpha}", tag="riesz_order")
        if self.zero_mode not in ZERO_MODE_POLICIES:
            raise ParameterError(f"unknown zero-mode policy {self.zero_mode!r}", tag="riesz_zero_mode")

    @property
    def constant(self) -> float:
        return riesz_constant(self.n, self.alpha)

    def symbol(self, grid: GridSpec) -> np.ndarray:
        """|xi|^{-alpha} on the padded lattice of ``grid``."""
        k2 = lattice_for(grid.padded()).squared_norm
        out = np.empty_like(k2)
        nonzero = k2 > 0
        out[nonzero] = np.power(k2[nonzero], -0.5 * self.alpha)
        if self.zero_mode == "annihilate":
            out[~nonzero] = 0.0
        else:
            kmin = 2.0 * math.pi / (2.0 * grid.padded().half_width)
            out[~nonzero] = kmin ** (-self.alpha)
        return out

    def apply_array(self, values: np.ndarray, grid: GridSpec) -> np.ndarray:
        """I_alpha of raw samples; returns the complex result on the original grid."""
        if grid.n != self.n:
            raise ParameterError("grid dimension does not match the operator", tag="riesz_order")
        padded = np.zeros((2 * grid.points,) * grid.n, dtype=np.result_type(values, np.float64))
        crop = (slice(0, grid.points),) * grid.n
        padded[crop] = values
        out = inverse(forward(padded) * _symbol_cached(self, grid))
        return out[crop]

    def apply(self, f: GridFunction) -> GridFunction:
        _finite(f)
        return f.with_values(self.apply_array(f.values, f.grid))


@lru_cache(maxsize=16)
def _symbol_cached(op: RieszOperator, grid: GridSpec) -> np.ndarray:
    sym = op.symbol(grid)
    sym.setflags(write=False)
    return sym


def riesz(f: GridFunction, alpha: float, zero_mode: str = "annihilate") -> GridFunction:
    """I_alpha f on the padded grid; complex output (imaginary part is round-off for real f)."""
    return RieszOperator(float(alpha), f.grid.n, zero_mode).apply(f)
