"""Sobolev norms by Plancherel, Sobolev-Lorentz norms and space-time norms of trajectories."""

import logging
import math
from dataclasses import asdict, dataclass
from typing import Protocol, Sequence

import numpy as np
from scipy.integrate import trapezoid

from ..core.errors import ParameterError
from ..lorentz.grid import GridFunction
from ..lorentz.norms import lorentz_norm
from .lattice import forward, lattice_for, plancherel_sum
from .operators import bessel, fractional_laplacian

logger = logging.getLogger(__name__)


def sobolev_norm(f: GridFunction, s: float) -> float:
    """||f||_{H^s} = ||(1 + |xi|^2)^{s/2} f^||."""
    k2 = lattice_for(f.grid).squared_norm
    return math.sqrt(plancherel_sum(f.grid, forward(f.values), np.power(1.0 + k2, s)))


def homogeneous_sobolev_norm(f: GridFunction, s: float) -> float:
    """||f||_{H-dot^s} = || |xi|^s f^ ||."""
    k2 = lattice_for(f.grid).squared_norm
    return math.sqrt(plancherel_sum(f.grid, forward(f.values), np.power(k2, s)))


def sobolev_lorentz_norm(f: GridFunction, s: float, r: float) -> float:
    """||f||_{W^s_{r,2}} = ||(1 - Delta)^{s/2} f||_{L^{r,2}}."""
    g = f if s == 0 else bessel(f, s)
    return lorentz_norm(g, r, 2)


@dataclass
class NormSuite:
    """Every spatial norm of one field at regularity s and Lorentz index r."""

    h_s: float
    hdot_s: float
    l2: float
    lorentz: float
    lorentz_derivative: float
    sobolev_lorentz: float

    @property
    def equivalence_ratio(self) -> float:
        """||f||_{W^s_{r,2}} / max(||f||_{L^{r,2}}, ||(-Delta)^{s/2} f||_{L^{r,2}})."""
        return self.sobolev_lorentz / max(self.lorentz, self.lorentz_derivative)

    def to_dict(self) -> dict:
        data = asdict(self)
        data["equivalence_ratio"] = self.equivalence_ratio
        return data


def norm_suite(f: GridFunction, s: float, r: float) -> NormSuite:
    """H^s, H-dot^s, L^{r,2}, (-Delta)^{s/2} in L^{r,2} and W^s_{r,2} of ``f``."""
    if s < 0:
        raise ParameterError("norm_suite needs s >= 0", tag="regularity")
    if not 1 < r < math.inf:
        raise ParameterError("Lorentz index r must lie in (1, inf)", tag="lorentz_exponent")
    f.require_finite()
    derivative = f if s == 0 else fractional_laplacian(f, s)
    return NormSuite(
        h_s=sobolev_norm(f, s),
        hdot_s=homogeneous_sobolev_norm(f, s),
        l2=f.l2_norm(),
        lorentz=lorentz_norm(f, r, 2),
        lorentz_derivative=lorentz_norm(derivative, r, 2),
        sobolev_lorentz=sobolev_lorentz_norm(f, s, r),
    )


class SampledTrajectory(Protocol):
    times: Sequence[float]
    fields: Sequence[GridFunction]


def time_norm(times: Sequence[float], values: Sequence[float], q: float) -> float:
    """(trapezoid of values^q)^{1/q}; q = inf gives the max.

    A single sample has no time extent, so only q = inf accepts it.
    """
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise ParameterError("empty trajectory", tag="trajectory")
    if math.isinf(q):
        return float(values.max())
    if q < 1:
        raise ParameterError("time exponent q must be at least 1", tag="time_exponent")
    if values.size == 1:
        raise ParameterError("a finite time exponent needs at least two samples", tag="trajectory")
    return float(trapezoid(values ** q, np.asarray(times, dtype=float))) ** (1.0 / q)


def spacetime_norm(trajectory: SampledTrajectory, q: float, r: float, s: float = 0.0) -> float:
    """||u||_{L^q_t W^s_{r,2}} over the sampled times (composite trapezoid in t).

    Args:
        trajectory: Any object with ``times`` and ``fields``
        q: Time exponent, >= 1 or inf
        r: Spatial Lorentz index in (1, inf)
        s: Bessel regularity; 0 gives L^{r,2}
    """
    times = list(trajectory.times)
    fields = list(trajectory.fields)
    if not fields:
        raise ParameterError("empty trajectory", tag="trajectory")
    if len(times) != len(fields):
        raise ParameterError("times and fields differ in length", tag="trajectory")
    spatial = [sobolev_lorentz_norm(u, s, r) for u in fields]
    return time_norm(times, spatial, q)
