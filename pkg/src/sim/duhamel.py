"""Duhamel map on a time grid and the Picard iteration built on it."""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np
from scipy.integrate import cumulative_trapezoid

from ..core.checks import Check
from ..core.manifest import TOLERANCES
from ..core.monitoring import PerformanceMonitor, ledger
from ..lorentz.grid import GridFunction
from ..lorentz.norms import lorentz_norm
from ..spectral.lattice import forward, inverse, lattice_for
from ..spectral.norms import sobolev_lorentz_norm, sobolev_norm, time_norm
from .integrator import simulate
from .nonlinearity import potential_array
from .params import EquationParams, PicardConfig

logger = logging.getLogger(__name__)

# Iterations stop once successive iterates agree to this share of the free flow
CONVERGENCE_FLOOR = 1e-12
DIVERGENCE_RUN = 3


def duhamel_integral(times: np.ndarray, forcing: Sequence[np.ndarray], grid) -> np.ndarray:
    """S_j = integral over [0, t_j] of exp(i tau |xi|^2) F^(tau) d tau, trapezoid in tau.

    Returns the spectra S_j stacked along the first axis.
    """
    times = np.asarray(times, dtype=float)
    k2 = lattice_for(grid).squared_norm
    transported = np.stack([np.exp(1j * t * k2) * forward(f) for t, f in zip(times, forcing)])
    return cumulative_trapezoid(transported, times, axis=0, initial=0)


def duhamel_map(
    iterate: Sequence[np.ndarray],
    u0: GridFunction,
    params: EquationParams,
    times: np.ndarray,
) -> List[np.ndarray]:
    """Phi(u)(t_j) = e^{i t_j Delta} u0 - i integral of e^{i(t_j - tau) Delta} F(u(tau)) d tau.

    ``iterate`` holds u at every node; F carries lam, so lam = 0 returns the free
    flow exactly.
    """
    k2 = lattice_for(params.grid).squared_norm
    forcing = [potential_array(u, params) * u for u in iterate]
    integral = duhamel_integral(times, forcing, params.grid)
    u0_hat = forward(u0.values)
    return [inverse(np.exp(-1j * t * k2) * (u0_hat - 1j * s)) for t, s in zip(times, integral)]


def free_flow(u0: GridFunction, params: EquationParams, times: np.ndarray) -> List[np.ndarray]:
    """e^{it Delta} u0 at the nodes, on the same transform path as ``duhamel_map`` (lam = 0 gives d = 0 exactly)."""
    k2 = lattice_for(params.grid).squared_norm
    u0_hat = forward(u0.values)
    return [inverse(np.exp(-1j * t * k2) * u0_hat) for t in times]


def _distance(a: Sequence[np.ndarray], b: Sequence[np.ndarray], times, q: float, r: float, grid) -> float:
    """||a - b|| in L^q_t L^{r,2}_x over the nodes."""
    spatial = [lorentz_norm(GridFunction(grid, x - y), r, 2) for x, y in zip(a, b)]
    return time_norm(times, spatial, q)


def _spacetime(fields: Sequence[np.ndarray], times, q: float, r: float, s: float, grid) -> float:
    return time_norm(times, [sobolev_lorentz_norm(GridFunction(grid, u), s, r) for u in fields], q)


@dataclass
class PicardReport:
    """Distances between successive iterates, ball membership and solver agreement."""

    horizon: float
    q: float
    r: float
    distances: List[float] = field(default_factory=list)
    converged: bool = False
    diverged: bool = False
    strichartz_constant: float = math.nan
    ball_m: float = math.nan
    ball_n: float = math.nan
    epsilon: float = math.nan
    free_norm: float = math.nan
    data_norm: float = math.nan
    in_ball: bool = False
    quadrature_error: float = math.nan
    simulate_distance: Optional[float] = None
    fixed_point: List[np.ndarray] = field(default_factory=list, repr=False)
    times: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def ratios(self) -> List[float]:
        return [b / a for a, b in zip(self.distances, self.distances[1:]) if a > 0]

    @property
    def iterations(self) -> int:
        return len(self.distances)

    @property
    def smallness(self) -> bool:
        return self.free_norm <= self.epsilon

    def contracts(self, by: int = 3, below: float = TOLERANCES["contraction_ratio"]) -> bool:
        """Some ratio d_{k+1}/d_k with k < ``by`` is below ``below``, or the iteration converged first."""
        early = self.ratios[:by]
        if any(x < below for x in early):
            return True
        return self.converged and len(self.distances) <= by + 1 and not self.diverged

    def checks(self) -> List[Check]:
        out = [
            Check.from_bool("picard.contraction", self.contracts(), measured=self.ratios,
                            tolerance=TOLERANCES["contraction_ratio"]),
            Check.from_bool("picard.no_divergence", not self.diverged, measured=self.distances),
            Check.from_bool("picard.smallness", self.smallness, measured=self.free_norm, tolerance=self.epsilon),
            Check.from_bool("picard.ball", self.in_ball, measured={"M": self.ball_m, "N": self.ball_n}),
        ]
        if self.simulate_distance is not None:
            tol = max(TOLERANCES["picard_vs_simulate"], self.quadrature_error)
            out.append(Check.from_bool("picard.fixed_point_vs_simulate", self.simulate_distance < tol,
                                       measured=self.simulate_distance, tolerance=tol))
        return out

    def to_rows(self) -> List[dict]:
        ratios = [None] + self.ratios
        return [{"k": k, "distance": d, "ratio": ratios[k] if k < len(ratios) else None}
                for k, d in enumerate(self.distances)]

    def to_dict(self) -> dict:
        return {
            "horizon": self.horizon,
            "q": self.q,
            "r": self.r,
            "distances": self.distances,
            "ratios": self.ratios,
            "converged": self.converged,
            "diverged": self.diverged,
            "strichartz_constant": self.strichartz_constant,
            "ball_m": self.ball_m,
            "ball_n": self.ball_n,
            "epsilon": self.epsilon,
            "free_norm": self.free_norm,
            "in_ball": self.in_ball,
            "quadrature_error": self.quadrature_error,
            "simulate_distance": self.simulate_distance,
        }


def _quadrature_error(iterate, u0, params, times) -> float:
    """Richardson estimate at t = T: (Phi on all nodes - Phi on every other node) / 3, relative."""
    full = duhamel_map(iterate, u0, params, times)[-1]
    coarse = duhamel_map(iterate[::2], u0, params, times[::2])[-1]
    scale = np.linalg.norm(full)
    return float(np.linalg.norm(full - coarse) / 3.0 / scale) if scale > 0 else 0.0


def picard_contraction(
    u0: GridFunction,
    config: PicardConfig,
    params: EquationParams,
    q: float,
    r: float,
    compare_dt: Optional[float] = None,
) -> PicardReport:
    """Iterate u^{k+1} = Phi(u^k) from the free flow and measure the contraction.

    Args:
        u0: Initial data
        config: Horizon, iteration cap, node count and smallness target
        params: Equation parameters
        q: Time exponent of the metric
        r: Lorentz index of the metric
        compare_dt: If given, also run the Strang solver with this step and
            report its distance to the fixed point at t = T

    Returns:
        PicardReport with distances d_k = d(u^{k+1}, u^k)
    """
    times = np.linspace(0.0, config.horizon, config.nodes)
    grid = params.grid
    s = params.s
    report = PicardReport(horizon=config.horizon, q=q, r=r, epsilon=config.epsilon, times=times)

    with PerformanceMonitor("picard", {"nodes": str(config.nodes)}):
        current = free_flow(u0, params, times)
        report.data_norm = sobolev_norm(u0, s)
        report.free_norm = _spacetime(current, times, q, r, s, grid)
        sup_norm = max(sobolev_norm(GridFunction(grid, u), s) for u in current)
        report.strichartz_constant = max(sup_norm, report.free_norm) / report.data_norm if report.data_norm else 1.0
        report.ball_m = config.ball_m if config.ball_m is not None else 2.0 * report.strichartz_constant * report.data_norm
        report.ball_n = config.ball_n if config.ball_n is not None else 2.0 * config.epsilon

        scale = _distance(current, [np.zeros_like(u) for u in current], times, q, r, grid)
        floor = CONVERGENCE_FLOOR * scale
        in_ball = True
        rising = 0
        for k in range(config.iteration_cap):
            following = duhamel_map(current, u0, params, times)
            d = _distance(following, current, times, q, r, grid)
            report.distances.append(d)
            ledger.count("picard.iterations")
            current = following
            sup_h = max(sobolev_norm(GridFunction(grid, u), s) for u in current)
            in_ball = in_ball and sup_h <= report.ball_m and _spacetime(current, times, q, r, s, grid) <= report.ball_n
            if d <= floor:
                report.converged = True
                break
            if k > 0 and report.distances[-2] > 0 and d > report.distances[-2]:
                rising += 1
                if rising >= DIVERGENCE_RUN:
                    report.diverged = True
                    logger.warning(
                        "Picard iteration diverges at T = %g, ||u0||_H^s = %.3e", config.horizon, report.data_norm
                    )
                    break
            else:
                rising = 0
        report.in_ball = in_ball
        report.fixed_point = current
        report.quadrature_error = _quadrature_error(current, u0, params, times)

    if compare_dt is not None:
        trajectory = simulate(u0, compare_dt, config.horizon, params, save_every=10 ** 9, diagnostics=())
        solver = trajectory.final.values
        report.simulate_distance = float(np.linalg.norm(solver - current[-1]) / np.linalg.norm(solver))

    logger.info("Picard: %d iterations, distances %s", report.iterations, ["%.3e" % d for d in report.distances])
    return report
