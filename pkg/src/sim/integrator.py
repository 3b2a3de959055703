"""Strang-split time stepping.

One step is a half kick exp(-i dt/2 V(u)), the free drift exp(-i dt |xi|^2)
and a second half kick. V depends only on |u| and kicks are pure phases, so
the potential after a step is the potential before the next one.
"""

import logging
import math
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from ..core.errors import NumericalBlowupError, ParameterError, ResolutionError
from ..core.manifest import SPECTRAL_TAIL_LIMIT
from ..core.monitoring import PerformanceMonitor, ledger
from ..lorentz.grid import GridFunction
from ..lorentz.norms import lorentz_norm
from ..spectral.lattice import forward, inverse, spectral_tail_fraction
from ..spectral.norms import homogeneous_sobolev_norm, sobolev_lorentz_norm, sobolev_norm
from ..spectral.operators import propagator_symbol
from .nonlinearity import energy, mass, potential_array
from .params import EquationParams, SimState
from .trajectory import DIAGNOSTICS, Trajectory

logger = logging.getLogger(__name__)


def _kick(values: np.ndarray, v: np.ndarray, tau: float) -> np.ndarray:
    return values * np.exp(-1j * tau * v)


def _strang_step(
    values: np.ndarray,
    dt: float,
    params: EquationParams,
    v_start: np.ndarray,
    drift: Optional[np.ndarray] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """Advance raw samples by dt; returns the new samples and their potential."""
    if drift is None:
        drift = propagator_symbol(params.grid, dt)
    half = _kick(values, v_start, 0.5 * dt)
    drifted = inverse(forward(half) * drift)
    v_end = potential_array(drifted, params)
    return _kick(drifted, v_end, 0.5 * dt), v_end


def strang_step(state: SimState, dt: float, params: EquationParams) -> SimState:
    """One Strang step; a negative dt steps backwards exactly."""
    values, _ = _strang_step(state.u.values, dt, params, potential_array(state.u.values, params))
    return SimState(state.u.with_values(values), state.t + dt, state.mass0)


def check_resolution(u: GridFunction, t: float) -> float:
    """Spectral tail share of ``u``; raises above the manifest limit."""
    tail = spectral_tail_fraction(u.grid, forward(u.values))
    if tail > SPECTRAL_TAIL_LIMIT:
        raise ResolutionError(
            f"{tail:.1%} of the spectral energy sits in the top octave at t = {t:.6g}", tag="spectral_tail"
        )
    return tail


def _require_finite(values: np.ndarray, t: float) -> None:
    if not np.all(np.isfinite(values)):
        raise NumericalBlowupError(f"non-finite field at t = {t:.6g}", tag="blowup")


def evolve(state: SimState, dt: float, steps: int, params: EquationParams) -> SimState:
    """``steps`` Strang steps of size dt without sampling."""
    values = state.u.values
    v = potential_array(values, params)
    drift = propagator_symbol(params.grid, dt)
    t = state.t
    for _ in range(steps):
        values, v = _strang_step(values, dt, params, v, drift)
        t += dt
        _require_finite(values, t)
    return SimState(state.u.with_values(values), t, state.mass0)


def measure(u: GridFunction, names: Sequence[str], params: EquationParams, r: Optional[float] = None) -> dict:
    """Evaluate the named diagnostics of one field."""
    out = {}
    for name in names:
        if name == "mass":
            out[name] = mass(u)
        elif name == "energy":
            out[name] = energy(u, params)
        elif name == "hdot_s":
            out[name] = homogeneous_sobolev_norm(u, params.s)
        elif name == "h_s":
            out[name] = sobolev_norm(u, params.s)
        elif name == "lorentz":
            out[name] = lorentz_norm(u, r, 2)
        elif name == "sobolev_lorentz":
            out[name] = sobolev_lorentz_norm(u, params.s, r)
    return out


def _validate_diagnostics(names: Iterable[str], r: Optional[float]) -> list:
    names = list(names)
    unknown = [n for n in names if n not in DIAGNOSTICS]
    if unknown:
        raise ParameterError(f"unknown diagnostics {unknown}; expected from {', '.join(DIAGNOSTICS)}", tag="diagnostics")
    if r is None and any(n in ("lorentz", "sobolev_lorentz") for n in names):
        raise ParameterError("Lorentz diagnostics need a spatial index r", tag="diagnostics")
    return names


def simulate(
    u0: GridFunction,
    dt: float,
    horizon: float,
    params: EquationParams,
    save_every: int = 1,
    diagnostics: Sequence[str] = ("mass", "energy"),
    r: Optional[float] = None,
    keep_fields: bool = True,
) -> Trajectory:
    """Integrate from t = 0 to ``horizon`` and sample every ``save_every`` steps.

    The last step is always sampled. If dt does not divide the horizon it is
    shrunk to the nearest step size that does.

    Args:
        u0: Initial data on ``params.grid``
        dt: Step size, positive
        horizon: Final time, positive
        params: Equation parameters
        save_every: Steps between samples
        diagnostics: Columns to record, from ``DIAGNOSTICS``
        r: Lorentz index for the ``lorentz`` and ``sobolev_lorentz`` columns
        keep_fields: Store the sampled fields

    Returns:
        The sampled trajectory

    Raises:
        ResolutionError: Spectral tail above the manifest limit at a sample
        NumericalBlowupError: Non-finite values after any step
    """
    if not dt > 0 or not horizon > 0:
        raise ParameterError("dt and horizon must be positive", tag="time_step")
    if save_every < 1:
        raise ParameterError("save_every must be at least 1", tag="time_step")
    if u0.grid != params.grid:
        raise ParameterError("initial data and parameters live on different grids", tag="grid")
    names = _validate_diagnostics(diagnostics, r)

    steps = max(1, int(round(horizon / dt)))
    if not math.isclose(steps * dt, horizon, rel_tol=1e-9):
        logger.warning("dt = %g does not divide T = %g; using %g", dt, horizon, horizon / steps)
    dt = horizon / steps

    state = SimState(u0)
    trajectory = Trajectory(columns=names)

    def sample(values: np.ndarray, t: float) -> None:
        u = u0.with_values(values)
        check_resolution(u, t)
        trajectory.record(t, u if keep_fields else None, measure(u, names, params, r))

    values = state.u.values
    sample(values, 0.0)
    v = potential_array(values, params)
    drift = propagator_symbol(params.grid, dt)
    progress_every = max(1, steps // 10)

    with PerformanceMonitor("simulate", {"steps": str(steps)}):
        for k in range(1, steps + 1):
            values, v = _strang_step(values, dt, params, v, drift)
            t = k * dt
            _require_finite(values, t)
            ledger.count("simulate.steps")
            if k % save_every == 0 or k == steps:
                sample(values, t)
            if k % progress_every == 0:
                logger.info("simulate: step %d/%d (t = %.4g)", k, steps, t)

    if "mass" in names:
        logger.info("Relative mass drift %.3e over %d steps", trajectory.relative_drift("mass"), steps)
    return trajectory
