"""Scaling, continuous dependence, scattering and Strichartz diagnostics of the flow."""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Union

import numpy as np

from ..core.checks import Check, CheckStatus
from ..core.errors import DualPairError, ParameterError
from ..core.manifest import DILATION_LADDER, TOLERANCES
from ..exponents.duality import AdmissiblePair
from ..lorentz.grid import GridFunction, GridSpec
from ..lorentz.harness import family_member
from ..lorentz.norms import lorentz_norm
from ..spectral.lattice import band_radius, forward, inverse, lattice_for
from ..spectral.norms import homogeneous_sobolev_norm, sobolev_lorentz_norm, sobolev_norm, time_norm
from ..spectral.operators import propagator
from .duhamel import duhamel_integral
from .integrator import check_resolution, evolve, simulate
from .params import EquationParams, SimState

logger = logging.getLogger(__name__)

Exponent = Union[int, float, Fraction, str, None]


def _relative_gap(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0.0 else abs(a - b) / scale


def _spread(values: Sequence[float]) -> float:
    lo, hi = min(values), max(values)
    return hi / lo - 1.0 if lo > 0 else math.inf


def boundary_mass_fraction(u: GridFunction, layer: Optional[float] = None) -> float:
    """Share of the mass within ``layer`` (default L/8) of the box faces."""
    grid = u.grid
    layer = grid.half_width / 8.0 if layer is None else layer
    near = np.zeros(grid.shape, dtype=bool)
    for c in grid.coordinates():
        near = near | (np.abs(c) > grid.half_width - layer)
    density = np.abs(u.values) ** 2
    total = float(np.sum(density))
    return float(np.sum(density[near])) / total if total > 0 else 0.0


# ---------------------------------------------------------------- scaling


def _power_of_two(delta) -> Fraction:
    value = Fraction(delta)
    num, den = value.numerator, value.denominator
    if value <= 0 or num & (num - 1) or den & (den - 1) or (num != 1 and den != 1):
        raise ParameterError(f"dilation must be a power of two, got {delta}", tag="dilation")
    return value


@dataclass
class ScalingReport:
    delta: Fraction
    time: float
    critical_norm_gap: float
    field_mismatch: float

    def checks(self) -> List[Check]:
        return [
            Check.from_bool("scaling.critical_norm", self.critical_norm_gap <= TOLERANCES["scaling_norm"],
                            measured=self.critical_norm_gap, tolerance=TOLERANCES["scaling_norm"]),
            Check.from_bool("scaling.field", self.field_mismatch <= TOLERANCES["scaling_field"],
                            measured=self.field_mismatch, tolerance=TOLERANCES["scaling_field"],
                            metadata={"delta": str(self.delta), "t": self.time}),
        ]

    def to_dict(self) -> dict:
        return {"delta": str(self.delta), "time": self.time,
                "critical_norm_gap": self.critical_norm_gap, "field_mismatch": self.field_mismatch}


def scaling_covariance_check(u0: GridFunction, delta, params: EquationParams, t: float, dt: float) -> ScalingReport:
    """Compare u_delta(x, t) with delta^e u(delta x, delta^2 t) on matched grids.

    The original run uses step dt * delta^2 so both runs take the same steps.

    Raises:
        ParameterError: ``delta`` is not a power of two
    """
    delta = _power_of_two(delta)
    d = float(delta)
    e = params.scaling_exponent
    dilated0 = u0.matched_dilation(d, exponent=e)
    dilated_params = params.on_grid(dilated0.grid)

    s_c = float(params.point.s_c)
    norm_gap = _relative_gap(homogeneous_sobolev_norm(dilated0, s_c), homogeneous_sobolev_norm(u0, s_c))

    original = simulate(u0, dt * d * d, t * d * d, params, save_every=10 ** 9, diagnostics=()).final
    rescaled = simulate(dilated0, dt, t, dilated_params, save_every=10 ** 9, diagnostics=()).final
    expected = original.values * d ** e
    mismatch = float(np.linalg.norm(rescaled.values - expected) / np.linalg.norm(expected))
    logger.info("Scaling check delta = %s: field mismatch %.3e, critical norm gap %.3e", delta, mismatch, norm_gap)
    return ScalingReport(delta, t, norm_gap, mismatch)


# ---------------------------------------------------------------- dependence


def perturbation_direction(grid: GridSpec, s: float, seed: int = 0) -> GridFunction:
    """Seeded band-limited field under a Gaussian envelope, normalised in H^s."""
    base = family_member("band_limited", grid, seed)
    r = grid.radius()
    envelope = np.exp(-0.5 * (r / (grid.half_width / 4.0)) ** 2)
    phi = base.with_values(base.values * envelope + 0j)
    return phi * (1.0 / sobolev_norm(phi, s))


def trajectory_distance(a, b, q: float, r: float) -> float:
    """||u - v|| in L^q_t L^{r,2}_x over matching samples."""
    spatial = [lorentz_norm(x - y, r, 2) for x, y in zip(a.fields, b.fields)]
    return time_norm(a.times, spatial, q)


@dataclass
class DependenceReport:
    sizes: List[float]
    distances: List[float]
    lam: int

    @property
    def ratios(self) -> List[float]:
        return [d / e for d, e in zip(self.distances, self.sizes)]

    @property
    def spread(self) -> float:
        ratios = self.ratios
        return max(ratios) / min(ratios) if min(ratios) > 0 else math.inf

    def checks(self) -> List[Check]:
        finite = all(math.isfinite(x) for x in self.ratios)
        tol = TOLERANCES["dependence_spread"]
        return [
            Check.from_bool("depend.finite", finite, measured=self.ratios),
            Check.from_bool("depend.lipschitz_stable", finite and self.spread <= tol, measured=self.spread,
                            tolerance=tol),
        ]

    def to_rows(self) -> List[dict]:
        return [{"epsilon": e, "distance": d, "ratio": d / e} for e, d in zip(self.sizes, self.distances)]

    def to_dict(self) -> dict:
        return {"lam": self.lam, "sizes": self.sizes, "distances": self.distances, "ratios": self.ratios}


def continuous_dependence_check(
    u0: GridFunction,
    sizes: Sequence[float],
    params: EquationParams,
    horizon: float,
    dt: float,
    q: float,
    r: float,
    nodes: int = 21,
    seed: int = 0,
) -> DependenceReport:
    """Ratio d(u, v) / ||u0 - v0||_{H^s} for v0 = u0 + eps phi over a ladder of eps."""
    if any(not e > 0 for e in sizes):
        raise ParameterError("perturbation sizes must be positive", tag="perturbation")
    steps = max(1, int(round(horizon / dt)))
    save_every = max(1, steps // (nodes - 1))
    phi = perturbation_direction(params.grid, params.s, seed)
    reference = simulate(u0, dt, horizon, params, save_every=save_every, diagnostics=())
    distances = []
    for eps in sizes:
        perturbed = simulate(u0 + phi * float(eps), dt, horizon, params, save_every=save_every, diagnostics=())
        distances.append(trajectory_distance(reference, perturbed, q, r))
    report = DependenceReport([float(e) for e in sizes], distances, params.lam)
    logger.info("Dependence ratios (lam = %d): %s", params.lam, ["%.4g" % x for x in report.ratios])
    return report


# ---------------------------------------------------------------- scattering


@dataclass
class ScatterReport:
    """Cauchy differences of e^{-it Delta} u(t) at checkpoints and the residuals of the extracted state."""

    times: List[float]
    cauchy: List[float]
    residuals: List[float]
    state: GridFunction = field(repr=False)
    horizon_cap: float = math.inf
    horizon_limited: bool = False
    boundary_fractions: List[float] = field(default_factory=list)

    @property
    def decay_ratios(self) -> List[float]:
        return [a / b if b > 0 else math.inf for a, b in zip(self.cauchy, self.cauchy[1:])]

    @property
    def decay_evaluated(self) -> bool:
        """A decay ratio needs two Cauchy differences, so three checkpoints."""
        return len(self.cauchy) >= 2

    @property
    def decays(self) -> bool:
        """Every doubling of the checkpoint time at least halves the Cauchy difference."""
        if not self.decay_evaluated:
            return False
        return all(x >= TOLERANCES["scatter_decay"] for x in self.decay_ratios)

    def checks(self, lam: int, data_norm: float) -> List[Check]:
        finite = all(math.isfinite(x) for x in self.cauchy + self.residuals)
        out = [Check.from_bool("scatter.finite", finite, measured=self.cauchy)]
        if lam == 0:
            worst = max(self.cauchy, default=0.0)
            tol = TOLERANCES["free_control"] * data_norm
            out.append(Check.from_bool("scatter.free_control", worst <= tol, measured=worst, tolerance=tol))
        elif not self.decay_evaluated:
            out.append(Check("scatter.decay", CheckStatus.FAIL, tolerance=TOLERANCES["scatter_decay"],
                             message=f"not evaluated: {len(self.times)} checkpoints inside the horizon, need 3"))
        else:
            out.append(Check.from_bool("scatter.decay", self.decays, measured=self.decay_ratios,
                                       tolerance=TOLERANCES["scatter_decay"]))
        out.append(Check.from_bool("scatter.within_horizon", not self.horizon_limited,
                                   measured=self.boundary_fractions, tolerance=TOLERANCES["boundary_mass"],
                                   metadata={"horizon_cap": self.horizon_cap}))
        return out

    def to_rows(self) -> List[dict]:
        cauchy = self.cauchy + [None]
        return [{"t": t, "cauchy": c, "residual": rho, "boundary_mass": b}
                for t, c, rho, b in zip(self.times, cauchy, self.residuals, self.boundary_fractions)]

    def to_dict(self) -> dict:
        return {
            "times": self.times,
            "cauchy": self.cauchy,
            "residuals": self.residuals,
            "decay_ratios": self.decay_ratios,
            "horizon_cap": self.horizon_cap,
            "horizon_limited": self.horizon_limited,
        }


def scattering_horizon(u: GridFunction) -> float:
    """L / (4 * group speed) for the box side L and group speed 2 xi of the 99.9% energy band.

    The fastest resolved wave travels a quarter of the box, half the distance
    from the centre to a face, before the horizon.
    """
    xi = band_radius(u.grid, forward(u.values))
    side = 2.0 * u.grid.half_width
    return side / (4.0 * 2.0 * xi) if xi > 0 else math.inf


def scattering_diagnostic(
    u0: GridFunction,
    params: EquationParams,
    checkpoints: int = 4,
    first_checkpoint: float = 0.125,
    dt: float = 1e-3,
) -> ScatterReport:
    """Track w_t = e^{-it Delta} u(t) at t_k = t_0 2^k up to the recurrence horizon."""
    if checkpoints < 2:
        raise ParameterError("scattering needs at least two checkpoints", tag="checkpoints")
    s = params.s
    cap = scattering_horizon(u0)
    times = [first_checkpoint * 2 ** k for k in range(checkpoints)]
    limited = False
    inside = [t for t in times if t <= cap]
    if len(inside) < len(times):
        limited = True
        logger.warning("Scattering checkpoints beyond the recurrence horizon %.4g dropped", cap)
        times = inside if len(inside) >= 2 else times[:2]

    state = SimState(u0)
    fields, fractions = [], []
    for t in times:
        steps = max(1, int(round((t - state.t) / dt)))
        state = evolve(state, (t - state.t) / steps, steps, params)
        check_resolution(state.u, t)
        fields.append(state.u)
        fractions.append(boundary_mass_fraction(state.u))
    if max(fractions) > TOLERANCES["boundary_mass"]:
        limited = True
        logger.warning("Mass reached the box boundary (%.2e); scattering report is horizon-limited", max(fractions))

    profiles = [propagator(u, -t) for u, t in zip(fields, times)]
    cauchy = [sobolev_norm(b - a, s) for a, b in zip(profiles, profiles[1:])]
    state_at_infinity = profiles[-1]
    residuals = [sobolev_norm(u - propagator(state_at_infinity, t), s) for u, t in zip(fields, times)]
    return ScatterReport(times, cauchy, residuals, state_at_infinity, cap, limited, fractions)


# ---------------------------------------------------------------- Strichartz


def _exponent(value: Exponent) -> Optional[Fraction]:
    if value is None or (isinstance(value, str) and value.strip().lower() in ("inf", "infinity")):
        return None
    if isinstance(value, float):
        return None if math.isinf(value) else Fraction(value)
    return Fraction(value)


def _dual(x: Optional[Fraction]) -> float:
    """Hölder conjugate; inf maps to 1."""
    if x is None:
        return 1.0
    return float(x / (x - 1)) if x != 1 else math.inf


@dataclass
class StrichartzReport:
    q: Optional[Fraction]
    r: Fraction
    s: float
    family: str
    homogeneous: Dict[str, float] = field(default_factory=dict)
    inhomogeneous: Dict[str, float] = field(default_factory=dict)

    def checks(self) -> List[Check]:
        tol = TOLERANCES["dilation_spread"]
        out = []
        for name, ratios in (("homogeneous", self.homogeneous), ("inhomogeneous", self.inhomogeneous)):
            values = list(ratios.values())
            finite = all(math.isfinite(v) and v > 0 for v in values)
            spread = _spread(values) if finite else math.inf
            out.append(Check.from_bool(f"strichartz.{self.family}.{name}", spread < tol, measured=spread,
                                       tolerance=tol, metadata={"ratios": ratios}))
        if self.q is None and self.r == 2 and self.s == 0:
            worst = max(abs(v - 1.0) for v in self.homogeneous.values())
            out.append(Check.from_bool(f"strichartz.{self.family}.unitarity", worst <= TOLERANCES["unitarity"],
                                       measured=worst, tolerance=TOLERANCES["unitarity"]))
        return out

    def to_rows(self) -> List[dict]:
        return [{"family": self.family, "dilation": d, "homogeneous": h, "inhomogeneous": self.inhomogeneous[d]}
                for d, h in self.homogeneous.items()]

    def to_dict(self) -> dict:
        return {"q": "inf" if self.q is None else str(self.q), "r": str(self.r), "s": self.s,
                "family": self.family, "homogeneous": self.homogeneous, "inhomogeneous": self.inhomogeneous}


def strichartz_diagnostic(
    q: Exponent,
    r: Exponent,
    s: float = 0.0,
    family: str = "gaussian",
    grid: Optional[GridSpec] = None,
    ladder: Sequence[Fraction] = DILATION_LADDER,
    window: float = 0.5,
    samples: int = 41,
    seed: int = 0,
) -> StrichartzReport:
    """Homogeneous and inhomogeneous Strichartz ratios across dilations.

    Each dilation f(delta x) is evolved over the window rescaled to
    window / delta^2. The forced flow uses F(tau) = e^{i tau Delta} g, whose
    Duhamel integral is t e^{it Delta} g, measured against F in the dual
    norm L^{q'}_t L^{r',2}_x.

    Raises:
        DualPairError: (q, r) is not admissible; nothing is evaluated
    """
    grid = grid or GridSpec(3, 32, 12.0)
    q_exact, r_exact = _exponent(q), _exponent(r)
    if r_exact is None or not AdmissiblePair.from_exponents(grid.n, q_exact, r_exact).is_admissible():
        raise DualPairError(f"({q}, {r}) is not an admissible pair in dimension {grid.n}", tag="admissible_pair")
    q_val = math.inf if q_exact is None else float(q_exact)
    r_val = float(r_exact)
    q_dual, r_dual = _dual(q_exact), _dual(r_exact)

    base = family_member(family, grid, seed)
    report = StrichartzReport(q_exact, r_exact, s, family)
    for delta in ladder:
        d = float(delta)
        g = base.matched_dilation(d) * (1.0 + 0j)
        times = np.linspace(0.0, window / (d * d), samples)
        flow = [propagator(g, t) for t in times]
        data = sobolev_norm(g, s)
        report.homogeneous[str(delta)] = time_norm(times, [sobolev_lorentz_norm(u, s, r_val) for u in flow], q_val) / data

        integral = duhamel_integral(times, [u.values for u in flow], grid=g.grid)
        k2 = lattice_for(g.grid).squared_norm
        forced = [g.with_values(inverse(np.exp(-1j * t * k2) * S)) for t, S in zip(times, integral)]
        numerator = time_norm(times, [sobolev_lorentz_norm(u, s, r_val) for u in forced], q_val)
        denominator = time_norm(times, [sobolev_lorentz_norm(u, s, r_dual) for u in flow], q_dual)
        report.inhomogeneous[str(delta)] = numerator / denominator
    logger.info("Strichartz (%s, %s) ratios: %s", q, r, report.homogeneous)
    return report
