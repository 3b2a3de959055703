"""Dispatch a validated RunConfig to its suite and assemble the Report."""

import logging
import math
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, Optional, Tuple

from .. import __version__
from ..core.checks import Check, Report
from ..core.config import RunConfig, thread_count
from ..core.errors import ParameterError
from ..core.manifest import BOXES, MANIFEST_VERSION, TEST_FAMILIES, TOLERANCES
from ..core.monitoring import PerformanceMonitor, ledger
from ..exponents.constraints import window_equivalence_oracle
from ..exponents.gate import SCAN_COLUMNS, rational_grid, remark_containment_check, scan, theorem_gate
from ..lorentz.grid import GridSpec
from ..lorentz.harness import family_member, inequality_harness, lorentz_identity_suite
from ..lorentz.norms import indicator_norm, lorentz_norm
from ..lorentz.rearrangement import rearrangement
from ..sim.diagnostics import continuous_dependence_check, scattering_diagnostic, strichartz_diagnostic
from ..sim.duhamel import picard_contraction
from ..sim.integrator import simulate
from ..sim.params import EquationParams, PicardConfig, gaussian_data
from ..spectral.norms import sobolev_norm
from ..spectral.snapshot import save_snapshot

logger = logging.getLogger(__name__)


def provenance(config: RunConfig) -> Dict[str, object]:
    return {
        "config_hash": config.config_hash(),
        "seed": config.seed,
        "version": __version__,
        "manifest_version": MANIFEST_VERSION,
    }


def exact_pair(config: RunConfig) -> Tuple[Optional[Fraction], Fraction]:
    """(q, r) from the config, else the admissible pair the gate samples; q = None means inf.

    Raises:
        ParameterError: Neither given nor available because the gate fails
    """
    if config.q is not None and config.r is not None:
        return config.q, config.r
    verdict = theorem_gate(config.n, config.s, config.alpha, config.b)
    if verdict.sample is None:
        raise ParameterError(
            f"no sampled admissible pair at this point (failed: {', '.join(verdict.failures)})",
            tag="strichartz_window",
        )
    return verdict.sample.q, verdict.sample.r


def space_time_pair(config: RunConfig) -> Tuple[float, float]:
    q, r = exact_pair(config)
    return (math.inf if q is None else float(q)), float(r)


def _grid(config: RunConfig, suite: str) -> GridSpec:
    """Manifest box for ``suite`` unless the config sets points or half_width explicitly."""
    points, half_width = BOXES[suite]
    if "points" in config.model_fields_set:
        points = config.points
    if "half_width" in config.model_fields_set:
        half_width = float(config.half_width)
    return GridSpec(config.n, points, half_width)


# ---------------------------------------------------------------- exponents


def _run_gate(config: RunConfig, out_dir: Optional[Path]) -> Report:
    verdict = theorem_gate(config.n, config.s, config.alpha, config.b)
    report = Report(command="gate", checks=list(verdict.checks))
    if verdict.passed:
        oracle = window_equivalence_oracle(verdict.point)
        report.add(Check.from_bool("elimination_audit", oracle.passed, measured=oracle.to_dict(),
                                   message="" if oracle.witness is None else f"witness n/r = {oracle.witness}"))
    report.metadata["gate"] = verdict.to_dict()
    if not verdict.passed:
        logger.warning("Gate FAIL at (%s, %s, %s, %s): %s", config.n, config.s, config.alpha, config.b,
                       ", ".join(verdict.failures))
    return report


def _run_scan(config: RunConfig, out_dir: Optional[Path]) -> Report:
    alphas = rational_grid(config.alpha_min, config.alpha_max, config.alpha_steps)
    bs = rational_grid(config.b_min, config.b_max, config.b_steps)
    rows = scan(config.n, config.s, alphas, bs, threads=thread_count())
    report = Report(command="scan", columns=list(SCAN_COLUMNS), rows=[r.to_row() for r in rows])
    expected = len(alphas) * len(bs)
    report.add(Check.from_bool("scan.rows", len(rows) == expected, measured=len(rows), tolerance=expected))
    passing = sum(1 for r in rows if r.verdict == "PASS")
    report.metadata["passing_points"] = passing
    if 0 <= config.s < Fraction(1, 2):
        report.extend(remark_containment_check(config.n, config.s))
    return report


# ---------------------------------------------------------------- verify


def _verify_identities(config: RunConfig, grid: GridSpec, report: Report) -> None:
    for family in TEST_FAMILIES:
        f = family_member(family, grid, config.seed)
        for p, q, r in ((2, 1, math.inf), (3, 2, 4)):
            report.extend(lorentz_identity_suite(f, p, q, r, prefix=f"identities.{family}.{p}_{q}_{r}."))
        report.rows.append({"family": family, "p": 2, "q": 1, "r": "inf",
                            "norm": lorentz_norm(f, 2, 1), "weak": lorentz_norm(f, 2, math.inf)})
    indicator = family_member("indicator", grid)
    measure = rearrangement(indicator).support_measure()
    worst = max(
        abs(lorentz_norm(indicator, p, q) / indicator_norm(measure, p, q) - 1.0)
        for p, q in ((2, 1), (2, 2), (3, 1.5), (4, 8), (1.5, math.inf))
    )
    tol = TOLERANCES["indicator_closed_form"]
    report.add(Check.from_bool("identities.indicator_closed_form", worst <= tol, measured=worst, tolerance=tol))
    report.columns = ["family", "p", "q", "r", "norm", "weak"]


def _lemma_exponents(config: RunConfig, lemma: str) -> Dict[str, Fraction]:
    n = config.n
    if lemma == "holder":
        return {"p": 2, "q": 1, "p1": 4, "q1": 2, "p2": 4, "q2": 2}
    if lemma == "hls":
        alpha = config.alpha
        return {"alpha": alpha, "p": Fraction(2 * n) / (n + alpha), "q": Fraction(2 * n) / (n - alpha)}
    s = config.s
    if not s < Fraction(n, 2):
        raise ParameterError("the Sobolev suite needs s < n/2", tag="sobolev")
    return {"s": s, "p": 2, "p1": 1 / (Fraction(1, 2) - s / n)}


def _verify_lemma(config: RunConfig, grid: GridSpec, report: Report) -> None:
    lemma = config.suite
    exponents = _lemma_exponents(config, lemma)
    for family in TEST_FAMILIES:
        harness = inequality_harness(family, lemma, exponents, grid, seed=config.seed)
        report.extend(harness.checks)
        report.rows.extend(harness.to_rows())
    report.columns = ["lemma", "family", "dilation", "ratio"]
    report.metadata["exponents"] = {k: str(v) for k, v in exponents.items()}


def _verify_strichartz(config: RunConfig, grid: GridSpec, report: Report) -> None:
    pairs = [(None, Fraction(2))]
    sampled = exact_pair(config)
    if sampled not in pairs:
        pairs.append(sampled)
    for q, r in pairs:
        label = f"{'inf' if q is None else q}_{r}"
        result = strichartz_diagnostic("inf" if q is None else q, r, grid=grid, seed=config.seed)
        for check in result.checks():
            check.name = f"{check.name}.{label}"
            report.add(check)
        report.rows.extend({"q": result.to_dict()["q"], "r": str(r), **row} for row in result.to_rows())
    report.columns = ["q", "r", "family", "dilation", "homogeneous", "inhomogeneous"]


def _run_verify(config: RunConfig, out_dir: Optional[Path]) -> Report:
    report = Report(command="verify", metadata={"suite": config.suite})
    grid = _grid(config, config.suite)
    report.metadata["grid"] = {"n": grid.n, "points": grid.points, "half_width": grid.half_width}
    if config.suite == "identities":
        _verify_identities(config, grid, report)
    elif config.suite == "strichartz":
        _verify_strichartz(config, grid, report)
    else:
        _verify_lemma(config, grid, report)
    return report


# ---------------------------------------------------------------- flows


def _initial_data(config: RunConfig, params: EquationParams):
    return gaussian_data(params.grid, float(config.amplitude))


def _run_simulate(config: RunConfig, out_dir: Optional[Path]) -> Report:
    params = EquationParams.from_config(config)
    u0 = _initial_data(config, params)
    diagnostics = list(config.diagnostics)
    r = None
    if any(name in ("lorentz", "sobolev_lorentz") for name in diagnostics):
        r = space_time_pair(config)[1]
    trajectory = simulate(u0, float(config.dt), float(config.horizon), params, save_every=config.save_every,
                          diagnostics=diagnostics, r=r, keep_fields=out_dir is not None)
    report = Report(command="simulate", columns=["t"] + diagnostics, rows=trajectory.to_rows())
    steps = max(1, round(float(config.horizon) / float(config.dt)))
    if "mass" in diagnostics:
        tol = TOLERANCES["mass_drift"] * max(1.0, steps / 1000)
        drift = trajectory.relative_drift("mass")
        report.add(Check.from_bool("simulate.mass_drift", drift < tol, measured=drift, tolerance=tol))
    if "energy" in diagnostics:
        tol = TOLERANCES["energy_drift"]
        drift = trajectory.relative_drift("energy")
        report.add(Check.from_bool("simulate.energy_drift", drift < tol, measured=drift, tolerance=tol))
    if out_dir is not None:
        paths = [save_snapshot(u, out_dir / "snapshots" / f"u_{k:05d}.bin") for k, u in enumerate(trajectory.fields)]
        report.metadata["snapshots"] = [p.name for p in paths]
    report.metadata["steps"] = steps
    return report


def _run_picard(config: RunConfig, out_dir: Optional[Path]) -> Report:
    params = EquationParams.from_config(config)
    q, r = space_time_pair(config)
    result = picard_contraction(_initial_data(config, params), PicardConfig.from_config(config), params, q, r,
                                compare_dt=float(config.dt))
    report = Report(command="picard", checks=result.checks(), columns=["k", "distance", "ratio"],
                    rows=result.to_rows(), metadata={"picard": result.to_dict()})
    return report


def _run_scatter(config: RunConfig, out_dir: Optional[Path]) -> Report:
    params = EquationParams.from_config(config)
    u0 = _initial_data(config, params)
    result = scattering_diagnostic(u0, params, config.checkpoints, float(config.first_checkpoint), float(config.dt))
    return Report(command="scatter", checks=result.checks(params.lam, sobolev_norm(u0, params.s)),
                  columns=["t", "cauchy", "residual", "boundary_mass"], rows=result.to_rows(),
                  metadata={"scatter": result.to_dict()})


def _run_depend(config: RunConfig, out_dir: Optional[Path]) -> Report:
    params = EquationParams.from_config(config)
    q, r = space_time_pair(config)
    result = continuous_dependence_check(
        _initial_data(config, params), [float(e) for e in config.perturbations], params,
        float(config.horizon), float(config.dt), q, r, nodes=config.picard_nodes, seed=config.seed,
    )
    return Report(command="depend", checks=result.checks(), columns=["epsilon", "distance", "ratio"],
                  rows=result.to_rows(), metadata={"depend": result.to_dict()})


HANDLERS: Dict[str, Callable[[RunConfig, Optional[Path]], Report]] = {
    "gate": _run_gate,
    "scan": _run_scan,
    "verify": _run_verify,
    "simulate": _run_simulate,
    "picard": _run_picard,
    "scatter": _run_scatter,
    "depend": _run_depend,
}


def run(config: RunConfig, out_dir: Optional[Path] = None) -> Report:
    """Execute the suite named by ``config.command``.

    Args:
        config: Validated configuration
        out_dir: Directory for snapshots (simulate only)

    Returns:
        Report with provenance attached; ``report.passed`` decides the exit code
    """
    handler = HANDLERS[config.command]
    with PerformanceMonitor(f"run.{config.command}"):
        report = handler(config, out_dir)
    report.provenance = provenance(config)
    logger.info("%s: %s", config.command, report.get_summary()["verdict"])
    logger.debug("Timings: %s", ledger.summary())
    return report
