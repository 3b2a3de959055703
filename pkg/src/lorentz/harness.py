"""Identity checks and dilation-ladder harnesses for the Lorentz-space inequalities.

Every harness works on matched grids: the dilated function f(delta x) keeps
its sample array and lives on the box of half-width L/delta, so the scaling
relation of each inequality holds on the grid up to round-off and the ratios
only move when the grid itself cannot represent the scaling.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..core.checks import Check
from ..core.errors import LemmaHypothesisError, ParameterError
from ..core.manifest import DILATION_LADDER, NESTING_LADDER, TEST_FAMILIES, TOLERANCES
from ..spectral.lattice import inverse, lattice_for
from ..spectral.operators import fractional_laplacian, riesz
from .grid import GridFunction, GridSpec
from .norms import lorentz_norm, nesting_constant

logger = logging.getLogger(__name__)

LEMMAS = ("holder", "hls", "sobolev")


def family_member(name: str, grid: GridSpec, seed: int = 0) -> GridFunction:
    """One member of a named test family on ``grid``.

    Args:
        name: gaussian, indicator, truncated_power or band_limited
        grid: Sampling grid
        seed: Seed of the band-limited draw

    Returns:
        Real field
    """
    r = grid.radius()
    L = grid.half_width
    if name == "gaussian":
        values = np.exp(-r * r)
    elif name == "indicator":
        values = (r < L / 3.0).astype(float)
    elif name == "truncated_power":
        values = np.where(r < L / 2.0, 1.0 / r, 0.0)
    elif name == "band_limited":
        rng = np.random.default_rng(seed)
        lattice = lattice_for(grid)
        coeffs = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
        coeffs[lattice.norm > 0.25 * lattice.nyquist] = 0.0
        values = inverse(coeffs).real
        values /= np.max(np.abs(values))
    else:
        raise ParameterError(f"unknown test family {name!r}; expected one of {', '.join(TEST_FAMILIES)}", tag="family")
    return GridFunction(grid, values)


def _relative_gap(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0.0 else abs(a - b) / scale


def _spread(values: Sequence[float]) -> float:
    lo, hi = min(values), max(values)
    if lo <= 0.0:
        return math.inf
    return hi / lo - 1.0


def lorentz_identity_suite(
    f: GridFunction,
    p: float,
    q: float,
    r: float,
    power: Optional[float] = None,
    prefix: str = "",
) -> List[Check]:
    """Power identity and nesting checks for one field.

    The power identity || |f|^k ||_{L^{p,q}} = ||f||^k_{L^{pk,qk}} is exact on
    step profiles; k defaults to ``r`` when finite and 2 otherwise. Nesting
    reports ||f||_{L^{p,r}} / ||f||_{L^{p,q}} for q <= r, which must be finite,
    at most (q/p)^{1/q - 1/r}, and the same for every dilation in the ladder.
    """
    p, q, r = float(p), float(q), float(r)
    if not 1 < p < math.inf:
        raise ParameterError("p must lie in (1, inf)", tag="lorentz_exponent")
    if not 1 <= q <= r:
        raise ParameterError("nesting needs 1 <= q <= r", tag="lorentz_exponent")
    k = float(power) if power is not None else (r if math.isfinite(r) else 2.0)
    f.require_finite()

    checks: List[Check] = []
    lhs = lorentz_norm(f.with_values(np.abs(f.values) ** k), p, q)
    rhs = lorentz_norm(f, p * k, q * k) ** k
    gap = _relative_gap(lhs, rhs)
    tol = TOLERANCES["power_identity"]
    checks.append(Check.from_bool(
        f"{prefix}power_identity", gap <= tol, measured=gap, tolerance=tol,
        metadata={"p": p, "q": q, "power": k},
    ))

    ratios = []
    for delta in NESTING_LADDER:
        g = f.matched_dilation(float(delta))
        big = lorentz_norm(g, p, r)
        small = lorentz_norm(g, p, q)
        ratios.append(big / small if small > 0 else math.inf)
    base = ratios[NESTING_LADDER.index(Fraction(1))]
    bound = nesting_constant(p, q, r)
    finite = all(math.isfinite(x) for x in ratios)
    checks.append(Check.from_bool(
        f"{prefix}nesting_bound", finite and base <= bound * (1.0 + 1e-12),
        measured=base, tolerance=bound, metadata={"p": p, "q": q, "r": r},
    ))
    spread = _spread(ratios) if finite else math.inf
    tol = TOLERANCES["nesting_dilation"]
    checks.append(Check.from_bool(
        f"{prefix}nesting_dilation", spread <= tol, measured=spread, tolerance=tol,
        metadata={"ratios": ratios, "ladder": [str(d) for d in NESTING_LADDER]},
    ))
    return checks


def _inv(x) -> Fraction:
    x = Fraction(x)
    if x <= 0:
        raise ParameterError(f"exponent must be positive, got {x}", tag="lorentz_exponent")
    return 1 / x


def check_lemma_hypothesis(lemma: str, exponents: Dict[str, Fraction], n: int) -> None:
    """Verify the exponent relation of ``lemma`` exactly.

    Raises:
        LemmaHypothesisError: Relation violated, tagged with the lemma name
        ParameterError: Unknown lemma or missing exponent
    """
    e = exponents
    try:
        if lemma == "holder":
            ok = _inv(e["p"]) == _inv(e["p1"]) + _inv(e["p2"]) and _inv(e["q"]) == _inv(e["q1"]) + _inv(e["q2"])
            relation = "1/p = 1/p1 + 1/p2 and 1/q = 1/q1 + 1/q2"
        elif lemma == "hls":
            ok = 0 < Fraction(e["alpha"]) < n and _inv(e["q"]) == _inv(e["p"]) - Fraction(e["alpha"]) / n
            relation = "1/q = 1/p - alpha/n"
        elif lemma == "sobolev":
            ok = Fraction(e["s"]) >= 0 and _inv(e["p1"]) == _inv(e["p"]) - Fraction(e["s"]) / n
            relation = "1/p1 = 1/p - s/n"
        else:
            raise ParameterError(f"unknown lemma {lemma!r}; expected one of {', '.join(LEMMAS)}", tag="lemma")
    except KeyError as e:
        raise ParameterError(f"{lemma} needs exponent {e.args[0]!r}", tag="lemma") from e
    if not ok:
        raise LemmaHypothesisError(f"exponent relation {relation} violated by {exponents}", tag=lemma)


def _lemma_ratio(lemma: str, f: GridFunction, e: Dict[str, Fraction]) -> float:
    if lemma == "holder":
        lhs = lorentz_norm(f.with_values(f.values * f.values), float(e["p"]), float(e["q"]))
        rhs = lorentz_norm(f, float(e["p1"]), float(e["q1"])) * lorentz_norm(f, float(e["p2"]), float(e["q2"]))
    elif lemma == "hls":
        second = float(e.get("second", 2))
        potential = riesz(f, float(e["alpha"]))
        lhs = lorentz_norm(potential, float(e["q"]), second)
        rhs = lorentz_norm(f, float(e["p"]), second)
    else:
        second = float(e.get("second", 2))
        s = float(e["s"])
        lhs = lorentz_norm(f, float(e["p1"]), second)
        derivative = f if s == 0 else fractional_laplacian(f, s)
        rhs = lorentz_norm(derivative, float(e["p"]), second)
    return lhs / rhs if rhs > 0 else math.inf


@dataclass
class HarnessReport:
    """Ratios LHS/RHS of one inequality over a dilation ladder."""

    lemma: str
    family: str
    exponents: Dict[str, Fraction]
    ratios: Dict[str, float] = field(default_factory=dict)
    checks: List[Check] = field(default_factory=list)

    @property
    def supremum(self) -> float:
        return max(self.ratios.values())

    @property
    def spread(self) -> float:
        return _spread(list(self.ratios.values()))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_rows(self) -> List[Dict[str, str]]:
        return [
            {"lemma": self.lemma, "family": self.family, "dilation": d, "ratio": repr(v)}
            for d, v in self.ratios.items()
        ]

    def to_dict(self) -> dict:
        return {
            "lemma": self.lemma,
            "family": self.family,
            "exponents": {k: str(v) for k, v in self.exponents.items()},
            "ratios": self.ratios,
            "supremum": self.supremum,
            "spread": self.spread,
            "checks": [c.to_dict() for c in self.checks],
        }


def inequality_harness(
    family: str,
    lemma: str,
    exponents: Dict[str, Fraction],
    grid: GridSpec,
    ladder: Sequence[Fraction] = DILATION_LADDER,
    seed: int = 0,
) -> HarnessReport:
    """Measure the constant ratio of ``lemma`` for one family across dilations.

    The exponent relation is verified before anything is evaluated.

    Raises:
        LemmaHypothesisError: The exponents do not satisfy the lemma's relation
    """
    exponents = {k: Fraction(v) for k, v in exponents.items()}
    check_lemma_hypothesis(lemma, exponents, grid.n)
    base = family_member(family, grid, seed)
    report = HarnessReport(lemma=lemma, family=family, exponents=exponents)
    for delta in ladder:
        report.ratios[str(delta)] = _lemma_ratio(lemma, base.matched_dilation(float(delta)), exponents)

    values = list(report.ratios.values())
    finite = all(math.isfinite(v) and v > 0 for v in values)
    report.checks.append(Check.from_bool(
        f"{lemma}.{family}.finite", finite, measured=report.supremum if finite else None,
    ))
    spread = report.spread if finite else math.inf
    tol = TOLERANCES["dilation_spread"]
    report.checks.append(Check.from_bool(
        f"{lemma}.{family}.dilation_stable", spread < tol, measured=spread, tolerance=tol,
    ))
    if not report.passed:
        logger.warning("%s harness on %s not stable: ratios %s", lemma, family, values)
    return report
