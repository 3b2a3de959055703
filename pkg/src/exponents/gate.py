"""The local-theory gate, the containment remark check and parameter scans."""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..core.checks import Check, CheckStatus
from ..core.errors import DualPairError, HartreeLabError, ParameterError
from .algebraic import bound_max, compare, rational
from .constraints import r_window
from .critical import (
    ParameterPoint,
    alpha_lower_bound,
    b_lower_unclamped,
    b_window,
    check_alpha_range,
)
from .duality import AdmissiblePair, DualPairResult, HolderSplit, dual_of, holder_splits
from .windows import ExponentWindow

logger = logging.getLogger(__name__)

GATE_CHECKS = (
    "parameter_domain",
    "alpha_range",
    "b_range",
    "power_at_least_two",
    "weight_derivative_integrable",
    "riesz_order_above_s",
    "strichartz_window",
    "admissible_sample",
    "dual_admissible",
    "holder_indices",
)


@dataclass
class GateVerdict:
    """Structured outcome of :func:`theorem_gate`; one check per condition, in a fixed order."""

    n: int
    s: Fraction
    alpha: Fraction
    b: Fraction
    checks: List[Check] = field(default_factory=list)
    point: Optional[ParameterPoint] = None
    window: Optional[ExponentWindow] = None
    sample: Optional[AdmissiblePair] = None
    dual: Optional[DualPairResult] = None
    split: Optional[HolderSplit] = None
    findings: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    @property
    def failures(self) -> List[str]:
        return [c.name for c in self.checks if not c.passed]

    def check(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "input": {"n": self.n, "s": str(self.s), "alpha": str(self.alpha), "b": str(self.b)},
            "verdict": self.verdict,
            "point": None if self.point is None else self.point.to_dict(),
            "window": None if self.window is None else self.window.to_dict(),
            "sample": None if self.sample is None else self.sample.to_dict(),
            "dual": None if self.dual is None else self.dual.to_dict(),
            "holder": None if self.split is None else self.split.to_dict(),
            "checks": {c.name: c.to_dict() for c in self.checks},
            "findings": list(self.findings),
        }


def _skip(verdict: GateVerdict, reason: str) -> GateVerdict:
    done = {c.name for c in verdict.checks}
    for name in GATE_CHECKS:
        if name not in done:
            verdict.checks.append(
                Check(name, CheckStatus.FAIL, message=f"not evaluated: {reason}")
            )
    return verdict


def theorem_gate(n: int, s, alpha, b) -> GateVerdict:
    """Evaluate every hypothesis of the local theory at (n, s, alpha, b).

    The verdict passes only if every check passes. The decision rests on the
    n/r window actually being nonempty, not only on the alpha and b ranges.
    """
    s, alpha, b = rational(s), rational(alpha), rational(b)
    verdict = GateVerdict(n, s, alpha, b)
    add = verdict.checks.append

    try:
        point = ParameterPoint(n, s, alpha, b)
    except HartreeLabError as e:
        add(Check("parameter_domain", CheckStatus.FAIL, message=str(e)))
        return _skip(verdict, "parameter_domain")
    verdict.point = point
    add(Check.from_bool("parameter_domain", True, measured=point.to_dict()))

    alpha_ok = check_alpha_range(n, alpha)
    add(Check.from_bool("alpha_range", alpha_ok, measured=alpha,
                        tolerance=f"({alpha_lower_bound(n)}, {n})"))
    if alpha_ok:
        bw = b_window(n, s, alpha)
        b_ok = bw.contains(b)
        add(Check.from_bool("b_range", b_ok, measured=b, tolerance=str(bw)))
    else:
        b_ok = False
        add(Check("b_range", CheckStatus.FAIL, measured=b, message="not evaluated: alpha_range"))

    p = point.p
    add(Check.from_bool("power_at_least_two", p >= 2, measured=p, tolerance=">= 2"))
    add(Check.from_bool("weight_derivative_integrable", 0 < b < n - s, measured=b,
                        tolerance=f"(0, {n - s})"))
    add(Check.from_bool("riesz_order_above_s", s < alpha < n, measured=alpha,
                        tolerance=f"({s}, {n})"))
    if p < 2:
        return _skip(verdict, "power_at_least_two")

    window = r_window(point)
    verdict.window = window
    nonempty = not window.is_empty()
    add(Check.from_bool("strichartz_window", nonempty, measured=str(window),
                        message="" if nonempty else "n/r window is empty"))
    if not nonempty:
        if alpha_ok and b_ok:
            verdict.findings.append(
                "alpha_range and b_range hold but the n/r window is empty"
            )
            logger.warning("Assumption audit at %s: ranges hold, window empty", point.to_dict())
        return _skip(verdict, "strichartz_window")

    x = window.midpoint()
    sample = AdmissiblePair.from_spatial(n, x)
    verdict.sample = sample
    add(Check.from_bool("admissible_sample", sample.is_admissible(), measured=sample.to_dict()))
    try:
        dual = dual_of(point, sample)
        verdict.dual = dual
        add(Check.from_bool("dual_admissible", dual.admissible, measured=dual.to_dict()))
    except DualPairError as e:
        add(Check("dual_admissible", CheckStatus.FAIL, message=str(e)))

    split = holder_splits(point, sample.r)
    verdict.split = split
    add(Check.from_bool("holder_indices", split.valid, measured=split.to_dict(),
                        message=", ".join(split.violations)))
    return verdict


def remark_containment_check(n: int, s, samples: int = 100) -> List[Check]:
    """Check that the new (alpha, b) region contains the earlier one.

    Two checks: the alpha lower bound max{(n-2)/3, n-4} lies below n - 2,
    and on ``samples`` rationals alpha in (n - 2, n) the clamped b lower bound
    is at most max{0, (alpha - n)/2 + (n + 2)s/n}.
    """
    s = rational(s)
    if n < 3:
        raise ParameterError("dimension must be at least 3", tag="dimension")
    if not 0 <= s < Fraction(1, 2):
        raise ParameterError("s must lie in [0, 1/2)", tag="regularity")
    lower = alpha_lower_bound(n)
    checks = [
        Check.from_bool("alpha_range_contained", lower < n - 2, measured=lower,
                        tolerance=f"< {n - 2}")
    ]
    worst = None
    failed_at = None
    for k in range(1, samples + 1):
        alpha = Fraction(n - 2) + Fraction(2 * k, samples + 1)
        ours = bound_max(Fraction(0), b_lower_unclamped(n, s, alpha))
        earlier = max(Fraction(0), (alpha - n) / 2 + Fraction(n + 2, n) * s)
        gap = float(earlier) - float(ours)
        worst = gap if worst is None else min(worst, gap)
        if compare(ours, earlier) > 0 and failed_at is None:
            failed_at = alpha
    checks.append(
        Check.from_bool(
            "b_range_contained",
            failed_at is None,
            measured=worst,
            tolerance=">= 0",
            message="" if failed_at is None else f"fails at alpha = {failed_at}",
            metadata={"samples": samples},
        )
    )
    return checks


@dataclass(frozen=True)
class ScanRow:
    n: int
    s: Fraction
    alpha: Fraction
    b: Fraction
    p: Optional[Fraction]
    window_lo: Optional[Fraction]
    window_hi: Optional[Fraction]
    verdict: str

    def to_row(self) -> Dict[str, str]:
        def fmt(v):
            return "" if v is None else str(v)

        return {
            "n": str(self.n),
            "s": fmt(self.s),
            "alpha": fmt(self.alpha),
            "b": fmt(self.b),
            "p": fmt(self.p),
            "window_lo": fmt(self.window_lo),
            "window_hi": fmt(self.window_hi),
            "verdict": self.verdict,
        }


SCAN_COLUMNS = ["n", "s", "alpha", "b", "p", "window_lo", "window_hi", "verdict"]


def scan_point(args: Tuple[int, Fraction, Fraction, Fraction]) -> ScanRow:
    n, s, alpha, b = args
    v = theorem_gate(n, s, alpha, b)
    p = v.point.p if v.point is not None else None
    lo = hi = None
    if v.window is not None and not v.window.is_empty():
        lo, hi = v.window.lo, v.window.hi
    return ScanRow(n, s, alpha, b, p, lo, hi, v.verdict)


def rational_grid(lo, hi, steps: int) -> List[Fraction]:
    """``steps`` evenly spaced rationals from lo to hi inclusive."""
    lo, hi = rational(lo), rational(hi)
    if steps < 2:
        return [lo]
    return [lo + (hi - lo) * k / (steps - 1) for k in range(steps)]


def scan(
    n: int,
    s,
    alphas: Sequence,
    bs: Sequence,
    threads: int = 1,
) -> List[ScanRow]:
    """Gate every (alpha, b) on a rectangular grid; rows ordered alpha-major by input index."""
    s = rational(s)
    tasks = [(n, s, rational(a), rational(b)) for a in alphas for b in bs]
    logger.info("Scanning %d points at n=%s s=%s with %d worker(s)", len(tasks), n, s, threads)
    if threads <= 1 or len(tasks) < 64:
        return [scan_point(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(scan_point, tasks, chunksize=max(1, len(tasks) // (4 * threads))))
