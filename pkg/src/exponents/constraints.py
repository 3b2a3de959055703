"""Windows for x = n/r: the theorem's window, every raw estimate window, and the elimination audit."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from ..core.errors import ParameterError
from .critical import ParameterPoint
from .windows import ExponentWindow, intersect_all

logger = logging.getLogger(__name__)

# Stable names of the raw estimate windows, in report order
RAW_WINDOW_NAMES = (
    "pair_range",
    "dual_pair_range",
    "holder_weight",
    "holder_first_index",
    "holder_hls",
    "leibniz_split",
    "leibniz_sobolev",
    "leibniz_hls",
    "derivative_split",
    "derivative_first_index",
    "derivative_hls",
    "derivative_sobolev",
    "derivative_weight",
)
SIDE_CONDITION_NAMES = ("weight_in_dimension", "weight_derivative_integrable", "riesz_order_above_s")


def _require_power(point: ParameterPoint) -> None:
    if point.p < 2:
        raise ParameterError(f"p = {point.p} is below 2", tag="power_at_least_two")


def r_window(point: ParameterPoint) -> ExponentWindow:
    """Open window for n/r on which the local theory runs.

    Lower end max{s, s + (alpha - b)/p, n/2 - 2/(2p - 1)}, upper end
    min{(s(p - 1) - b + n)/p, n/2 - 1/(2p - 1)}; ties keep the listed order.
    """
    _require_power(point)
    n, s, a, b, p = point.n, point.s, point.alpha, point.b, point.p
    half = Fraction(n, 2)
    lo = max_listed(s, s + (a - b) / p, half - 2 / (2 * p - 1))
    hi = min_listed((s * (p - 1) - b + n) / p, half - 1 / (2 * p - 1))
    window = ExponentWindow.open(lo, hi)
    if window.is_empty():
        logger.warning("n/r window empty at %s: lower %s >= upper %s", point.to_dict(), lo, hi)
    return window


def max_listed(*values: Fraction) -> Fraction:
    best = values[0]
    for value in values[1:]:
        if value > best:
            best = value
    return best


def min_listed(*values: Fraction) -> Fraction:
    best = values[0]
    for value in values[1:]:
        if value < best:
            best = value
    return best


@dataclass
class RawConstraintSystem:
    """Every window the individual estimates impose on n/r, plus side conditions on b and alpha."""

    windows: Dict[str, ExponentWindow]
    side_conditions: Dict[str, bool]

    @property
    def side_conditions_hold(self) -> bool:
        return all(self.side_conditions.values())

    def intersection(self) -> ExponentWindow:
        """Feasible set of the whole raw system; empty if a side condition fails."""
        window = intersect_all(self.windows.values())
        if not self.side_conditions_hold:
            return ExponentWindow.open(Fraction(0), Fraction(0))
        return window

    def to_dict(self) -> dict:
        return {
            "windows": {name: self.windows[name].to_dict() for name in RAW_WINDOW_NAMES},
            "side_conditions": {name: self.side_conditions[name] for name in SIDE_CONDITION_NAMES},
        }


def raw_constraint_windows(point: ParameterPoint) -> RawConstraintSystem:
    """Each estimate's window for n/r, keyed by the estimate it comes from.

    Groups: the admissible-pair ranges, the Holder split of the nonlinearity
    (``holder_*``), the split after the Leibniz rule (``leibniz_*``) and the
    split of the differentiated weight (``derivative_*``).
    """
    _require_power(point)
    n, s, a, b, p = point.n, point.s, point.alpha, point.b, point.p
    half = Fraction(n, 2)
    o = ExponentWindow.open
    windows = {
        "pair_range": ExponentWindow.closed(Fraction(n - 2, 2), half),
        "dual_pair_range": ExponentWindow.closed(half - 2 / (2 * p - 1), half - 1 / (2 * p - 1)),
        "holder_weight": o(
            s + (a - b) / p,
            min_listed((s * (p - 2) + n - b) / (p - 1), s + (n - b + a) / p),
        ),
        "holder_first_index": o(s, (s * (p - 2) + n) / (p - 1)),
        "holder_hls": o(max_listed(s, s + (a - b) / p), s + (n - b) / p),
        "leibniz_split": o(
            max_listed(s - b / (p - 1), (s * (p - 1) + a - b) / p),
            min_listed(s + (n - b) / (p - 1), (s * (p - 1) + a - b + n) / p),
        ),
        "leibniz_sobolev": o(s, s + n / (p - 1)),
        "leibniz_hls": o(max_listed(s, (s * (p - 1) + a - b) / p), (s * (p - 1) + n - b) / p),
        "derivative_split": o(
            s + (a - b) / p,
            min_listed((s * (p - 2) + n - b) / (p - 1), (s * (p - 1) + n - b + a) / p),
        ),
        "derivative_first_index": o(s, (s * (p - 2) + n) / (p - 1)),
        "derivative_hls": o(max_listed(s, s + (a - b) / p), s + (n - b) / p),
        "derivative_sobolev": o(s, s + n / (p - 1)),
        "derivative_weight": o(max_listed(s, ((p - 1) * s + a - b) / p), s + (n - b) / p),
    }
    return RawConstraintSystem(windows=windows, side_conditions=side_conditions(point))


def side_conditions(point: ParameterPoint) -> Dict[str, bool]:
    """Conditions on b and alpha alone that the raw estimates also need."""
    n, s, a, b = point.n, point.s, point.alpha, point.b
    return {
        "weight_in_dimension": 0 < b < n,
        "weight_derivative_integrable": 0 < b < n - s,
        "riesz_order_above_s": s < a < n,
    }


def derived_windows(point: ParameterPoint) -> Dict[str, ExponentWindow]:
    """Intermediate windows of the elimination, from the raw groups to the final one."""
    _require_power(point)
    n, s, a, b, p = point.n, point.s, point.alpha, point.b, point.p
    half = Fraction(n, 2)
    lower = max_listed(s, s + (a - b) / p)
    o = ExponentWindow.open
    holder = o(lower, min_listed((s * (p - 2) + n - b) / (p - 1), s + (n - b) / p))
    leibniz = o(max_listed(s, (s * (p - 1) + a - b) / p), (s * (p - 1) + n - b) / p)
    combined = o(lower, (s * (p - 1) + n - b) / p)
    derivative = o(lower, (s * (p - 2) + n - b) / (p - 1))
    dual = ExponentWindow.closed(half - 2 / (2 * p - 1), half - 1 / (2 * p - 1))
    return {
        "holder_group": holder,
        "leibniz_group": leibniz,
        "holder_leibniz_combined": combined,
        "derivative_group": derivative,
        "final": combined.intersect(dual).interior(),
    }


def nonemptiness_conditions(point: ParameterPoint) -> Dict[str, bool]:
    """Pairwise lower-below-upper conditions of :func:`r_window`.

    The window is nonempty exactly when all of them hold.
    """
    n, s, a, b, p = point.n, point.s, point.alpha, point.b, point.p
    return {
        "weight_plus_regularity_below_dimension": b + s < n,
        "regularity_below_dual_top": s < Fraction(n, 2) - 1 / (2 * p - 1),
        "riesz_plus_regularity_below_dimension": a + s < n,
        "riesz_shift_below_dual_top": p * s + a - b < p * Fraction(n, 2) - p / (2 * p - 1),
        "dual_bottom_below_weight_top": b + (p - 2) * Fraction(n, 2) < (p - 1) * s + 2 * p / (2 * p - 1),
    }


@dataclass
class OracleVerdict:
    """Outcome of comparing the raw feasible set with :func:`r_window`."""

    passed: bool
    intersection: ExponentWindow
    expected: ExponentWindow
    witness: Optional[Fraction] = None
    boundary_notes: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "intersection": self.intersection.to_dict(),
            "expected": self.expected.to_dict(),
            "witness": None if self.witness is None else str(self.witness),
            "boundary_notes": list(self.boundary_notes),
        }


def _sample_points(*windows: ExponentWindow) -> List[Fraction]:
    ends = sorted({e for w in windows for e in (w.lo, w.hi) if e is not None})
    samples = list(ends)
    samples.extend((x + y) / 2 for x, y in zip(ends, ends[1:]))
    if ends:
        samples.extend([ends[0] - 1, ends[-1] + 1])
    return samples


def window_equivalence_oracle(point: ParameterPoint) -> OracleVerdict:
    """Audit the elimination: intersect every raw window and compare with :func:`r_window`.

    The pair-range windows are closed while the theorem's window is open, so
    interiors are compared; endpoints the raw system admits but the theorem
    does not are listed as boundary notes.
    """
    system = raw_constraint_windows(point)
    raw = system.intersection()
    expected = r_window(point)
    interior = raw.interior()
    if interior == expected:
        notes = []
        if not raw.is_empty():
            for end, strict in ((raw.lo, raw.lo_strict), (raw.hi, raw.hi_strict)):
                if not strict and not expected.contains(end):
                    notes.append(f"n/r = {end} admitted by the raw system only")
        return OracleVerdict(True, raw, expected, boundary_notes=notes)

    witness = None
    for x in _sample_points(interior, expected):
        if interior.contains(x) != expected.contains(x):
            witness = x
            break
    logger.warning(
        "Elimination mismatch at %s: raw %s vs window %s (witness %s)",
        point.to_dict(), interior, expected, witness,
    )
    return OracleVerdict(False, raw, expected, witness=witness)
