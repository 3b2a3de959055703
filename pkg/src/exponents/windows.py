"""Intervals with exact endpoints and strictness flags."""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Optional

from .algebraic import AlgebraicBound, Number, compare, simplify

Endpoint = Optional[Number]  # None is an infinite endpoint


def _fmt(x: Endpoint) -> Optional[str]:
    return None if x is None else str(x)


@dataclass(frozen=True, eq=False)
class ExponentWindow:
    """Interval ``lo < x < hi`` (or ``<=`` where the flag is False).

    All empty windows compare equal.
    """

    lo: Endpoint = None
    hi: Endpoint = None
    lo_strict: bool = True
    hi_strict: bool = True

    def __post_init__(self):
        object.__setattr__(self, "lo", None if self.lo is None else simplify(self.lo))
        object.__setattr__(self, "hi", None if self.hi is None else simplify(self.hi))

    @classmethod
    def open(cls, lo: Endpoint, hi: Endpoint) -> "ExponentWindow":
        return cls(lo, hi, True, True)

    @classmethod
    def closed(cls, lo: Endpoint, hi: Endpoint) -> "ExponentWindow":
        return cls(lo, hi, False, False)

    def is_empty(self) -> bool:
        """Decide emptiness exactly."""
        if self.lo is None or self.hi is None:
            return False
        c = compare(self.lo, self.hi)
        if c > 0:
            return True
        if c == 0:
            return self.lo_strict or self.hi_strict
        return False

    def intersect(self, other: "ExponentWindow") -> "ExponentWindow":
        lo, lo_strict = self._tighter(self.lo, self.lo_strict, other.lo, other.lo_strict, +1)
        hi, hi_strict = self._tighter(self.hi, self.hi_strict, other.hi, other.hi_strict, -1)
        return ExponentWindow(lo, hi, lo_strict, hi_strict)

    __and__ = intersect

    @staticmethod
    def _tighter(x: Endpoint, xs: bool, y: Endpoint, ys: bool, direction: int):
        if x is None:
            return y, ys
        if y is None:
            return x, xs
        c = compare(x, y) * direction
        if c > 0:
            return x, xs
        if c < 0:
            return y, ys
        return x, xs or ys

    def interior(self) -> "ExponentWindow":
        return ExponentWindow(self.lo, self.hi, True, True)

    def contains(self, x: Number) -> bool:
        if self.lo is not None:
            c = compare(x, self.lo)
            if c < 0 or (c == 0 and self.lo_strict):
                return False
        if self.hi is not None:
            c = compare(x, self.hi)
            if c > 0 or (c == 0 and self.hi_strict):
                return False
        return True

    __contains__ = contains

    def midpoint(self) -> Number:
        """Midpoint of a bounded, nonempty window."""
        if self.lo is None or self.hi is None:
            raise ValueError("unbounded window has no midpoint")
        if self.is_empty():
            raise ValueError("empty window has no midpoint")
        if isinstance(self.lo, AlgebraicBound) or isinstance(self.hi, AlgebraicBound):
            return simplify((AlgebraicBound.of(self.lo) + self.hi) / 2)
        return (Fraction(self.lo) + Fraction(self.hi)) / 2

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExponentWindow):
            return NotImplemented
        if self.is_empty() or other.is_empty():
            return self.is_empty() and other.is_empty()
        return (
            _endpoint_equal(self.lo, other.lo)
            and _endpoint_equal(self.hi, other.hi)
            and self.lo_strict == other.lo_strict
            and self.hi_strict == other.hi_strict
        )

    def __hash__(self) -> int:
        if self.is_empty():
            return hash("empty-window")
        return hash((self.lo, self.hi, self.lo_strict, self.hi_strict))

    def __str__(self) -> str:
        if self.is_empty():
            return "empty"
        left = "(" if self.lo_strict or self.lo is None else "["
        right = ")" if self.hi_strict or self.hi is None else "]"
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "inf" if self.hi is None else str(self.hi)
        return f"{left}{lo}, {hi}{right}"

    def to_dict(self) -> dict:
        return {
            "lo": _fmt(self.lo),
            "hi": _fmt(self.hi),
            "lo_strict": self.lo_strict,
            "hi_strict": self.hi_strict,
            "empty": self.is_empty(),
        }


def _endpoint_equal(x: Endpoint, y: Endpoint) -> bool:
    if x is None or y is None:
        return x is None and y is None
    return compare(x, y) == 0


def intersect_all(windows: Iterable[ExponentWindow]) -> ExponentWindow:
    """Intersection of any number of windows; the empty product is the whole line."""
    return reduce(ExponentWindow.intersect, windows, ExponentWindow())
