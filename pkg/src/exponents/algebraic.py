"""Quadratic irrationals ``a + c*sqrt(d)`` with exact comparison.

Ordering is decided by sign analysis and squaring, never by floating point.
``to_mpf`` gives a high-precision value for diagnostics only.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Tuple, Union

import mpmath

Rational = Fraction
Number = Union[int, Fraction, "AlgebraicBound"]


def rational(value) -> Fraction:
    """Coerce int, Fraction or numeric string to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def squarefree_split(d: int) -> Tuple[int, int]:
    """Return ``(k, m)`` with ``d = k*k*m`` and ``m`` square-free."""
    if d < 0:
        raise ValueError("radicand must be non-negative")
    if d == 0:
        return 0, 0
    k, m = 1, d
    f = 2
    while f * f <= m:
        while m % (f * f) == 0:
            m //= f * f
            k *= f
        f += 1
    return k, m


@total_ordering
@dataclass(frozen=True, eq=False)
class AlgebraicBound:
    """The number ``a + c*sqrt(d)``.

    The representation is canonical: ``d`` is square-free (the square part is
    folded into ``c``), and a rational value has ``c == 0`` and ``d == 0``.
    """

    a: Fraction
    c: Fraction = Fraction(0)
    d: int = 0

    def __post_init__(self):
        a, c, d = rational(self.a), rational(self.c), int(self.d)
        if d < 0:
            raise ValueError("radicand must be non-negative")
        k, m = squarefree_split(d)
        if c == 0 or m == 0:
            c, m = Fraction(0), 0
        else:
            c *= k
            if m == 1:
                a, c, m = a + c, Fraction(0), 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", m)

    @classmethod
    def of(cls, value: Number) -> "AlgebraicBound":
        if isinstance(value, AlgebraicBound):
            return value
        return cls(rational(value))

    @property
    def is_rational(self) -> bool:
        return self.c == 0

    def sign(self) -> int:
        """Exact sign of ``a + c*sqrt(d)``."""
        sa, sc = _sign(self.a), _sign(self.c)
        if sc == 0:
            return sa
        if sa == 0 or sa == sc:
            return sc
        lhs, rhs = self.a * self.a, self.c * self.c * self.d
        if lhs > rhs:
            return sa
        if lhs < rhs:
            return sc
        return 0

    def _same_field(self, other: "AlgebraicBound") -> bool:
        return self.d == other.d or self.is_rational or other.is_rational

    def _radicand(self, other: "AlgebraicBound") -> int:
        return self.d or other.d

    def __add__(self, other: Number) -> "AlgebraicBound":
        other = AlgebraicBound.of(other)
        if not self._same_field(other):
            raise ValueError(f"cannot add sqrt({self.d}) and sqrt({other.d}) terms")
        return AlgebraicBound(self.a + other.a, self.c + other.c, self._radicand(other))

    __radd__ = __add__

    def __neg__(self) -> "AlgebraicBound":
        return AlgebraicBound(-self.a, -self.c, self.d)

    def __sub__(self, other: Number) -> "AlgebraicBound":
        return self + (-AlgebraicBound.of(other))

    def __rsub__(self, other: Number) -> "AlgebraicBound":
        return AlgebraicBound.of(other) - self

    def __mul__(self, other: Number) -> "AlgebraicBound":
        other = AlgebraicBound.of(other)
        if other.is_rational:
            k = other.a
            return AlgebraicBound(self.a * k, self.c * k, self.d)
        if self.is_rational:
            return other * self
        if self.d != other.d:
            raise ValueError(f"cannot multiply sqrt({self.d}) and sqrt({other.d}) terms")
        return AlgebraicBound(
            self.a * other.a + self.c * other.c * self.d,
            self.a * other.c + self.c * other.a,
            self.d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "AlgebraicBound":
        other = AlgebraicBound.of(other)
        if not other.is_rational:
            raise ValueError("division by an irrational is not supported")
        if other.a == 0:
            raise ZeroDivisionError("division by zero")
        return AlgebraicBound(self.a / other.a, self.c / other.a, self.d)

    def compare(self, other: Number) -> int:
        """Exact sign of ``self - other``."""
        other = AlgebraicBound.of(other)
        if self._same_field(other):
            return (self - other).sign()
        # (a1 - a2) + c1*sqrt(d1) against c2*sqrt(d2): square both sides once
        left = AlgebraicBound(self.a - other.a, self.c, self.d)
        right_sign = _sign(other.c)
        left_sign = left.sign()
        if left_sign != right_sign:
            return 1 if left_sign > right_sign else -1
        left_sq = left * left
        right_sq = other.c * other.c * other.d
        t = (left_sq - right_sq).sign()
        return t if left_sign > 0 else -t

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, AlgebraicBound)) and not isinstance(other, bool):
            return self.compare(other) == 0
        return NotImplemented

    def __lt__(self, other) -> bool:
        if isinstance(other, (int, Fraction, AlgebraicBound)):
            return self.compare(other) < 0
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational:
            return hash(self.a)
        return hash((self.a, self.c, self.d))

    def to_mpf(self, prec: int = 256) -> mpmath.mpf:
        """Evaluate at ``prec`` bits."""
        with mpmath.workprec(prec):
            value = mpmath.mpf(self.a.numerator) / self.a.denominator
            if not self.is_rational:
                value += mpmath.mpf(self.c.numerator) / self.c.denominator * mpmath.sqrt(self.d)
            return +value

    def __float__(self) -> float:
        return float(self.to_mpf(80))

    def __str__(self) -> str:
        if self.is_rational:
            return str(self.a)
        op = "+" if self.c > 0 else "-"
        return f"{self.a} {op} {abs(self.c)}*sqrt({self.d})"

    def to_dict(self) -> dict:
        return {"a": str(self.a), "c": str(self.c), "d": self.d, "approx": float(self)}


def compare(x: Number, y: Number) -> int:
    """Exact sign of ``x - y`` for rationals and quadratic irrationals."""
    if isinstance(x, AlgebraicBound) or isinstance(y, AlgebraicBound):
        return AlgebraicBound.of(x).compare(y)
    diff = rational(x) - rational(y)
    return _sign(diff)


def simplify(x: Number) -> Number:
    """Return a Fraction when the value is rational."""
    if isinstance(x, AlgebraicBound) and x.is_rational:
        return x.a
    return x


def bound_max(*values: Number) -> Number:
    """Largest value; ties keep the first listed."""
    best = values[0]
    for value in values[1:]:
        if compare(value, best) > 0:
            best = value
    return simplify(best)


def bound_min(*values: Number) -> Number:
    """Smallest value; ties keep the first listed."""
    best = values[0]
    for value in values[1:]:
        if compare(value, best) < 0:
            best = value
    return simplify(best)
