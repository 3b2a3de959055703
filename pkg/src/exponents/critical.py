"""Critical powers and the admissible (alpha, b) ranges."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Union

from ..core.errors import DegenerateParameterError, ParameterError
from .algebraic import AlgebraicBound, Number, bound_max, rational, simplify
from .windows import ExponentWindow

logger = logging.getLogger(__name__)


def _check_dimension(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 3:
        raise ParameterError(f"dimension must be an integer >= 3, got {n!r}", tag="dimension")


def _check_regularity(s: Fraction) -> None:
    if not 0 <= s <= 1:
        raise ParameterError(f"regularity s must lie in [0, 1], got {s}", tag="regularity")


def _check_riesz_order(n: int, alpha: Fraction) -> None:
    if not 0 < alpha < n:
        raise ParameterError(f"Riesz order must satisfy 0 < alpha < n, got {alpha}", tag="riesz_order")


def critical_power(n: int, s: Fraction, alpha: Fraction, b: Fraction) -> Fraction:
    """The power p for which the Sobolev index of the scaling is exactly ``s``."""
    if n == 2 * s:
        raise DegenerateParameterError("n = 2s makes the critical power undefined", tag="degenerate")
    p = 1 + (2 - 2 * b + alpha) / (n - 2 * s)
    if p == 1:
        raise DegenerateParameterError("2 - 2b + alpha = 0 gives p = 1", tag="degenerate")
    return p


def critical_index(n: int, b: Fraction, alpha: Fraction, p: Fraction) -> Fraction:
    """s_c = n/2 - (2 - 2b + alpha) / (2(p - 1))."""
    if p == 1:
        raise DegenerateParameterError("p = 1 has no critical index", tag="degenerate")
    return Fraction(n, 2) - (2 - 2 * b + alpha) / (2 * (p - 1))


class CriticalExponents(NamedTuple):
    p: Fraction
    s_c: Fraction
    p_mass: Fraction
    p_energy: Fraction


def critical_exponents(n: int, s, alpha, b) -> CriticalExponents:
    """Critical power, its Sobolev index and the mass/energy-critical powers.

    Args:
        n: Dimension, at least 3
        s: Regularity in [0, 1]
        alpha: Riesz order in (0, n)
        b: Singularity strength

    Returns:
        ``(p, s_c, p_mass, p_energy)``, all exact

    Raises:
        ParameterError: Precondition violated
        DegenerateParameterError: n = 2s or p = 1
    """
    s, alpha, b = rational(s), rational(alpha), rational(b)
    _check_dimension(n)
    _check_regularity(s)
    _check_riesz_order(n, alpha)
    p = critical_power(n, s, alpha, b)
    s_c = critical_index(n, b, alpha, p)
    p_mass = 1 + (alpha + 2 - 2 * b) / n
    p_energy = 1 + (2 - 2 * b + alpha) / (n - 2)
    return CriticalExponents(p, s_c, p_mass, p_energy)


@dataclass(frozen=True)
class ParameterPoint:
    """A coordinate (n, s, alpha, b, lam) of every feasibility question.

    ``p`` is derived from the critical relation unless supplied.
    """

    n: int
    s: Fraction
    alpha: Fraction
    b: Fraction
    lam: int = 1
    p: Optional[Fraction] = None

    def __post_init__(self):
        for name in ("s", "alpha", "b"):
            object.__setattr__(self, name, rational(getattr(self, name)))
        _check_dimension(self.n)
        _check_regularity(self.s)
        _check_riesz_order(self.n, self.alpha)
        if self.b <= 0:
            raise ParameterError(f"singularity strength b must be positive, got {self.b}", tag="b_positive")
        if self.lam not in (-1, 0, 1):
            raise ParameterError("lam must be -1, 0 or +1", tag="lambda_sign")
        if self.p is None:
            object.__setattr__(self, "p", critical_power(self.n, self.s, self.alpha, self.b))
        else:
            object.__setattr__(self, "p", rational(self.p))

    @property
    def s_c(self) -> Fraction:
        return critical_index(self.n, self.b, self.alpha, self.p)

    @property
    def is_critical(self) -> bool:
        return self.s_c == self.s

    @property
    def scaling_exponent(self) -> Fraction:
        """Exponent of delta in u_delta(x, t) = delta**e * u(delta x, delta**2 t)."""
        return (2 - 2 * self.b + self.alpha) / (2 * (self.p - 1))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "s": str(self.s),
            "alpha": str(self.alpha),
            "b": str(self.b),
            "lam": self.lam,
            "p": str(self.p),
            "s_c": str(self.s_c),
        }


def alpha_lower_bound(n: int) -> Fraction:
    return max(Fraction(n - 2, 3), Fraction(n - 4))


def check_alpha_range(n: int, alpha) -> bool:
    """True iff max{(n-2)/3, n-4} < alpha < n."""
    _check_dimension(n)
    alpha = rational(alpha)
    return alpha_lower_bound(n) < alpha < n


def _discriminant(n: int) -> int:
    return 9 * n * n - 8 * n + 16


def b_lower_unclamped(n: int, s, alpha) -> AlgebraicBound:
    """alpha/2 + 1 - (n - 2s)(n + 4 + sqrt(9n^2 - 8n + 16)) / (8(n - 2))."""
    s, alpha = rational(s), rational(alpha)
    k = (n - 2 * s) / (8 * (n - 2))
    return AlgebraicBound(alpha / 2 + 1 - k * (n + 4), -k, _discriminant(n))


def b_upper(n: int, s, alpha) -> Fraction:
    s, alpha = rational(s), rational(alpha)
    return alpha / 2 + 1 - (n - 2 * s) / 2


def b_window(n: int, s, alpha) -> ExponentWindow:
    """Admissible range of b at fixed (n, s, alpha).

    The lower end is strict and may be irrational; the upper end is inclusive.
    An empty window is returned as such.

    Raises:
        ParameterError: alpha outside the admissible range, or s outside [0, 1]
    """
    s, alpha = rational(s), rational(alpha)
    _check_regularity(s)
    if not check_alpha_range(n, alpha):
        raise ParameterError(f"alpha = {alpha} is outside the admissible range for n = {n}", tag="alpha_range")
    lo = bound_max(Fraction(0), b_lower_unclamped(n, s, alpha))
    window = ExponentWindow(lo, b_upper(n, s, alpha), lo_strict=True, hi_strict=False)
    if window.is_empty():
        logger.info("b window empty for n=%s s=%s alpha=%s", n, s, alpha)
    return window


def p_upper_bound(n: int) -> AlgebraicBound:
    """(5n - 4 + sqrt(9n^2 - 8n + 16)) / (4(n - 2))."""
    _check_dimension(n)
    return AlgebraicBound(Fraction(5 * n - 4, 4 * (n - 2)), Fraction(1, 4 * (n - 2)), _discriminant(n))


def b_from_p(n: int, s, alpha, p: Union[Number, AlgebraicBound]) -> Number:
    """Invert the critical relation: the b that makes ``p`` critical at (n, s, alpha)."""
    s, alpha = rational(s), rational(alpha)
    value = AlgebraicBound.of(p) * (-(n - 2 * s) / 2) + (1 + alpha / 2 + (n - 2 * s) / 2)
    return simplify(value)
