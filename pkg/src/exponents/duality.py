"""Admissible pairs, the dual pair of the nonlinear estimate and its Holder splits."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Union

from ..core.errors import DualPairError
from .algebraic import rational
from .constraints import r_window
from .critical import ParameterPoint

Exponent = Union[int, Fraction, str, None]


def _reciprocal(value: Exponent) -> Fraction:
    """1/value, with None or "inf" mapping to 0."""
    if value is None or (isinstance(value, str) and value.strip().lower() in ("inf", "infinity")):
        return Fraction(0)
    value = rational(value)
    if value <= 0:
        raise DualPairError(f"exponent must be positive, got {value}")
    return 1 / value


def _from_reciprocal(inv: Fraction) -> Optional[Fraction]:
    return None if inv == 0 else 1 / inv


@dataclass(frozen=True)
class AdmissiblePair:
    """Space-time exponents (q, r) in dimension n, stored as reciprocals (1/q = 0 means q = inf)."""

    n: int
    inv_q: Fraction
    inv_r: Fraction

    @classmethod
    def from_exponents(cls, n: int, q: Exponent, r: Exponent) -> "AdmissiblePair":
        return cls(n, _reciprocal(q), _reciprocal(r))

    @classmethod
    def from_spatial(cls, n: int, x: Fraction) -> "AdmissiblePair":
        """The admissible pair with n/r = x."""
        x = rational(x)
        return cls(n, (Fraction(n, 2) - x) / 2, x / n)

    @property
    def q(self) -> Optional[Fraction]:
        return _from_reciprocal(self.inv_q)

    @property
    def r(self) -> Optional[Fraction]:
        return _from_reciprocal(self.inv_r)

    @property
    def scaling_identity_holds(self) -> bool:
        return 2 * self.inv_q + self.n * self.inv_r == Fraction(self.n, 2)

    @property
    def in_range(self) -> bool:
        """2 <= q <= inf and 2 <= r <= 2n/(n - 2)."""
        return 0 <= self.inv_q <= Fraction(1, 2) and Fraction(self.n - 2, 2 * self.n) <= self.inv_r <= Fraction(1, 2)

    def is_admissible(self) -> bool:
        return self.scaling_identity_holds and self.in_range

    def to_dict(self) -> dict:
        return {
            "q": "inf" if self.q is None else str(self.q),
            "r": "inf" if self.r is None else str(self.r),
            "admissible": self.is_admissible(),
        }


@dataclass(frozen=True)
class DualPairResult:
    """Conjugate exponents of the nonlinear term and the resulting pair."""

    inv_q_prime: Fraction
    inv_r_prime: Fraction
    pair: AdmissiblePair

    @property
    def q_prime(self) -> Optional[Fraction]:
        return _from_reciprocal(self.inv_q_prime)

    @property
    def r_prime(self) -> Fraction:
        return 1 / self.inv_r_prime

    @property
    def admissible(self) -> bool:
        return self.pair.is_admissible()

    def to_dict(self) -> dict:
        return {
            "q_prime": "inf" if self.q_prime is None else str(self.q_prime),
            "r_prime": str(self.r_prime),
            "pair": self.pair.to_dict(),
        }


def dual_pair(point: ParameterPoint, q: Exponent, r: Exponent) -> DualPairResult:
    """Pair (q~, r~) whose dual carries the nonlinearity in the Strichartz estimate.

    1/q~' = (2p - 1)/q and 1/r~' = (2p - 1)/r + (2b - alpha - 2s(p - 1))/n.

    Raises:
        DualPairError: (q, r) not admissible, n/r outside the window, or a
            conjugate index outside (1, inf)
    """
    pair = AdmissiblePair.from_exponents(point.n, q, r)
    return dual_of(point, pair)


def dual_of(point: ParameterPoint, pair: AdmissiblePair) -> DualPairResult:
    if not pair.is_admissible():
        raise DualPairError(f"(q, r) = ({pair.q}, {pair.r}) is not admissible", tag="admissible_pair")
    n, s, a, b, p = point.n, point.s, point.alpha, point.b, point.p
    x = n * pair.inv_r
    if not r_window(point).contains(x):
        raise DualPairError(f"n/r = {x} lies outside the window", tag="strichartz_window")
    inv_qp = (2 * p - 1) * pair.inv_q
    inv_rp = (2 * p - 1) * pair.inv_r + (2 * b - a - 2 * s * (p - 1)) / n
    if not 0 <= inv_qp <= 1:
        raise DualPairError(f"1/q~' = {inv_qp} leaves [0, 1]", tag="dual_time_index")
    if not 0 < inv_rp < 1:
        raise DualPairError(f"1/r~' = {inv_rp} leaves (0, 1)", tag="dual_space_index")
    result = AdmissiblePair(n, 1 - inv_qp, 1 - inv_rp)
    return DualPairResult(inv_qp, inv_rp, result)


SECOND_INDEX_NAMES = (
    "4(p+1)/(p+2)",
    "4(p+1)/p",
    "4(p+1)/(p-1)",
    "4(p+1)/(p+3)",
    "2(2p-1)/(p-1)",
    "2(2p-1)/p",
    "2(2p-1)/3",
    "2(2p-1)/(p-2)",
)


def second_indices(p: Fraction) -> Dict[str, Optional[Fraction]]:
    """Lorentz second indices of the splits; None marks the p = 2 degeneracy."""
    return {
        "4(p+1)/(p+2)": 4 * (p + 1) / (p + 2),
        "4(p+1)/p": 4 * (p + 1) / p,
        "4(p+1)/(p-1)": 4 * (p + 1) / (p - 1),
        "4(p+1)/(p+3)": 4 * (p + 1) / (p + 3),
        "2(2p-1)/(p-1)": 2 * (2 * p - 1) / (p - 1),
        "2(2p-1)/p": 2 * (2 * p - 1) / p,
        "2(2p-1)/3": 2 * (2 * p - 1) / 3,
        "2(2p-1)/(p-2)": None if p == 2 else 2 * (2 * p - 1) / (p - 2),
    }


@dataclass
class HolderSplit:
    """First Lorentz indices of the two Holder splits (as reciprocals) and related indices."""

    inv_r1: Fraction
    inv_r3: Fraction
    inv_r5: Fraction
    inv_r7: Fraction
    inv_r_tilde_prime: Fraction
    second: Dict[str, Optional[Fraction]]
    intermediate: Dict[str, Fraction] = field(default_factory=dict)
    violations: List[str] = field(default_factory=list)
    flags: List[str] = field(default_factory=list)

    @property
    def first_indices(self) -> Dict[str, Fraction]:
        return {"r1": 1 / self.inv_r1 if self.inv_r1 else None,
                "r3": 1 / self.inv_r3 if self.inv_r3 else None,
                "r5": 1 / self.inv_r5 if self.inv_r5 else None,
                "r7": 1 / self.inv_r7 if self.inv_r7 else None}

    @property
    def identities_hold(self) -> bool:
        return (
            self.inv_r1 + self.inv_r3 == self.inv_r_tilde_prime
            and self.inv_r5 + self.inv_r7 == self.inv_r_tilde_prime
        )

    @property
    def valid(self) -> bool:
        return not self.violations and self.identities_hold

    def to_dict(self) -> dict:
        return {
            "first": {k: None if v is None else str(v) for k, v in self.first_indices.items()},
            "second": {k: None if v is None else str(v) for k, v in self.second.items()},
            "intermediate": {k: str(1 / v) if v else None for k, v in self.intermediate.items()},
            "violations": list(self.violations),
            "flags": list(self.flags),
            "identities_hold": self.identities_hold,
        }


def holder_splits(point: ParameterPoint, r: Exponent) -> HolderSplit:
    """Holder splits of 1/r~' used for the nonlinearity and its derivative.

    Every first index and every intermediate index must lie strictly in
    (1, inf); the names of those that do not are listed in ``violations``.
    """
    n, s, a, b, p = point.n, point.s, point.alpha, point.b, point.p
    x = n * _reciprocal(r)
    inv = {
        "r1": ((p - 1) * x + b - s * (p - 2)) / n,
        "r3": (p * x + b - a - s * p) / n,
        "r5": ((p - 1) * x + b - s * (p - 1)) / n,
        "r7": (p * x + b - a - s * (p - 1)) / n,
    }
    intermediate = {
        "sobolev_target": (x - s) / n,
        "hls_input_r3": (p * x + b - s * p) / n,
        "hls_input_r7": (p * x + b - s * (p - 1)) / n,
        "weight": b / n,
        "weight_derivative": (b + s) / n,
    }
    violations = [name for name, v in {**inv, **intermediate}.items() if not 0 < v < 1]
    flags = []
    second = second_indices(p)
    if second["2(2p-1)/(p-2)"] is None:
        flags.append("endpoint_split_requires_p_above_two")
    return HolderSplit(
        inv_r1=inv["r1"],
        inv_r3=inv["r3"],
        inv_r5=inv["r5"],
        inv_r7=inv["r7"],
        inv_r_tilde_prime=(2 * p - 1) * x / n + (2 * b - a - 2 * s * (p - 1)) / n,
        second=second,
        intermediate=intermediate,
        violations=violations,
        flags=flags,
    )
