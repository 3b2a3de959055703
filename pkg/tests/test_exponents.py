"""Tests for critical exponents, n/r windows, dual pairs and Holder splits."""

import random
from fractions import Fraction as F

import pytest

from src.core.errors import DegenerateParameterError, DualPairError, ParameterError
from src.exponents.algebraic import AlgebraicBound
from src.exponents.constraints import (
    RAW_WINDOW_NAMES,
    SIDE_CONDITION_NAMES,
    derived_windows,
    nonemptiness_conditions,
    r_window,
    raw_constraint_windows,
    side_conditions,
    window_equivalence_oracle,
)
from src.exponents.critical import (
    ParameterPoint,
    b_from_p,
    b_lower_unclamped,
    b_upper,
    b_window,
    check_alpha_range,
    critical_exponents,
    critical_index,
    p_upper_bound,
)
from src.exponents.duality import AdmissiblePair, dual_of, dual_pair, holder_splits
from src.exponents.windows import ExponentWindow


@pytest.fixture
def mass_critical_point():
    return ParameterPoint(3, F(0), F(2), F(1, 2))


@pytest.fixture
def energy_critical_point():
    return ParameterPoint(3, F(1), F(6, 5), F(1))


def test_critical_exponents_examples():
    p, s_c, p_mass, p_energy = critical_exponents(3, F(0), F(2), F(1, 2))
    assert (p, s_c, p_mass) == (F(2), F(0), F(2))
    assert p_energy == F(4)

    p, s_c, _, _ = critical_exponents(3, F(1), F(6, 5), F(1))
    assert p == F(11, 5)
    assert s_c == F(1)


def test_round_trip_of_critical_index():
    rng = random.Random(1)
    for _ in range(500):
        n = rng.randint(3, 8)
        s = F(rng.randint(0, 8), 8)
        alpha = F(rng.randint(1, 8 * n - 1), 8)
        b = F(rng.randint(1, 40), 16)
        if 2 - 2 * b + alpha == 0:
            continue
        p, s_c, _, _ = critical_exponents(n, s, alpha, b)
        assert s_c == s
        assert critical_index(n, b, alpha, p) == s


def test_parameter_point_critical_flag(mass_critical_point):
    assert mass_critical_point.is_critical
    assert not ParameterPoint(3, F(0), F(2), F(1, 2), p=F(3)).is_critical


def test_mass_critical_power_has_zero_index():
    for n, alpha, b in [(3, F(2), F(1, 2)), (4, F(5, 2), F(1, 3)), (6, F(3), F(7, 4))]:
        _, _, p_mass, _ = critical_exponents(n, F(0), alpha, b)
        assert critical_index(n, b, alpha, p_mass) == 0


def test_degenerate_and_invalid_parameters():
    with pytest.raises(DegenerateParameterError):
        critical_exponents(3, F(0), F(2), F(2))
    with pytest.raises(ParameterError):
        critical_exponents(2, F(0), F(1), F(1, 2))
    with pytest.raises(ParameterError):
        critical_exponents(3, F(0), F(3), F(1, 2))
    with pytest.raises(ParameterError):
        ParameterPoint(3, F(0), F(2), F(0))


def test_check_alpha_range():
    assert check_alpha_range(3, F(2))
    assert not check_alpha_range(6, F(2))
    assert not check_alpha_range(3, F(1, 3))
    assert not check_alpha_range(3, F(3))


def test_b_window_irrational_lower_bound():
    w = b_window(3, F(1), F(2))
    assert w.lo == AlgebraicBound(F(9, 8), F(-1, 8), 73)
    assert float(w.lo) == pytest.approx(0.0570, abs=1e-4)
    assert w.hi == F(3, 2)
    assert w.lo_strict and not w.hi_strict


def test_b_window_clamped_at_zero():
    w = b_window(3, F(0), F(2))
    assert w.lo == 0
    assert w.hi == F(1, 2)
    assert w.contains(F(1, 2))
    assert not w.contains(F(0))


def test_b_window_rejects_alpha_outside_range():
    with pytest.raises(ParameterError) as exc:
        b_window(6, F(0), F(2))
    assert exc.value.tag == "alpha_range"


def test_upper_b_endpoint_gives_power_two():
    for n, s, alpha in [(3, F(1, 2), F(2)), (4, F(1), F(3)), (5, F(1, 4), F(4))]:
        b = b_upper(n, s, alpha)
        assert b_window(n, s, alpha).contains(b)
        assert ParameterPoint(n, s, alpha, b).p == 2


def test_p_upper_bound():
    assert p_upper_bound(3) == AlgebraicBound(F(11, 4), F(1, 4), 73)
    assert float(p_upper_bound(3)) == pytest.approx(4.886, abs=1e-3)
    assert p_upper_bound(4) == AlgebraicBound(F(2), F(1), 2)
    assert float(p_upper_bound(4)) == pytest.approx(2 + 2 ** 0.5, rel=1e-12)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 9])
@pytest.mark.parametrize("s", [F(0), F(1, 4), F(1)])
def test_p_upper_bound_maps_to_b_lower_bound(n, s):
    alpha = F(n) - F(1, 2)
    assert b_from_p(n, s, alpha, p_upper_bound(n)) == b_lower_unclamped(n, s, alpha)
    assert b_from_p(n, s, alpha, F(2)) == b_upper(n, s, alpha)


# Windows on n/r

def test_r_window_examples(mass_critical_point, energy_critical_point):
    assert r_window(mass_critical_point) == ExponentWindow.open(F(5, 6), F(7, 6))
    assert r_window(energy_critical_point) == ExponentWindow.open(F(12, 11), F(41, 34))


def test_r_window_empty_despite_ranges():
    point = ParameterPoint(3, F(1), F(2), F(1))
    assert point.p == 3
    w = r_window(point)
    assert w.is_empty()
    assert (w.lo, w.hi) == (F(4, 3), F(13, 10))
    conditions = nonemptiness_conditions(point)
    assert not conditions["riesz_plus_regularity_below_dimension"]


def test_r_window_requires_power_two():
    point = ParameterPoint(3, F(0), F(1, 2), F(1, 2))
    with pytest.raises(ParameterError):
        r_window(point)


def test_raw_windows_examples(mass_critical_point):
    system = raw_constraint_windows(mass_critical_point)
    assert system.windows["dual_pair_range"] == ExponentWindow.closed(F(5, 6), F(7, 6))
    assert derived_windows(mass_critical_point)["holder_group"] == ExponentWindow.open(F(3, 4), F(5, 4))
    assert system.side_conditions_hold


def test_raw_window_names_are_stable(mass_critical_point, energy_critical_point):
    for point in (mass_critical_point, energy_critical_point):
        system = raw_constraint_windows(point)
        assert tuple(system.windows) == RAW_WINDOW_NAMES
        assert tuple(system.side_conditions) == SIDE_CONDITION_NAMES
        data = system.to_dict()
        assert list(data["windows"]) == list(RAW_WINDOW_NAMES)
        assert list(data["side_conditions"]) == list(SIDE_CONDITION_NAMES)


def test_side_condition_weight_derivative():
    point = ParameterPoint(3, F(1), F(5, 2), F(2))
    assert not side_conditions(point)["weight_derivative_integrable"]


def test_oracle_examples(mass_critical_point, energy_critical_point):
    verdict = window_equivalence_oracle(mass_critical_point)
    assert verdict.passed
    assert verdict.intersection == ExponentWindow.closed(F(5, 6), F(7, 6))
    assert verdict.intersection.interior() == ExponentWindow.open(F(5, 6), F(7, 6))
    assert len(verdict.boundary_notes) == 2

    verdict = window_equivalence_oracle(energy_critical_point)
    assert verdict.passed
    assert verdict.intersection.interior() == ExponentWindow.open(F(12, 11), F(41, 34))


def test_oracle_reports_witness_when_side_condition_fails():
    # s >= alpha: the raw system is infeasible while the theorem's window is not empty
    point = ParameterPoint(3, F(1), F(1, 2), F(1, 4))
    assert point.p >= 2
    assert not r_window(point).is_empty()
    verdict = window_equivalence_oracle(point)
    assert not verdict.passed
    assert verdict.witness is not None
    assert r_window(point).contains(verdict.witness)


def test_final_derived_window_is_r_window(energy_critical_point):
    assert derived_windows(energy_critical_point)["final"] == r_window(energy_critical_point)


# Dual pairs and Holder splits

def test_dual_pair_self_dual(mass_critical_point):
    result = dual_pair(mass_critical_point, 4, 3)
    assert result.q_prime == F(4, 3)
    assert result.r_prime == F(3, 2)
    assert (result.pair.q, result.pair.r) == (F(4), F(3))
    assert result.admissible


def test_dual_pair_identity_at_energy_point(energy_critical_point):
    pair = AdmissiblePair.from_spatial(3, F(23, 20))
    result = dual_of(energy_critical_point, pair)
    assert 2 * result.pair.inv_q + 3 * result.pair.inv_r == F(3, 2)
    assert result.admissible


def test_dual_pair_endpoint_and_bad_pairs(mass_critical_point):
    with pytest.raises(DualPairError):
        dual_pair(mass_critical_point, "inf", 2)
    with pytest.raises(DualPairError):
        dual_pair(mass_critical_point, 4, 4)


def test_holder_split_example(mass_critical_point):
    split = holder_splits(mass_critical_point, 3)
    assert split.inv_r1 == F(1, 2)
    assert split.inv_r3 == F(1, 6)
    assert split.inv_r1 + split.inv_r3 == F(2, 3)
    assert split.identities_hold
    assert split.valid
    assert split.second["4(p+1)/(p+2)"] == 3
    assert split.second["4(p+1)/p"] == 6
    assert split.second["2(2p-1)/(p-1)"] == 6
    assert split.second["2(2p-1)/p"] == 3
    assert split.second["2(2p-1)/(p-2)"] is None
    assert "endpoint_split_requires_p_above_two" in split.flags


def test_holder_split_names_violations(mass_critical_point):
    # n/r = 3/2 lies outside the window: the HLS input index drops below 1
    split = holder_splits(mass_critical_point, 2)
    assert not split.valid
    assert split.identities_hold
    assert "hls_input_r3" in split.violations
    assert "r1" not in split.violations
