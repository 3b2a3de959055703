"""Tests for rearrangements, Lorentz norms and the inequality harnesses."""

import math
from fractions import Fraction as F

import numpy as np
import pytest

from src.core.errors import LemmaHypothesisError, NonFiniteFieldError, ParameterError
from src.lorentz.grid import GridFunction, GridSpec
from src.lorentz.harness import (
    check_lemma_hypothesis,
    family_member,
    inequality_harness,
    lorentz_identity_suite,
)
from src.lorentz.norms import indicator_norm, lorentz_norm, nesting_constant, weak_norm_resolved
from src.lorentz.rearrangement import distribution_function, rearrangement

OMEGA_3 = 4.0 * math.pi / 3.0


@pytest.fixture
def grid():
    return GridSpec(3, 16, 4.0)


@pytest.fixture
def gaussian(grid):
    return GridFunction.radial(grid, lambda r: np.exp(-r * r))


def _indicator(grid, cells, seed=0):
    rng = np.random.default_rng(seed)
    values = np.zeros(grid.total_points)
    values[rng.permutation(grid.total_points)[:cells]] = 1.0
    return GridFunction(grid, values)


def test_indicator_rearrangement_is_a_step(grid):
    f = _indicator(grid, 100)
    profile = rearrangement(f)
    m = 100 * grid.cell_measure
    assert np.all(profile.f_star([0.0, 0.5 * m, m - 1e-9]) == 1.0)
    assert np.all(profile.f_star([m, 2 * m]) == 0.0)
    assert profile.support_measure() == pytest.approx(m)


def test_rearrangement_is_shuffle_invariant(gaussian):
    rng = np.random.default_rng(3)
    shuffled = gaussian.with_values(rng.permutation(gaussian.flat()))
    assert np.array_equal(rearrangement(gaussian).heights, rearrangement(shuffled).heights)


def test_rearrangement_rejects_non_finite(grid):
    values = np.zeros(grid.shape)
    values[0, 0, 0] = np.nan
    with pytest.raises(NonFiniteFieldError):
        rearrangement(GridFunction(grid, values))


def test_distribution_counts_cells(grid):
    f = _indicator(grid, 37)
    d = distribution_function(f, [-1.0, 0.0, 0.5, 1.0])
    np.testing.assert_allclose(d, [grid.total_points * grid.cell_measure, 37 * grid.cell_measure,
                                   37 * grid.cell_measure, 0.0])


def test_indicator_closed_form_random_draws(grid):
    rng = np.random.default_rng(0)
    for trial in range(100):
        cells = int(rng.integers(1, grid.total_points + 1))
        p = float(rng.uniform(1.1, 6.0))
        q = math.inf if trial % 10 == 0 else float(rng.uniform(1.0, 8.0))
        f = _indicator(grid, cells, seed=trial)
        expected = indicator_norm(cells * grid.cell_measure, p, q)
        assert lorentz_norm(f, p, q) == pytest.approx(expected, rel=1e-10)


def test_indicator_l2_example():
    grid = GridSpec(3, 8, 1.0)  # cell measure 1/64
    f = _indicator(grid, 256)  # measure 4
    assert lorentz_norm(f, 2, 2) == pytest.approx(2.0, rel=1e-12)


def test_maximal_norm_of_indicator(grid):
    cells = 200
    m = cells * grid.cell_measure
    f = _indicator(grid, cells)
    for p, q in [(2.0, 1.0), (3.0, 2.0), (1.5, 4.0)]:
        expected = m ** (1 / p) * ((p / q) * (p / (p - 1))) ** (1 / q)
        assert lorentz_norm(f, p, q, kind="maximal") == pytest.approx(expected, rel=1e-8)


def test_maximal_norm_dominates_rearrangement_norm(gaussian):
    for p, q in [(2.0, 2.0), (3.0, 1.0), (1.5, math.inf)]:
        assert lorentz_norm(gaussian, p, q, kind="maximal") >= lorentz_norm(gaussian, p, q)


def test_equimeasurability(gaussian):
    for p in (1.5, 2.0, 3.0, 7.0):
        assert lorentz_norm(gaussian, p, p) == pytest.approx(gaussian.lp_norm(p), rel=1e-12)


def test_homogeneity(gaussian):
    for c in (-3.7, 0.25, 1j):
        scaled = gaussian.with_values(gaussian.values * c)
        assert lorentz_norm(scaled, 2.5, 1.5) == pytest.approx(abs(c) * lorentz_norm(gaussian, 2.5, 1.5), rel=1e-12)


def test_monotonicity(gaussian):
    rng = np.random.default_rng(5)
    bigger = gaussian.with_values(gaussian.values * (1.0 + 0.5 * rng.random(gaussian.grid.shape)))
    for p, q in [(2.0, 1.0), (3.0, 3.0), (1.5, math.inf)]:
        assert lorentz_norm(gaussian, p, q) <= lorentz_norm(bigger, p, q)


def test_dilation_covariance(gaussian):
    for delta in (0.5, 2.0, 4.0):
        dilated = gaussian.matched_dilation(delta)
        for p, q in [(2.0, 1.0), (1.5, math.inf), (4.0, 2.0)]:
            expected = delta ** (-3 / p) * lorentz_norm(gaussian, p, q)
            assert lorentz_norm(dilated, p, q) == pytest.approx(expected, rel=1e-10)


def test_zero_field_has_zero_norm(grid):
    assert lorentz_norm(GridFunction(grid, np.zeros(grid.shape)), 2, 1) == 0.0


@pytest.mark.parametrize("p, q", [(1.0, 2.0), (0.5, 1.0), (math.inf, 2.0), (2.0, 0.5)])
def test_invalid_exponents_rejected(gaussian, p, q):
    with pytest.raises(ParameterError):
        lorentz_norm(gaussian, p, q)


def _truncated_inverse_radius(points):
    grid = GridSpec(3, points, 4.0)
    return GridFunction.radial(grid, lambda r: np.where(r < grid.half_width, 1.0 / r, 0.0))


def test_distribution_of_inverse_radius():
    f = _truncated_inverse_radius(64)
    for lam in (0.5, 0.75, 1.0):
        assert distribution_function(f, lam) == pytest.approx(OMEGA_3 / lam ** 3, rel=0.05)


@pytest.mark.parametrize("points", [64, pytest.param(128, marks=pytest.mark.slow)])
def test_weak_norm_of_inverse_radius(points):
    f = _truncated_inverse_radius(points)
    h = f.grid.spacing
    t_min = OMEGA_3 * (10 * h) ** 3
    t_max = OMEGA_3 * f.grid.half_width ** 3
    measured = weak_norm_resolved(f, 3.0, t_min, t_max)
    assert measured == pytest.approx(OMEGA_3 ** (1 / 3), rel=0.05)


def test_power_identity_indicator_example(grid):
    f = _indicator(grid, 300)
    lhs = lorentz_norm(f.with_values(f.values ** 2), 2, 4)
    rhs = lorentz_norm(f, 4, 8) ** 2
    m = 300 * grid.cell_measure
    assert lhs == pytest.approx(rhs, rel=1e-10)
    assert lhs == pytest.approx(m ** 0.5 * 0.5 ** 0.25, rel=1e-10)


@pytest.mark.parametrize("family", ["gaussian", "indicator", "truncated_power", "band_limited"])
def test_identity_suite_passes_on_every_family(grid, family):
    f = family_member(family, grid)
    checks = lorentz_identity_suite(f, 2, 1, math.inf)
    assert [c.name for c in checks] == ["power_identity", "nesting_bound", "nesting_dilation"]
    assert all(c.passed for c in checks), [c.to_dict() for c in checks if not c.passed]


def test_nesting_ratio_is_one_when_indices_agree(gaussian):
    checks = lorentz_identity_suite(gaussian, 3, 2, 2)
    nesting = next(c for c in checks if c.name == "nesting_bound")
    assert nesting.measured == pytest.approx(1.0, abs=1e-15)


def test_nesting_constant():
    assert nesting_constant(2, 1, math.inf) == pytest.approx(0.5)
    assert nesting_constant(2, 2, 2) == 1.0


def test_identity_suite_rejects_decreasing_indices(gaussian):
    with pytest.raises(ParameterError):
        lorentz_identity_suite(gaussian, 2, 4, 2)


def test_holder_indicator_ratio_is_one():
    grid = GridSpec(3, 32, 6.0)
    report = inequality_harness(
        "indicator", "holder", {"p": 2, "q": 1, "p1": 4, "q1": 2, "p2": 4, "q2": 2}, grid
    )
    for ratio in report.ratios.values():
        assert ratio == pytest.approx(1.0, rel=1e-10)
    assert report.passed


def test_hls_ratio_dilation_invariant():
    grid = GridSpec(3, 32, 8.0)
    report = inequality_harness("gaussian", "hls", {"alpha": 2, "p": F(6, 5), "q": 6}, grid)
    assert report.spread < 1e-3
    assert report.passed


def test_sobolev_identity_at_zero_regularity():
    grid = GridSpec(3, 16, 6.0)
    report = inequality_harness("gaussian", "sobolev", {"p": 2, "p1": 2, "s": 0}, grid)
    for ratio in report.ratios.values():
        assert ratio == pytest.approx(1.0, rel=1e-12)


def test_sobolev_ratio_dilation_stable():
    grid = GridSpec(3, 32, 6.0)
    report = inequality_harness("gaussian", "sobolev", {"p": 2, "p1": 3, "s": F(1, 2)}, grid)
    assert report.passed
    assert {row["dilation"] for row in report.to_rows()} == {"1/2", "1", "2"}


@pytest.mark.parametrize(
    "lemma, exponents",
    [
        ("holder", {"p": 3, "q": 1, "p1": 4, "q1": 2, "p2": 4, "q2": 2}),
        ("hls", {"alpha": 2, "p": 2, "q": 6}),
        ("sobolev", {"p": 2, "p1": 2, "s": F(1, 2)}),
    ],
)
def test_lemma_hypothesis_violations_are_named(lemma, exponents):
    with pytest.raises(LemmaHypothesisError) as info:
        check_lemma_hypothesis(lemma, {k: F(v) for k, v in exponents.items()}, 3)
    assert info.value.tag == lemma


def test_unknown_family_rejected(grid):
    with pytest.raises(ParameterError):
        family_member("sawtooth", grid)
