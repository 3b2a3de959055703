"""Tests for Fourier multipliers, the Riesz oracle, Sobolev norms and snapshots."""

import math
from dataclasses import dataclass
from fractions import Fraction as F
from typing import List

import numpy as np
import pytest

from src.core.errors import NonFiniteFieldError, ParameterError
from src.exponents.critical import ParameterPoint
from src.lorentz.grid import GridFunction, GridSpec
from src.lorentz.norms import lorentz_norm
from src.spectral.lattice import band_radius, forward, inverse, lattice_for, plancherel_sum, spectral_tail_fraction
from src.spectral.norms import homogeneous_sobolev_norm, norm_suite, spacetime_norm, time_norm
from src.spectral.operators import (
    RieszOperator,
    bessel,
    fractional_laplacian,
    multiplier_apply,
    propagator,
    riesz,
    riesz_constant,
)
from src.spectral.oracle import riesz_oracle_error
from src.spectral.snapshot import load_snapshot, save_snapshot


@dataclass
class _Samples:
    times: List[float]
    fields: List[GridFunction]


def _relative_l2(a: GridFunction, b: GridFunction) -> float:
    return float(np.linalg.norm(a.values - b.values) / np.linalg.norm(b.values))


@pytest.fixture
def grid():
    return GridSpec(3, 32, 8.0)


@pytest.fixture
def gaussian(grid):
    return GridFunction.radial(grid, lambda r: np.exp(-0.5 * r * r))


def test_lattice_has_unique_zero_mode(grid):
    lattice = lattice_for(grid)
    assert np.count_nonzero(lattice.squared_norm == 0) == 1
    assert lattice.axis[1] == pytest.approx(math.pi / grid.half_width)
    assert lattice.nyquist == pytest.approx(math.pi / grid.spacing)


def test_plancherel_round_trip(gaussian):
    rng = np.random.default_rng(0)
    values = gaussian.values * (1 + 0.3 * rng.standard_normal(gaussian.grid.shape))
    np.testing.assert_allclose(inverse(forward(values)).real, values, atol=1e-12)
    f = gaussian.with_values(values)
    assert plancherel_sum(f.grid, forward(values)) == pytest.approx(f.l2_norm() ** 2, rel=1e-12)


def test_zero_order_laplacian_is_identity(gaussian):
    out = fractional_laplacian(gaussian, 0)
    assert not out.is_complex
    np.testing.assert_allclose(out.values, gaussian.values, atol=1e-12)


def test_laplacian_composition(gaussian):
    twice = fractional_laplacian(fractional_laplacian(gaussian, 0.5), 0.75)
    once = fractional_laplacian(gaussian, 1.25)
    assert _relative_l2(twice, once) < 1e-10


def test_negative_order_rejected(gaussian):
    with pytest.raises(ParameterError):
        fractional_laplacian(gaussian, -1)


def test_multiplier_rejects_non_finite(grid):
    values = np.ones(grid.shape)
    values[1, 2, 3] = np.inf
    with pytest.raises(NonFiniteFieldError):
        multiplier_apply(GridFunction(grid, values), lambda k2: k2)


def test_bessel_zero_order_is_identity(gaussian):
    np.testing.assert_allclose(bessel(gaussian, 0).values, gaussian.values, atol=1e-12)


def test_propagator_matches_free_gaussian():
    grid = GridSpec(3, 64, 12.0)
    t = 0.1
    u0 = GridFunction.radial(grid, lambda r: np.exp(-0.5 * r * r))
    z = 1 + 2j * t
    exact = GridFunction.radial(grid, lambda r: z ** -1.5 * np.exp(-r * r / (2 * z)))
    assert _relative_l2(propagator(u0, t), exact) < 1e-6


def test_propagator_unitary_and_group_law(gaussian):
    u = propagator(gaussian, 0.3)
    assert u.l2_norm() == pytest.approx(gaussian.l2_norm(), rel=1e-12)
    composed = propagator(propagator(gaussian, 0.3), 0.45)
    assert _relative_l2(composed, propagator(gaussian, 0.75)) < 1e-12
    back = propagator(u, -0.3)
    np.testing.assert_allclose(back.values, gaussian.values, atol=1e-12)


def test_riesz_constant_newtonian():
    assert riesz_constant(3, 2) == pytest.approx(1 / (4 * math.pi), rel=1e-14)


@pytest.mark.parametrize("alpha", [0, 3, -1, 3.5])
def test_riesz_order_out_of_range(alpha):
    with pytest.raises(ParameterError):
        RieszOperator(alpha, 3)


def test_riesz_unknown_zero_mode():
    with pytest.raises(ParameterError):
        RieszOperator(2.0, 3, zero_mode="ignore")


def test_riesz_of_real_input_is_real(gaussian):
    out = riesz(gaussian, 2)
    assert np.max(np.abs(out.values.imag)) < 1e-12 * np.max(np.abs(out.values.real))


def test_riesz_is_symmetric(grid):
    f = GridFunction.radial(grid, lambda r: np.exp(-r * r))
    g = GridFunction.from_function(grid, lambda x, y, z: np.exp(-((x - 1) ** 2 + y * y + (z + 0.5) ** 2)))
    left = np.sum(riesz(f, 1.5).values.real * g.values)
    right = np.sum(f.values * riesz(g, 1.5).values.real)
    assert left == pytest.approx(right, rel=1e-10)


def test_riesz_regularized_zero_mode_is_finite(gaussian):
    out = riesz(gaussian, 2, zero_mode="regularize")
    assert np.all(np.isfinite(out.values))


def test_riesz_matches_quadrature_oracle():
    grid = GridSpec(3, 32, 8.0)
    error = riesz_oracle_error(grid, lambda r: np.exp(-r * r) - 0.125 * np.exp(-r * r / 4), 2.0)
    assert error < 1e-3


def test_spectral_tail_and_band_radius(grid, gaussian):
    assert spectral_tail_fraction(grid, forward(gaussian.values)) < 1e-3
    rng = np.random.default_rng(1)
    assert spectral_tail_fraction(grid, forward(rng.standard_normal(grid.shape))) > 0.5
    assert 0 < band_radius(grid, forward(gaussian.values)) < lattice_for(grid).nyquist


def test_norm_suite_at_zero_regularity(gaussian):
    suite = norm_suite(gaussian, 0, 3)
    assert suite.h_s == pytest.approx(gaussian.l2_norm(), rel=1e-12)
    assert suite.hdot_s == pytest.approx(gaussian.l2_norm(), rel=1e-12)
    assert suite.equivalence_ratio == pytest.approx(1.0, rel=1e-12)


def test_norm_suite_ratio_bounds_at_r_two(gaussian):
    # (1 + x)^s <= 2^max(s - 1, 0) (1 + x^s), so the ratio is at most 2^(max(s, 1) / 2)
    for s in (0.5, 1.0, 2.0):
        suite = norm_suite(gaussian, s, 2)
        assert 1 - 1e-12 <= suite.equivalence_ratio <= 2 ** (max(s, 1.0) / 2) + 1e-12
        assert suite.sobolev_lorentz == pytest.approx(suite.h_s, rel=1e-10)


def test_norm_suite_ratio_within_factor_two(gaussian):
    for s in (0.5, 1.0):
        for r in (1.5, 3.0, 6.0):
            assert 0.5 <= norm_suite(gaussian, s, r).equivalence_ratio <= 2.0


def test_norm_suite_rejects_bad_inputs(gaussian):
    with pytest.raises(ParameterError):
        norm_suite(gaussian, -0.5, 2)
    with pytest.raises(ParameterError):
        norm_suite(gaussian, 0.5, 1)


def test_homogeneous_norm_scaling(gaussian):
    point = ParameterPoint(3, F(0), F(2), F(1, 2))
    e = float(point.scaling_exponent)
    dilated = gaussian.matched_dilation(2.0, exponent=e)
    for s in (0.0, 0.5, 1.0):
        ratio = homogeneous_sobolev_norm(dilated, s) / homogeneous_sobolev_norm(gaussian, s)
        assert ratio == pytest.approx(2.0 ** (s - 1.5 + e), rel=1e-6)
    s_c = float(point.s_c)
    assert homogeneous_sobolev_norm(dilated, s_c) == pytest.approx(homogeneous_sobolev_norm(gaussian, s_c), rel=1e-6)


def test_spacetime_norm_of_constant_field(gaussian):
    times = list(np.linspace(0.0, 0.8, 9))
    samples = _Samples(times, [gaussian] * len(times))
    spatial = lorentz_norm(gaussian, 3, 2)
    assert spacetime_norm(samples, 4, 3) == pytest.approx(0.8 ** 0.25 * spatial, rel=1e-12)
    assert spacetime_norm(samples, math.inf, 3) == pytest.approx(spatial, rel=1e-12)


def test_spacetime_norm_time_sampling(gaussian):
    def flow(count):
        times = list(np.linspace(0.0, 0.5, count))
        return _Samples(times, [propagator(gaussian, t) for t in times])

    coarse = spacetime_norm(flow(101), 4, 3)
    fine = spacetime_norm(flow(201), 4, 3)
    assert abs(coarse - fine) / fine < 1e-4


def test_spacetime_norm_rejects_empty():
    with pytest.raises(ParameterError):
        spacetime_norm(_Samples([], []), 4, 3)


def test_snapshot_round_trip(tmp_path, gaussian):
    u = propagator(gaussian, 0.2)
    path = save_snapshot(u, tmp_path / "snap" / "u.bin")
    loaded = load_snapshot(path)
    assert loaded.grid == u.grid
    np.testing.assert_array_equal(loaded.values, u.values)
    assert path.stat().st_size == 16 + 16 * u.grid.total_points


def test_snapshot_rejects_truncated_payload(tmp_path, gaussian):
    path = save_snapshot(gaussian, tmp_path / "u.bin")
    path.write_bytes(path.read_bytes()[:-16])
    with pytest.raises(ParameterError):
        load_snapshot(path)


def test_time_norm_single_sample():
    assert time_norm([0.0], [2.5], math.inf) == 2.5
    with pytest.raises(ParameterError) as info:
        time_norm([0.0], [2.5], 4.0)
    assert info.value.tag == "trajectory"
