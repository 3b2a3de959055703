"""Tests for the theorem gate, the containment remark check and scans."""

import random
from fractions import Fraction as F

import pytest

from src.core.errors import ParameterError
from src.core.manifest import SCATTER_POINT
from src.exponents.constraints import window_equivalence_oracle
from src.exponents.critical import alpha_lower_bound, b_upper
from src.exponents.duality import AdmissiblePair, dual_of, holder_splits
from src.exponents.gate import (
    GATE_CHECKS,
    rational_grid,
    remark_containment_check,
    scan,
    theorem_gate,
)
from src.exponents.windows import ExponentWindow


def _gate_passing_points(count, seed=0):
    rng = random.Random(seed)
    points = []
    attempts = 0
    while len(points) < count and attempts < 200_000:
        attempts += 1
        n = rng.choice([3, 4, 5, 6])
        s = rng.choice([F(0), F(1, 4), F(1, 2), F(3, 4), F(1)])
        lo = alpha_lower_bound(n)
        alpha = lo + (n - lo) * F(rng.randint(1, 47), 48)
        top = b_upper(n, s, alpha)
        if top <= 0:
            continue
        b = top * F(rng.randint(1, 48), 48)
        verdict = theorem_gate(n, s, alpha, b)
        if verdict.passed:
            points.append(verdict)
    return points


@pytest.fixture(scope="module")
def passing_verdicts():
    return _gate_passing_points(1000)


def test_gate_passes_mass_critical_point():
    verdict = theorem_gate(3, F(0), F(2), F(1, 2))
    assert verdict.verdict == "PASS"
    assert verdict.window == ExponentWindow.open(F(5, 6), F(7, 6))
    assert (verdict.sample.q, verdict.sample.r) == (F(4), F(3))
    assert (verdict.dual.pair.q, verdict.dual.pair.r) == (F(4), F(3))
    assert [c.name for c in verdict.checks] == list(GATE_CHECKS)


def test_gate_passes_energy_critical_point():
    verdict = theorem_gate(3, F(1), F(6, 5), F(1))
    assert verdict.passed
    assert verdict.window == ExponentWindow.open(F(12, 11), F(41, 34))


def test_gate_fails_on_empty_window():
    verdict = theorem_gate(3, F(1), F(2), F(1))
    assert verdict.verdict == "FAIL"
    assert verdict.check("alpha_range").passed
    assert verdict.check("b_range").passed
    assert verdict.failures[0] == "strichartz_window"
    assert verdict.findings
    assert [c.name for c in verdict.checks] == list(GATE_CHECKS)


def test_gate_fails_on_alpha_range():
    verdict = theorem_gate(3, F(0), F(1, 4), F(1, 10))
    assert not verdict.passed
    assert verdict.failures[0] == "alpha_range"


def test_gate_reports_parameter_domain():
    verdict = theorem_gate(3, F(0), F(2), F(-1))
    assert verdict.failures[0] == "parameter_domain"
    assert len(verdict.checks) == len(GATE_CHECKS)


def test_gate_json_is_exact():
    data = theorem_gate(3, F(0), F(2), F(1, 2)).to_dict()
    assert data["window"]["lo"] == "5/6"
    assert data["window"]["hi"] == "7/6"
    assert data["sample"] == {"q": "4", "r": "3", "admissible": True}


def test_elimination_audit_on_gate_passing_points(passing_verdicts):
    assert len(passing_verdicts) == 1000
    ns = {v.n for v in passing_verdicts}
    assert ns == {3, 4, 5, 6}
    for verdict in passing_verdicts:
        assert window_equivalence_oracle(verdict.point).passed, verdict.to_dict()["input"]


@pytest.mark.parametrize("draws", [1000, pytest.param(10_000, marks=pytest.mark.slow)])
def test_dual_identity_inside_gate_windows(passing_verdicts, draws):
    rng = random.Random(42)
    for _ in range(draws):
        verdict = rng.choice(passing_verdicts)
        w = verdict.window
        x = w.lo + (w.hi - w.lo) * F(rng.randint(1, 999), 1000)
        pair = AdmissiblePair.from_spatial(verdict.n, x)
        result = dual_of(verdict.point, pair)
        assert 2 * result.pair.inv_q + verdict.n * result.pair.inv_r == F(verdict.n, 2)
        assert result.pair.in_range
        split = holder_splits(verdict.point, pair.r)
        assert all(0 < v < 1 for v in (split.inv_r1, split.inv_r3, split.inv_r5, split.inv_r7))
        assert split.identities_hold


@pytest.mark.parametrize("n", range(3, 11))
@pytest.mark.parametrize("s", [F(0), F(1, 4), F(49, 100)])
def test_remark_containment(n, s):
    checks = remark_containment_check(n, s)
    assert [c.name for c in checks] == ["alpha_range_contained", "b_range_contained"]
    assert all(c.passed for c in checks)


def test_remark_containment_rejects_large_s():
    with pytest.raises(ParameterError):
        remark_containment_check(3, F(1, 2))


def test_rational_grid():
    assert rational_grid(F(0), F(1), 5) == [F(0), F(1, 4), F(1, 2), F(3, 4), F(1)]


def test_scan_rows_replay_single_gate():
    alphas = rational_grid(F(1, 2), F(5, 2), 5)
    bs = rational_grid(F(1, 8), F(1), 4)
    rows = scan(3, F(0), alphas, bs, threads=1)
    assert len(rows) == 20
    assert [(r.alpha, r.b) for r in rows] == [(a, b) for a in alphas for b in bs]
    for row in rows:
        assert theorem_gate(3, F(0), row.alpha, row.b).verdict == row.verdict


@pytest.mark.slow
def test_scan_hundred_by_hundred_parallel_matches_serial():
    alphas = rational_grid(F(1, 2), F(29, 10), 100)
    bs = rational_grid(F(1, 50), F(2), 100)
    parallel = scan(3, F(0), alphas, bs, threads=4)
    assert len(parallel) == 10_000
    for row in parallel[::97]:
        assert theorem_gate(3, F(0), row.alpha, row.b).verdict == row.verdict


def test_gate_passes_scattering_point():
    verdict = theorem_gate(*SCATTER_POINT)
    assert verdict.passed
    assert verdict.point.p == 3
    assert verdict.window == ExponentWindow.open(F(29, 24), F(31, 24))
    assert (verdict.sample.q, verdict.sample.r) == (F(8), F(12, 5))
