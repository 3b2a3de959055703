"""Tests for config parsing, provenance hashing and the manifest."""

from fractions import Fraction as F
from pathlib import Path

import pytest

from src.core.config import VERIFY_SUITES, RunConfig, parse_config, parse_rational, thread_count
from src.core.errors import ConfigError
from src.core.manifest import BOXES, SCATTER_POINT, SCATTER_SCHEDULE, TOLERANCES


def test_parse_rational_forms():
    assert parse_rational("1/2") == F(1, 2)
    assert parse_rational("1.2") == F(6, 5)
    assert parse_rational("-3") == F(-3)
    assert parse_rational("2.5e-1") == F(1, 4)


@pytest.mark.parametrize("text", ["0.1/3", "abc", "1/0", "", "1//2"])
def test_parse_rational_rejects_malformed(text):
    with pytest.raises(ValueError):
        parse_rational(text)


def test_parse_config_exact_rationals():
    config = parse_config("command = gate\nn = 3\ns = 1/2\nalpha = 1.2\nb = 1/2\n")
    assert config.s == F(1, 2)
    assert config.alpha == F(6, 5)
    assert isinstance(config.alpha, F)


def test_parse_config_comments_and_blank_lines():
    text = "# point\n\nn = 4   # dimension\ns = 0\nalpha = 2\nb = 1/4\n"
    config = parse_config(text, command="gate")
    assert config.n == 4
    assert config.command == "gate"


def test_malformed_rational_names_line():
    with pytest.raises(ConfigError) as exc:
        parse_config("n = 3\ns = 0.1/3\nalpha = 2\nb = 1/2\n", command="gate")
    assert exc.value.line == 2
    assert "line 2" in str(exc.value)


def test_unknown_key_rejected():
    with pytest.raises(ConfigError) as exc:
        parse_config("n = 3\ngamma = 1\n")
    assert exc.value.line == 2
    assert "gamma" in str(exc.value)


def test_duplicate_key_rejected():
    with pytest.raises(ConfigError) as exc:
        parse_config("n = 3\nn = 4\n")
    assert exc.value.line == 2


def test_line_without_equals_rejected():
    with pytest.raises(ConfigError) as exc:
        parse_config("n = 3\njust words\n")
    assert exc.value.line == 2


def test_missing_required_key_reported_at_end():
    with pytest.raises(ConfigError) as exc:
        parse_config("n = 3\ns = 0\nalpha = 2\n", command="gate")
    assert "'b'" in str(exc.value)
    assert exc.value.line == 4


@pytest.mark.parametrize(
    "line",
    ["lam = 2", "n = 2", "points = 48", "command = plot", "suite = everything"],
)
def test_field_validation_errors(line):
    with pytest.raises(ConfigError) as exc:
        parse_config(line + "\n")
    assert exc.value.line == 1


def test_defaults():
    config = RunConfig()
    assert (config.n, config.s, config.alpha, config.b) == (3, F(0), F(2), F(1, 2))
    assert config.perturbations == [F(1, 100), F(1, 1000), F(1, 10000)]
    assert config.diagnostics == ["mass", "energy"]
    assert config.q is None and config.r is None


def test_list_fields_from_text():
    config = parse_config("perturbations = 1/10, 1/100\ndiagnostics = mass, hdot_s\n")
    assert config.perturbations == [F(1, 10), F(1, 100)]
    assert config.diagnostics == ["mass", "hdot_s"]


def test_explicit_fields_are_tracked():
    config = parse_config("suite = hls\npoints = 16\n", command="verify")
    assert "points" in config.model_fields_set
    assert "half_width" not in config.model_fields_set


def test_config_is_frozen():
    config = RunConfig()
    with pytest.raises(Exception):
        config.n = 4


def test_config_hash_is_deterministic():
    a = parse_config("n = 3\ns = 1/2\n")
    b = parse_config("s = 0.5\nn = 3\n")
    c = parse_config("n = 3\ns = 1/4\n")
    assert a.config_hash() == b.config_hash()
    assert a.config_hash() != c.config_hash()
    assert len(a.config_hash()) == 64


def test_thread_count_from_environment(monkeypatch):
    monkeypatch.setenv("HARTREE_LAB_THREADS", "3")
    assert thread_count() == 3
    monkeypatch.setenv("HARTREE_LAB_THREADS", "0")
    assert thread_count() == 1
    monkeypatch.setenv("HARTREE_LAB_THREADS", "many")
    assert thread_count() >= 1


def test_manifest_covers_every_suite():
    for suite in VERIFY_SUITES:
        assert suite in BOXES
    assert TOLERANCES["dilation_spread"] == 0.10


def test_shipped_scatter_config_matches_manifest():
    path = Path(__file__).resolve().parents[1] / "runs" / "scatter_small_data.cfg"
    config = parse_config(path.read_text(encoding="utf-8"), command="scatter")
    assert (config.n, config.s, config.alpha, config.b) == SCATTER_POINT
    assert (config.points, float(config.half_width)) == BOXES["scatter"]
    assert config.checkpoints == SCATTER_SCHEDULE["checkpoints"]
    assert config.first_checkpoint == SCATTER_SCHEDULE["first_checkpoint"]
    assert config.dt == SCATTER_SCHEDULE["dt"]
    assert config.amplitude == SCATTER_SCHEDULE["amplitude"]


def test_scatter_schedule_is_the_default():
    config = RunConfig()
    assert config.checkpoints == 3
    assert config.first_checkpoint == F(1, 2)
