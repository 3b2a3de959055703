"""Tests for the timing ledger and logging setup."""

import logging

import pytest

from src.core.logging_config import resolve_level, setup_logging
from src.core.monitoring import PerformanceMonitor, TimingLedger, ledger


@pytest.fixture(autouse=True)
def clean_ledger():
    ledger.clear()
    yield
    ledger.clear()


def test_monitor_records_duration():
    with PerformanceMonitor("block", {"steps": "3"}) as timer:
        pass
    assert timer.duration >= 0.0
    summary = ledger.summary()
    assert summary["block"]["calls"] == 1
    assert summary["block"]["max"] == timer.duration


def test_monitor_records_aborted_block():
    with pytest.raises(RuntimeError):
        with PerformanceMonitor("failing"):
            raise RuntimeError("stop")
    assert ledger.summary()["failing"]["calls"] == 1


def test_counters():
    local = TimingLedger()
    local.count("simulate.steps", 10)
    local.count("simulate.steps")
    local.record("simulate", 0.5)
    local.record("simulate", 1.5)
    summary = local.summary()
    assert summary["counters"] == {"simulate.steps": 11}
    assert summary["simulate"] == {"calls": 2, "total": 2.0, "max": 1.5}
    local.clear()
    assert local.summary() == {}


def test_resolve_level(monkeypatch):
    monkeypatch.delenv("LOG_LEVEL", raising=False)
    assert resolve_level() == logging.INFO
    assert resolve_level("debug") == logging.DEBUG
    assert resolve_level("chatty") == logging.INFO
    monkeypatch.setenv("LOG_LEVEL", "WARNING")
    assert resolve_level() == logging.WARNING


def test_setup_logging_writes_file(tmp_path):
    log_file = tmp_path / "logs" / "run.log"
    root = setup_logging("INFO", str(log_file))
    try:
        logging.getLogger("src.sim.integrator").info("step 10/100")
        for handler in root.handlers:
            handler.flush()
        assert "step 10/100" in log_file.read_text(encoding="utf-8")
        assert len(root.handlers) == 2
    finally:
        setup_logging("WARNING")
