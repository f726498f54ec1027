import json

import pytest

from evaluation.metrics import build_metrics
from metadata.store import append_run_trace, finish_run_trace, load_run_traces, new_run_trace
from utils.env_loader import load_environments
from utils.errors import (
    EXIT_NUMERIC,
    EXIT_PARSE,
    EXIT_PRECONDITION,
    InputParseError,
    IntegralityError,
    NotDivisibleError,
    RootFindingError,
    exit_code_for,
)
from utils.settings import Settings, load_settings


def test_settings_defaults(monkeypatch):
    for key in ("SPECTRAL_ROOT_TOL", "SPECTRAL_CROSSCHECK_TOL", "SPECTRAL_SCAN_JOBS", "SPECTRAL_TRACE_ENABLED"):
        monkeypatch.delenv(key, raising=False)
    settings = load_settings()
    assert settings.root_tol == 1e-10
    assert settings.crosscheck_tol == 1e-6
    assert settings.corroboration_samples == 25
    assert settings.trace_enabled


def test_settings_from_environment(monkeypatch):
    monkeypatch.setenv("SPECTRAL_ROOT_TOL", "1e-12")
    monkeypatch.setenv("SPECTRAL_SCAN_JOBS", "4")
    monkeypatch.setenv("SPECTRAL_TRACE_ENABLED", "off")
    settings = load_settings()
    assert settings.root_tol == 1e-12
    assert settings.scan_jobs == 4
    assert not settings.trace_enabled


def test_settings_reject_malformed_values(monkeypatch):
    monkeypatch.setenv("SPECTRAL_ROOT_MAX_ITER", "many")
    with pytest.raises(ValueError, match="SPECTRAL_ROOT_MAX_ITER"):
        load_settings()
    monkeypatch.setenv("SPECTRAL_ROOT_MAX_ITER", "-3")
    with pytest.raises(ValueError, match="must be positive"):
        load_settings()


def test_overrides_ignore_missing_values():
    settings = Settings().with_overrides(root_tol=1e-8, crosscheck_tol=None)
    assert settings.root_tol == 1e-8
    assert settings.crosscheck_tol == 1e-6


def test_env_file_does_not_override_existing(tmp_path, monkeypatch):
    env_file = tmp_path / ".env"
    env_file.write_text("# comment\nSPECTRAL_SCAN_JOBS=8\nexport SPECTRAL_ROOT_TOL='1e-9'\n", encoding="utf-8")
    monkeypatch.setenv("SPECTRAL_SCAN_JOBS", "2")
    # registers the variable with monkeypatch so the value applied below is undone
    monkeypatch.setenv("SPECTRAL_ROOT_TOL", "1")
    monkeypatch.delenv("SPECTRAL_ROOT_TOL")
    applied = load_environments(env_file)
    assert applied == {"SPECTRAL_ROOT_TOL": "1e-9"}
    assert load_settings().scan_jobs == 2


def test_exit_codes_follow_error_family():
    assert exit_code_for(InputParseError("bad")) == EXIT_PARSE
    assert exit_code_for(NotDivisibleError("no")) == EXIT_PRECONDITION
    assert exit_code_for(RootFindingError("stuck", best_residual=1.0)) == EXIT_NUMERIC
    assert exit_code_for(IntegralityError("bug")) == EXIT_NUMERIC


def test_run_traces_round_trip(tmp_path, monkeypatch):
    trace_file = tmp_path / "traces.jsonl"
    monkeypatch.setenv("SPECTRAL_TRACE_FILE", str(trace_file))
    monkeypatch.setenv("SPECTRAL_TRACE_ENABLED", "1")

    ok = new_run_trace("charpoly")
    ok["summary"] = {"degree": 2}
    append_run_trace(finish_run_trace(ok, 0))
    failed = new_run_trace("divides")
    append_run_trace(finish_run_trace(failed, 3, NotDivisibleError("remainder 1")))
    with trace_file.open("a", encoding="utf-8") as f:
        f.write("not json\n")

    traces = load_run_traces()
    assert [t["command"] for t in traces] == ["charpoly", "divides"]
    assert traces[0]["summary"] == {"degree": 2}
    assert "_started" not in traces[0]
    assert traces[1]["error_type"] == "NotDivisibleError"
    assert traces[1]["timing_ms"]["total"] >= 0.0
    assert load_run_traces(limit=2)[0]["command"] == "divides"


def test_tracing_can_be_disabled(tmp_path, monkeypatch):
    trace_file = tmp_path / "traces.jsonl"
    monkeypatch.setenv("SPECTRAL_TRACE_FILE", str(trace_file))
    monkeypatch.setenv("SPECTRAL_TRACE_ENABLED", "0")
    append_run_trace(finish_run_trace(new_run_trace("scan"), 0))
    assert not trace_file.exists()
    assert load_run_traces() == []


def test_build_metrics():
    traces = [
        {"command": "scan", "exit_code": 0, "timing_ms": {"total": 10}},
        {"command": "scan", "exit_code": 4, "timing_ms": {"total": 30}, "error_type": "ToleranceError"},
        {"command": "divides", "exit_code": 3, "timing_ms": {"total": 20}, "error_type": "NotDivisibleError"},
        {"command": "braid", "exit_code": 0, "timing_ms": {}},
    ]
    metrics = build_metrics(traces)
    assert metrics["totals"] == {"runs": 4, "by_command": {"braid": 1, "divides": 1, "scan": 2}}
    assert metrics["rates"]["success_rate"] == 0.5
    assert metrics["rates"]["numeric_failure_rate"] == 0.25
    assert metrics["rates"]["precondition_failure_rate"] == 0.25
    assert metrics["latency_ms"]["avg_total"] == 15.0
    assert metrics["latency_ms"]["max_total"] == 30.0
    assert metrics["latency_ms"]["avg_by_command"] == {"braid": 0.0, "divides": 20.0, "scan": 20.0}
    assert metrics["error_types"] == {"NotDivisibleError": 1, "ToleranceError": 1}
    assert json.loads(json.dumps(metrics)) == metrics


def test_build_metrics_empty():
    metrics = build_metrics([])
    assert metrics["totals"]["runs"] == 0
    assert metrics["rates"]["success_rate"] == 0.0
