import io
import json
import math

import pytest

from cli.main import run
from cli.schemas import document_payload, parse_document
from metadata.store import load_run_traces

GOLDEN_K = (3 + math.sqrt(5)) / 2


def _isolate_traces(monkeypatch, tmp_path):
    monkeypatch.setenv("SPECTRAL_TRACE_FILE", str(tmp_path / "traces.jsonl"))
    monkeypatch.setenv("SPECTRAL_TRACE_ENABLED", "1")


def _cli(argv, stdin_text=""):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdin=io.StringIO(stdin_text), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def _term(c, *e):
    return {"c": c, "e": list(e)}


def _write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


B3_UPOLY = {
    "variables": ["t"],
    "u_coeffs": [[_term(1, 0)], [_term(-1, -1), _term(-1, 0), _term(-1, 1)], [_term(1, 0)]],
}


def test_braid_charpoly_scan_pipeline(monkeypatch, tmp_path):
    _isolate_traces(monkeypatch, tmp_path)
    code, matrix_text, _ = _cli(["braid", "--word", "s1 s2^-1", "--strands", "3"])
    assert code == 0
    matrix = json.loads(matrix_text)
    assert matrix["dim"] == 2 and matrix["variables"] == ["t"]

    code, poly_text, _ = _cli(["charpoly"], matrix_text)
    assert code == 0
    assert json.loads(poly_text) == B3_UPOLY

    code, direct_text, _ = _cli(["braid", "--word", "s1 s2^-1", "--strands", "3", "--charpoly"])
    assert code == 0 and direct_text == poly_text

    code, summary_text, _ = _cli(["scan", "--grid", "1024", "--exclude", "0.0625"], poly_text)
    assert code == 0
    summary = json.loads(summary_text)
    assert summary["K"] == pytest.approx(GOLDEN_K, abs=1e-9)
    assert 0.0 < summary["delta"] <= summary["K"]
    assert summary["grid"] == 1024 and summary["failed_points"] == []
    assert "not a proven bound" in summary["note"]

    traces = load_run_traces()
    assert [t["command"] for t in traces] == ["braid", "charpoly", "braid", "scan"]
    assert all(t["exit_code"] == 0 for t in traces)
    assert traces[-1]["summary"]["K"] == pytest.approx(GOLDEN_K, abs=1e-9)


def test_pf_check_reports_witness(monkeypatch, tmp_path):
    _isolate_traces(monkeypatch, tmp_path)
    doc = {"variables": ["t"], "dim": 2, "entries": [[[_term(1, 1)], [_term(1, 1)]], [[], [_term(1, 0)]]]}
    code, out, _ = _cli(["pf-check", "--input", _write(tmp_path, "m.json", doc)])
    assert code == 0
    report = json.loads(out)
    assert report["primitive"] is False
    assert report["failure_witness"] == [2, 1]


def test_divides_from_files(monkeypatch, tmp_path):
    _isolate_traces(monkeypatch, tmp_path)
    a = _write(tmp_path, "a.json", {"variables": ["t"], "u_coeffs": [[_term(-1, 0)], [_term(1, 0)]]})
    t = _write(tmp_path, "t.json", {"variables": ["t"], "u_coeffs": [[_term(-1, 0)], [], [_term(1, 0)]]})
    code, out, _ = _cli(["divides", "--a", a, "--t", t, "--seed", "3"])
    assert code == 0
    report = json.loads(out)
    assert report["divides"] is True
    assert report["corroborated"] == report["samples"] == 25
    assert report["quotient"]["u_coeffs"] == [[_term(1, 0)], [_term(1, 0)]]


def test_spectrum_and_specialize(monkeypatch, tmp_path):
    _isolate_traces(monkeypatch, tmp_path)
    text = json.dumps(B3_UPOLY)
    code, out, _ = _cli(["spectrum", "--char", "1/2"], text)
    assert code == 0
    assert json.loads(out)["rho"] == pytest.approx(1.0, abs=1e-9)

    code, out, _ = _cli(["spectrum"], text)
    assert json.loads(out)["gamma"] == pytest.approx(math.sqrt(5), abs=1e-9)

    code, out, _ = _cli(["specialize", "--char", "0"], text)
    assert code == 0
    assert json.loads(out)["coeffs"] == [[1.0, 0.0], [-3.0, 0.0], [1.0, 0.0]]


def test_gap_cert_with_spread_power_and_verification(monkeypatch, tmp_path):
    _isolate_traces(monkeypatch, tmp_path)
    one_plus_t = [_term(1, 0), _term(1, 1)]
    doc = {"variables": ["t"], "dim": 2, "entries": [[one_plus_t, [_term(1, 0)]], [[_term(1, 0)], one_plus_t]]}
    code, out, err = _cli(["gap-cert", "--char", "1/4", "--spread-var", "1", "--verify", "4"], json.dumps(doc))
    assert code == 0, err
    payload = json.loads(out)
    assert payload["power"] == 2
    assert payload["C"] == pytest.approx(0.7071067812, abs=1e-9)
    assert payload["verification"]["passed"] is True


def test_teich_dilatation_and_validation(monkeypatch, tmp_path):
    _isolate_traces(monkeypatch, tmp_path)
    edge = _write(tmp_path, "pe.json", {"variables": ["t"], "dim": 2, "entries": [[[], [_term(1, 1)]], [[_term(1, 1)], []]]})
    vertex = _write(tmp_path, "pv.json", {"variables": ["t"], "dim": 1, "entries": [[[_term(1, 1)]]]})
    code, out, _ = _cli(["teich", "--edge", edge, "--vertex", vertex])
    assert code == 0
    assert json.loads(out)["u_coeffs"] == [[_term(1, 1)], [_term(1, 0)]]

    text = json.dumps(B3_UPOLY)
    code, out, _ = _cli(["dilatation", "--xi", "0"], text)
    assert json.loads(out)["K"] == pytest.approx(GOLDEN_K, abs=1e-9)

    code, out, _ = _cli(["dilatation", "--xi", "1", "--ray", "2,4,8"], text)
    profile = [p["K"] for p in json.loads(out)["profile"]]
    assert len(profile) == 3 and profile[0] < profile[1] < profile[2]

    code, out, _ = _cli(["validate-theta"], json.dumps({"variables": ["s"], "u_coeffs": [[_term(1, 0)], [_term(-3, 0)], [_term(1, 0)]]}))
    report = json.loads(out)
    assert report["ok"] is False
    assert report["variables"][0]["name"] == "s"


def test_cover_gap_command(monkeypatch, tmp_path):
    _isolate_traces(monkeypatch, tmp_path)
    code, out, _ = _cli(["cover-gap", "--order", "2"], json.dumps(B3_UPOLY))
    assert code == 0
    assert json.loads(out)["gamma_cover"] == pytest.approx(1.6180339887, abs=1e-9)


def test_exit_codes(monkeypatch, tmp_path):
    _isolate_traces(monkeypatch, tmp_path)
    code, _, err = _cli(["charpoly"], "{not json")
    assert code == 2 and err.startswith("error[2]:")

    code, _, err = _cli(["charpoly", "--input", str(tmp_path / "missing.json")])
    assert code == 2 and "cannot read" in err

    code, _, err = _cli(["charpoly"], json.dumps({"variables": ["t"], "dim": 2, "entries": [[[]]]}))
    assert code == 2

    code, _, err = _cli(["braid", "--word", "s9", "--strands", "3"])
    assert code == 2 and "out of range" in err

    code, _, err = _cli(["braid", "--word", "s1 s2^-1", "--strands", "3", "--gassner"])
    assert code == 3 and "not pure" in err

    mixed = {"variables": ["t"], "dim": 1, "entries": [[[_term(1, 0), _term(-1, 1)]]]}
    code, _, err = _cli(["pf-check"], json.dumps(mixed))
    assert code == 3 and "(1,1)" in err

    jordan = {"variables": ["t"], "dim": 2, "entries": [[[_term(1, 0)], [_term(1, 0)]], [[], [_term(1, 0)]]]}
    code, _, err = _cli(["spectrum", "--crosscheck-tol", "1e-15"], json.dumps(jordan))
    assert code == 4 and err.startswith("error[4]:")

    code, _, err = _cli(["scan", "--grid"])
    assert code == 1

    code, _, _ = _cli(["no-such-command"])
    assert code == 1

    codes = [t["exit_code"] for t in load_run_traces()]
    assert codes == [2, 2, 2, 2, 3, 3, 4]


def test_teich_non_divisible_pair_exits_with_precondition(monkeypatch, tmp_path):
    _isolate_traces(monkeypatch, tmp_path)
    edge = _write(tmp_path, "pe.json", {"variables": ["t"], "dim": 2, "entries": [[[_term(2, 0)], [_term(1, 0)]], [[_term(1, 0)], [_term(1, 0)]]]})
    vertex = _write(tmp_path, "pv.json", {"variables": ["t"], "dim": 1, "entries": [[[_term(2, 0)]]]})
    code, _, err = _cli(["teich", "--edge", edge, "--vertex", vertex])
    assert code == 3
    assert "not a fibered-face pair" in err


def test_emit_parse_emit_is_byte_identical(monkeypatch, tmp_path):
    _isolate_traces(monkeypatch, tmp_path)
    _, matrix_text, _ = _cli(["braid", "--word", "s1 s2 s3^-1 s1", "--strands", "4"])
    doc = parse_document(matrix_text)
    assert json.dumps(document_payload(doc)) + "\n" == matrix_text
    _, poly_text, _ = _cli(["charpoly"], matrix_text)
    assert json.dumps(document_payload(parse_document(poly_text))) + "\n" == poly_text


def test_scan_csv_is_deterministic(monkeypatch, tmp_path):
    _isolate_traces(monkeypatch, tmp_path)
    text = json.dumps(B3_UPOLY)
    first = tmp_path / "one.csv"
    second = tmp_path / "two.csv"
    assert _cli(["scan", "--grid", "64", "--csv", str(first)], text)[0] == 0
    assert _cli(["scan", "--grid", "64", "--csv", str(second), "--jobs", "3", "--plot", str(tmp_path / "rho")], text)[0] == 0
    assert first.read_bytes() == second.read_bytes()
    assert (tmp_path / "rho.gp").exists() and (tmp_path / "rho.dat").exists()


def test_output_path_and_pretty(monkeypatch, tmp_path):
    _isolate_traces(monkeypatch, tmp_path)
    target = tmp_path / "out" / "poly.json"
    code, out, _ = _cli(["charpoly", "--output", str(target), "--pretty"], json.dumps({"variables": ["t"], "dim": 1, "entries": [[[_term(5, 0)]]]}))
    assert code == 0 and out == ""
    text = target.read_text(encoding="utf-8")
    assert text.startswith("{\n  ")
    assert json.loads(text)["u_coeffs"] == [[_term(-5, 0)], [_term(1, 0)]]
