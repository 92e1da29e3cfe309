import json
import subprocess
import sys

import pytest

from entireops.cli import EXIT_CONFIG, main, thread_count
from entireops.config import fixture_path
from entireops.reports import decode_float, read_csv


def run(tmp_path, *args):
    code = main([*args, "--out", str(tmp_path), "--quiet"])
    return code, json.loads((tmp_path / f"{args[0]}.json").read_text())


def cfg(name):
    return str(fixture_path(name))


def strip_timestamp(doc):
    doc = dict(doc)
    doc.pop("timestamp")
    return doc


def test_check_five_nine_passes(tmp_path):
    code, rep = run(tmp_path, "check", "--config", cfg("five_nine"))
    assert code == 0 and rep["verdict"] == "PASS_NUMERIC" and rep["exit_code"] == 0
    assert all(c["verdict"] == "PASS_NUMERIC" for c in rep["results"]["conditions"].values())


def test_check_divergent_fails_with_witness(tmp_path):
    code, rep = run(tmp_path, "check", "--config", cfg("dn_divergent"))
    assert code == 1 and rep["verdict"] == "FAIL"
    e = rep["results"]["conditions"]["e"]
    assert e["verdict"] == "FAIL" and e["witness"]


def test_zeros_small_exp(tmp_path):
    code, rep = run(tmp_path, "zeros", "--config", cfg("phi_zeros"))
    assert code == 0
    t = rep["results"]["zero_counts"]
    assert t["radius"] == [0.5, 2.0] and t["count"] == [1, 1]


def test_check32_factorial_inconclusive(tmp_path):
    code, rep = run(tmp_path, "check32", "--config", cfg("factorial"), "--nmax", "40")
    assert code == 2 and rep["verdict"] == "INCONCLUSIVE"


@pytest.mark.parametrize("command", ["borel", "apply", "inverse", "orbit"])
def test_other_commands_pass(tmp_path, command):
    name = {"borel": "dn", "apply": "dn", "inverse": "five_nine", "orbit": "dn_orbit"}[command]
    code, rep = run(tmp_path, command, "--config", cfg(name))
    assert code == 0 and rep["command"] == command


def test_report_is_deterministic(tmp_path):
    _, a = run(tmp_path / "a", "check", "--config", cfg("dn"), "--nmax", "30")
    _, b = run(tmp_path / "b", "check", "--config", cfg("dn"), "--nmax", "30")
    assert json.dumps(strip_timestamp(a), sort_keys=True) == json.dumps(strip_timestamp(b), sort_keys=True)
    assert set(a["timestamp"]) == {"utc", "wall_clock_seconds"}


def test_exit_code_matches_verdict(tmp_path):
    for name, expect in (("dn", 0), ("dn_divergent", 1)):
        code, rep = run(tmp_path / name, "check", "--config", cfg(name), "--nmax", "40")
        assert code == rep["exit_code"] == expect
        assert rep["verdict"] == {0: "PASS_NUMERIC", 1: "FAIL"}[expect]


def test_sidecars_match_report(tmp_path):
    _, rep = run(tmp_path, "check", "--config", cfg("dn"), "--nmax", "30")
    res = rep["results"]
    assert set(res["sidecars"]) == {"per_n", "bounds"}
    for name, fname in res["sidecars"].items():
        cols = read_csv(tmp_path / fname)
        data = res["sidecar_data"][name]
        assert set(cols) == set(data)
        for k in cols:
            assert cols[k] == [decode_float(v) if isinstance(v, str) else v for v in data[k]]


def test_density_sidecar(tmp_path):
    _, rep = run(tmp_path, "orbit", "--config", cfg("dn_orbit"))
    cols = read_csv(tmp_path / "orbit_density.csv")
    assert cols["d_m"] == rep["results"]["hitting_density"]["density_curve"]
    assert cols["m"] == list(range(1, 101))


def test_thread_count_does_not_change_results(tmp_path, monkeypatch):
    docs = []
    for threads in ("1", "3"):
        monkeypatch.setenv("ENTIREOPS_THREADS", threads)
        assert thread_count() == int(threads)
        _, rep = run(tmp_path / threads, "bg", "--config", cfg("dn"), "--nmax", "10", "--kmax", "5")
        docs.append(rep["results"])
    assert json.dumps(docs[0], sort_keys=True) == json.dumps(docs[1], sort_keys=True)


def test_invalid_config_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"sequence": {"kind": "z"}, "annulus": {"R1": -1, "R2": 2}}')
    assert main(["check", "--config", str(bad), "--out", str(tmp_path), "--quiet"]) == EXIT_CONFIG


def test_missing_annulus_is_config_error(tmp_path):
    code, rep = run(tmp_path, "check", "--config", cfg("phi_zeros"))
    assert code == EXIT_CONFIG and rep["verdict"] == "ERROR"


def test_usage_error_exit_code():
    proc = subprocess.run([sys.executable, "-m", "entireops.cli", "frobnicate"], capture_output=True, text=True)
    assert proc.returncode == EXIT_CONFIG and "usage" in proc.stderr


def test_console_script(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "entireops.cli", "zeros", "--config", cfg("phi_zeros"), "--out", str(tmp_path)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and "PASS_NUMERIC" in proc.stderr
