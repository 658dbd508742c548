from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from hypersimplex_codes.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def report(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def strip_duration(r):
    r = dict(r)
    r.pop("duration_s")
    return r


def test_params_text(capsys):
    code, out, _ = run(capsys, "params", "--q", "4", "--s", "8", "--d", "3")
    assert code == 0
    for line in ("n = 6561", "dimension = 56", "delta = 1944", "delta_2 = 2160",
                 "minimal words = 34020", "next-to-minimal words = 153090"):
        assert line in out


def test_params_gap_and_validation(capsys):
    code, out, _ = run(capsys, "params", "--q", "4", "--s", "5", "--d", "3")
    assert code == 0 and "delta = 108" in out and "not covered: gap regime" in out
    code, _, err = run(capsys, "params", "--q", "3", "--s", "6", "--d", "3")
    assert code == 64 and "q >= 4" in err
    code, _, err = run(capsys, "params", "--q", "3", "--s", "6", "--d", "3", "--permissive")
    assert code == 0 and "warning" in err


@pytest.mark.parametrize("name,argv", [
    ("params_4_8_3", ["params", "--q", "4", "--s", "8", "--d", "3"]),
    ("spectrum_4_4_3", ["spectrum", "--q", "4", "--s", "4", "--d", "3"]),
])
def test_reports_match_golden(capsys, name, argv):
    _, r = report(capsys, *argv)
    golden = json.loads((GOLDEN / f"report_{name}.json").read_text())
    assert strip_duration(r) == golden


def _numeric_leaves_labelled(node):
    if isinstance(node, dict):
        if "value" in node:
            return node.get("provenance") in {"closed-form", "family-enumeration", "exhaustive-oracle", "sampled"}
        return all(_numeric_leaves_labelled(v) for v in node.values())
    if isinstance(node, list):
        return all(_numeric_leaves_labelled(v) for v in node)
    return True


@pytest.mark.parametrize("argv", [
    ["params", "--q", "4", "--s", "5", "--d", "3"],
    ["spectrum", "--q", "5", "--s", "4", "--d", "3"],
    ["verify", "--q", "4", "--s", "4", "--d", "3"],
    ["du", "--q", "4", "--s", "4"],
    ["min-words", "--q", "4", "--s", "4", "--d", "3"],
    ["recognize", "--q", "4", "--s", "4", "--d", "3", "--poly", "t1*t3*t4 + t2*t3*t4"],
    ["footprint", "--q", "4", "--s", "3", "--poly", "t1*t2 + t1*t3"],
    ["weight", "--q", "4", "--s", "3", "--poly", "t1*t2 + t1*t3"],
    ["complement", "--s", "4", "--poly", "t1*t2*t3"],
])
def test_report_schema(capsys, argv):
    schema = json.loads((GOLDEN / "report_schema.json").read_text())
    code, r = report(capsys, *argv)
    assert code == 0
    assert sorted(r) == schema["required_top_level"]
    assert r["schema_version"] == schema["schema_version"]
    assert r["command"] == argv[0]
    assert {"seed", "guards"} <= set(r["params"])
    assert _numeric_leaves_labelled(r["results"])


def test_reports_are_reproducible(capsys):
    argv = ["verify", "--q", "4", "--s", "6", "--d", "3", "--seed", "5"]
    _, a = report(capsys, *argv)
    _, b = report(capsys, *argv)
    assert strip_duration(a) == strip_duration(b)
    _, c = report(capsys, "verify", "--q", "4", "--s", "6", "--d", "3", "--seed", "6")
    assert c["params"]["seed"] == 6


def test_spectrum_commands(capsys):
    code, out, _ = run(capsys, "spectrum", "--q", "4", "--s", "4", "--d", "3")
    assert code == 0 and "A_54 = 54" in out and "A_60 = 81" in out and "FAIL" not in out
    code, out, _ = run(capsys, "spectrum", "--q", "5", "--s", "4", "--d", "3", "--format", "csv")
    assert code == 0 and "192,96" in out.splitlines() and "204,256" in out.splitlines()
    code, _, err = run(capsys, "spectrum", "--q", "4", "--s", "8", "--d", "3")
    assert code == 2 and "guard" in err
    code, r = report(capsys, "spectrum", "--q", "4", "--s", "4", "--d", "3", "--max-codewords", "1000", "--threads", "2")
    assert code == 0 and r["params"]["guards"][0]["overridden"] is True


def test_verify_commands(capsys):
    code, r = report(capsys, "verify", "--q", "4", "--s", "4", "--d", "3", "--level", "full")
    assert code == 0 and r["results"]["summary"]["FAIL"] == 0
    assert all(c["anchor"] for c in r["results"]["checks"])
    code, r = report(capsys, "verify", "--q", "4", "--s", "5", "--d", "3")
    assert code == 0
    statuses = {c["name"]: c["status"] for c in r["results"]["checks"]}
    assert statuses["ntm-family-weight"] == "SKIPPED" and statuses["min-family-weight"] == "PASS"
    code, r = report(capsys, "verify", "--q", "4", "--s", "8", "--d", "3", "--level", "quick", "--seed", "7")
    statuses = {c["name"]: c["status"] for c in r["results"]["checks"]}
    assert code == 0 and statuses["ntm-family-weight"] == "PASS" and statuses["min-family-weight"] == "PASS"


def test_verify_failure_exit_code(capsys, monkeypatch):
    from hypersimplex_codes import checks, cli

    def broken(*args, **kwargs):
        return [checks.CheckResult("planted", "none", checks.FAIL)]

    monkeypatch.setattr(cli, "run_checks", broken)
    code, _, _ = run(capsys, "verify", "--q", "4", "--s", "4", "--d", "3")
    assert code == 1


def test_small_commands(capsys):
    code, out, _ = run(capsys, "complement", "--s", "4", "--poly", "t1*t2*t3")
    assert (code, out.strip()) == (0, "t4")
    code, out, _ = run(capsys, "du", "--q", "4", "--s", "4")
    assert code == 0 and "81 > 63 > 60.75 > 60 > 54" in out
    code, out, _ = run(capsys, "weight", "--q", "4", "--s", "4", "--poly",
                       "t1*t2*t3 + t1*t2*t4 + t1*t3*t4 + t2*t3*t4")
    assert code == 0 and "weight = 60" in out
    code, r = report(capsys, "footprint", "--q", "4", "--s", "4", "--poly",
                     "t1*t2*t3 + t1*t2*t4 + t1*t3*t4 + t2*t3*t4")
    assert r["results"]["footprint"]["value"] == 21 and r["results"]["holds"]


def test_family_and_recognize_roundtrip(capsys):
    code, out, _ = run(capsys, "min-words", "--q", "4", "--s", "6", "--d", "3")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 405
    code, r = report(capsys, "recognize", "--q", "4", "--s", "6", "--d", "3", "--poly", lines[100])
    assert r["results"]["kind"] == "min"
    _, r2 = report(capsys, "min-words", "--q", "4", "--s", "6", "--d", "3")
    item = r2["results"]["items"][100]
    assert {k: v for k, v in item.items() if k != "poly"} == r["results"]["params"]
    code, out, _ = run(capsys, "ntm-words", "--q", "4", "--s", "4", "--d", "3", "--format", "csv")
    assert code == 0 and len(out.splitlines()) == 28
    code, _, _ = run(capsys, "ntm-words", "--q", "4", "--s", "5", "--d", "3")
    assert code == 64
    code, _, _ = run(capsys, "min-words", "--q", "4", "--s", "8", "--d", "3", "--limit", "100")
    assert code == 2
    code, r = report(capsys, "recognize", "--q", "4", "--s", "4", "--d", "3", "--poly", "t1*t2*t3")
    assert r["results"]["kind"] is None


def test_usage_errors_exit_64(capsys):
    assert run(capsys, "weight", "--q", "4", "--s", "3", "--poly", "t1*t1")[0] == 64
    assert run(capsys, "weight", "--q", "4", "--s", "3", "--poly", "t1 + t1*t2")[0] == 64
    with pytest.raises(SystemExit) as exc:
        main(["params", "--q", "four", "--s", "4", "--d", "3"])
    assert exc.value.code == 64
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 64


def test_output_directory(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("HYPERSIMPLEX_OUTPUT_DIR", str(tmp_path))
    code, out, _ = run(capsys, "params", "--q", "4", "--s", "6", "--d", "3", "--output", "sub/params.json")
    assert code == 0 and out == ""
    r = json.loads((tmp_path / "sub" / "params.json").read_text())
    assert r["results"]["min_distance"]["value"] == 216
    run(capsys, "spectrum", "--q", "4", "--s", "4", "--d", "3", "--output", str(tmp_path / "s.csv"), "--format", "csv")
    assert (tmp_path / "s.csv").read_text().startswith("weight,count\n")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hypersimplex_codes", "complement", "--s", "3", "--poly", "t2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "t1*t3"
