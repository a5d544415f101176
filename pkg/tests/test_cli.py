"""Command-line interface: subcommands, config merging, exit codes."""

import json

import pytest

from nilgrowth.cli import main
from nilgrowth.linear import BUDGET


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture()
def store(tmp_path, capsys):
    out = tmp_path / "store"
    code, stdout, _ = _run(capsys, "build", "--out", str(out), "--max-level", "5")
    assert code == 0
    return out, json.loads(stdout)


def test_build_summary(store):
    out, summary = store
    assert (out / "manifest.json").exists()
    assert summary["levels"] == 6
    assert summary["cases"] == [0] + [2] * 5
    assert len(summary["schedule_hash"]) == 64


def test_verify_single_suite(store, capsys):
    out, _ = store
    code, stdout, _ = _run(capsys, "verify", "--out", str(out),
                           "--suite", "8props")
    assert code == 0
    env = json.loads(stdout)
    assert env["failures"] == 0
    assert env["suite"] == "8props"
    assert all(r["check"] == "conditions" for r in env["reports"])


def test_verify_all_suites(store, capsys):
    out, _ = store
    code, stdout, _ = _run(capsys, "verify", "--out", str(out),
                           "--suite", "all", "--max-degree", "8")
    assert code == 0
    env = json.loads(stdout)
    assert env["failures"] == 0
    checks = {r["check"] for r in env["reports"]}
    assert {"conditions", "ustack", "totalsize", "qadd", "tdim",
            "estimate", "ideal", "store-integrity"} <= checks


def test_verify_is_deterministic(store, capsys):
    out, _ = store
    _, first, _ = _run(capsys, "verify", "--out", str(out), "--suite", "ustack")
    _, second, _ = _run(capsys, "verify", "--out", str(out), "--suite", "ustack")
    assert first == second


def test_hilbert_csv_and_json(store, capsys):
    out, _ = store
    code, stdout, _ = _run(capsys, "hilbert", "--out", str(out),
                           "--max-degree", "16", "--format", "csv")
    assert code == 0
    lines = (out / "hilbert.csv").read_text().strip().splitlines()
    assert lines[0] == "n,dim_quotient,cumulative"
    assert len(lines) == 17
    assert json.loads(stdout)["bound"]["status"] == "pass"

    code, stdout, _ = _run(capsys, "hilbert", "--out", str(out),
                           "--max-degree", "16", "--format", "json")
    assert code == 0
    blob = json.loads((out / "hilbert.json").read_text())
    assert blob["rows"][0] == {"n": 1, "dim_quotient": 2, "cumulative": 2,
                               "x_survives": True}


def test_gk_slope_report(store, capsys):
    out, _ = store
    code, stdout, _ = _run(capsys, "gk", "--out", str(out),
                           "--max-degree", "64")
    assert code == 0
    result = json.loads(stdout)
    assert result["bound"]["status"] == "pass"
    assert 0 < result["slope"]["float"] <= 3.0
    assert (out / "gk.json").exists()


def test_probe_reports_membership(store, capsys):
    out, _ = store
    code, stdout, _ = _run(capsys, "probe", "--out", str(out),
                           "--poly", "x", "--exponent", "5")
    assert code == 0
    rep = json.loads(stdout)
    assert rep["in_E"] is False
    assert rep["components"][0]["offending_words"] == ["xxxxx"]

    code, stdout, _ = _run(capsys, "probe", "--out", str(out),
                           "--poly", "yy", "--exponent", "1")
    assert code == 0
    assert json.loads(stdout)["in_E"] is True


def test_probe_without_a_store_builds_fresh(tmp_path, capsys):
    code, stdout, _ = _run(capsys, "probe", "--out", str(tmp_path),
                           "--poly", "yy", "--exponent", "1")
    assert code == 0
    assert json.loads(stdout)["in_E"] is True


def test_probe_config_errors(store, capsys):
    out, _ = store
    assert _run(capsys, "probe", "--out", str(out), "--poly", "2x")[0] == 2
    assert _run(capsys, "probe", "--out", str(out), "--poly", "xy + xy")[0] == 2
    assert _run(capsys, "probe", "--out", str(out), "--poly", "x",
                "--exponent", "0")[0] == 2
    assert _run(capsys, "probe", "--out", str(out), "--poly", "x",
                "--exponent", "100", "--max-degree", "64")[0] == 2


def test_budget_exit_code(tmp_path, capsys):
    code, _, err = _run(capsys, "build", "--out", str(tmp_path),
                        "--engine", "dense", "--max-level", "20")
    assert code == 3
    assert "budget" in err


def test_budget_cap_is_restored(tmp_path, capsys):
    before = BUDGET.max_dense_degree
    code, _, _ = _run(capsys, "build", "--out", str(tmp_path),
                      "--max-level", "2", "--budget-mb", "64")
    assert code == 0
    assert BUDGET.max_dense_degree == before


def test_missing_store_is_a_config_error(tmp_path, capsys):
    for sub in ("verify", "hilbert", "gk"):
        code, _, err = _run(capsys, sub, "--out", str(tmp_path / "nope"))
        assert code == 2, sub
        assert "no level store" in err


def test_bad_flags_are_config_errors(tmp_path, capsys):
    assert _run(capsys, "build", "--out", str(tmp_path), "--field", "4")[0] == 2
    assert _run(capsys, "build", "--out", str(tmp_path), "--engine", "gpu")[0] == 2
    assert _run(capsys, "verify", "--out", str(tmp_path), "--suite", "nope")[0] == 2
    assert main([]) == 2  # missing subcommand
    assert main(["--help"]) == 0


def test_config_file_merging(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"max_level": 2, "out": str(tmp_path / "s")}))
    code, stdout, _ = _run(capsys, "build", "--config", str(cfg))
    assert code == 0
    assert json.loads(stdout)["levels"] == 3  # file value applied

    # explicit flags beat the file
    code, stdout, _ = _run(capsys, "build", "--config", str(cfg),
                           "--max-level", "4")
    assert code == 0
    assert json.loads(stdout)["levels"] == 5


def test_config_file_errors(tmp_path, capsys):
    bad_key = tmp_path / "bad.json"
    bad_key.write_text(json.dumps({"max_levle": 3}))
    assert _run(capsys, "build", "--config", str(bad_key))[0] == 2

    not_json = tmp_path / "broken.json"
    not_json.write_text("{")
    assert _run(capsys, "build", "--config", str(not_json))[0] == 2

    assert _run(capsys, "build", "--config", str(tmp_path / "ghost.json"))[0] == 2


def test_tampered_store_fails_verification(store, capsys):
    out, _ = store
    path = out / "level_02.json"
    obj = json.loads(path.read_text())
    obj["V"]["monomials"][0] = "xxyx"
    path.write_text(json.dumps(obj))
    code, stdout, _ = _run(capsys, "verify", "--out", str(out),
                           "--suite", "engines")
    assert code == 1
    env = json.loads(stdout)
    assert env["failures"] == 1
    assert env["reports"][0]["check"] == "store-integrity"
    assert env["reports"][0]["status"] == "fail"


def test_build_over_gf3(tmp_path, capsys):
    code, stdout, _ = _run(capsys, "build", "--out", str(tmp_path),
                           "--field", "3", "--max-level", "3")
    assert code == 0
    code, stdout, _ = _run(capsys, "verify", "--out", str(tmp_path),
                           "--suite", "8props")
    assert code == 0
    assert json.loads(stdout)["field"] == 3
