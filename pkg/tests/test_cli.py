"""Command-line surface: golden records, exit codes, reproducibility.

Each invocation runs in-process through main(argv); stdout carries one
JSON record (or list), so the tests parse and compare structurally.
"""

import json

import pytest

from haarint import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    assert code == 0, out
    return json.loads(out)


# ---------------------------------------------------------------------------
# tableaux

def test_tableaux_listing(capsys):
    rec = run_json(capsys, "tableaux", "--shape", "2", "--N", "2",
                   "--group", "GL")
    assert rec["count"] == 3
    assert rec["tableaux"] == [[[1, 1]], [[1, 2]], [[2, 2]]]


def test_tableaux_empty_is_success(capsys):
    rec = run_json(capsys, "tableaux", "--shape", "1,1,1", "--N", "2")
    assert rec["count"] == 0 and rec["tableaux"] == []


def test_tableaux_bad_shape_usage_error(capsys):
    code, _ = run(capsys, "tableaux", "--shape", "two", "--N", "2")
    assert code == 2


# ---------------------------------------------------------------------------
# integral

def test_integral_inline_exact(capsys):
    rec = run_json(capsys, "integral", "--group", "U", "--N", "3",
                   "--factors", "1,1,+;1,1,-")
    assert rec["exact"] == "1/3"
    assert rec["kind"] == "monomial"


def test_integral_odd_degree_zero(capsys):
    rec = run_json(capsys, "integral", "--group", "O", "--N", "4",
                   "--factors", "1,1;1,1;1,1")
    assert rec["exact"] == "0"


def test_integral_modes_all(capsys, tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({
        "group": "U", "N": 2,
        "factors": [{"i": 1, "j": 1, "conj": False},
                    {"i": 1, "j": 1, "conj": True}]}))
    rec = run_json(capsys, "integral", "--spec", str(spec), "--mode", "all",
                   "--seed", "9", "--samples", "2000")
    assert rec["exact"] == "1/2"
    assert rec["leading"] == "1/2"
    est = rec["mc"]
    assert abs(est["mean_re"] - 0.5) < 4 * est["stderr"] + 1e-9
    assert est["seed"] == 9 and est["n"] == 2000


def test_integral_irrep_spec_file(capsys, tmp_path):
    spec = tmp_path / "irrep.json"
    spec.write_text(json.dumps({
        "group": "U", "N": 2,
        "factors": [{"lambda": [2], "i": 1, "j": 1, "conj": False},
                    {"lambda": [2], "i": 1, "j": 1, "conj": True}]}))
    rec = run_json(capsys, "integral", "--spec", str(spec))
    assert rec["kind"] == "irrep"
    assert rec["exact"] == "1/3"
    assert rec["dropped_basis_vectors"] == 0


def test_integral_missing_n_usage(capsys):
    code, _ = run(capsys, "integral", "--group", "U", "--factors", "1,1,+")
    assert code == 2


def test_integral_cost_gate_exit(capsys):
    argv = ["integral", "--group", "U", "--N", "11", "--factors",
            ";".join(["1,1,+"] * 5 + ["1,1,-"] * 5)]
    assert cli.main(argv) == 3
    capsys.readouterr()


def test_integral_unsupported_exit(capsys):
    code, _ = run(capsys, "integral", "--group", "SO", "--N", "2",
                  "--factors", "1,1,+;1,1,+")
    assert code == 2


def test_integral_mc_needs_seed(capsys, monkeypatch):
    monkeypatch.delenv(cli.SEED_ENV, raising=False)
    code, _ = run(capsys, "integral", "--group", "U", "--N", "2",
                  "--factors", "1,1,+;1,1,-", "--mode", "mc")
    assert code == 2


def test_integral_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv(cli.SEED_ENV, "13")
    rec = run_json(capsys, "integral", "--group", "U", "--N", "2",
                   "--factors", "1,1,+;1,1,-", "--mode", "mc",
                   "--samples", "500")
    assert rec["mc"]["seed"] == 13


# ---------------------------------------------------------------------------
# su2

def test_su2_spec_file(capsys, tmp_path):
    spec = tmp_path / "bell.json"
    spec.write_text(json.dumps({"factors": [
        {"twice_j": 1, "twice_mp": 1, "twice_m": 1, "conj": False},
        {"twice_j": 1, "twice_mp": 1, "twice_m": 1, "conj": True}]}))
    rec = run_json(capsys, "su2", "--spec", str(spec), "--nodes", "32")
    assert abs(rec["closed"] - 0.5) < 1e-12
    assert rec["difference"] < 1e-10


def test_su2_inline_factors(capsys):
    rec = run_json(capsys, "su2", "--factors", "2,0,0,+;2,0,0,-")
    assert abs(rec["closed"] - 1 / 3) < 1e-12


def test_su2_bad_nodes(capsys):
    code, _ = run(capsys, "su2", "--factors", "2,0,0,+;2,0,0,-",
                  "--nodes", "4")
    assert code == 2


# ---------------------------------------------------------------------------
# entropy

def test_entropy_grid(capsys):
    recs = run_json(capsys, "entropy", "--m", "2", "--n", "2,3",
                    "--samples", "400", "--seed", "7")
    assert [r["n"] for r in recs] == [2, 3]
    assert recs[0]["exact"] == "1/3"
    assert recs[1]["exact"] == "9/20"
    for r in recs:
        assert abs(r["mc"]["mean_re"] - r["exact_float"]) \
            < 4 * r["mc"]["stderr"] + 1e-9


def test_entropy_empty_grid_usage(capsys):
    code, _ = run(capsys, "entropy", "--m", "3", "--n", "2",
                  "--samples", "400", "--seed", "7")
    assert code == 2


# ---------------------------------------------------------------------------
# sample

def test_sample_special_unitary(capsys):
    rec = run_json(capsys, "sample", "--group", "SU", "--N", "2",
                   "--count", "3", "--seed", "1")
    assert len(rec["matrices"]) == 3
    for m in rec["matrices"]:
        assert abs(m["det_re"] - 1) < 1e-10 and abs(m["det_im"]) < 1e-10


def test_sample_reproducible_across_threads(capsys):
    a = run_json(capsys, "sample", "--group", "O", "--N", "3",
                 "--count", "2", "--seed", "4", "--threads", "1")
    b = run_json(capsys, "sample", "--group", "O", "--N", "3",
                 "--count", "2", "--seed", "4", "--threads", "8")
    a.pop("threads"), b.pop("threads")
    assert a == b


def test_mc_reproducible_across_threads(capsys):
    argv = ["integral", "--group", "U", "--N", "2", "--factors", "1,1,+;1,1,-",
            "--mode", "mc", "--samples", "300", "--seed", "6"]
    a = run_json(capsys, *argv, "--threads", "1")
    b = run_json(capsys, *argv, "--threads", "4")
    assert a["mc"] == b["mc"]


# ---------------------------------------------------------------------------
# formats

def test_csv_flattening(capsys):
    code, out = run(capsys, "entropy", "--m", "2", "--n", "2,3",
                    "--samples", "400", "--seed", "7", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 3  # header + two rows
    header = lines[0].split(",")
    assert header[:3] == ["command", "m", "n"]
    assert "mc.mean_re" in header and "mc.seed" in header


def test_csv_stable_column_order(capsys):
    args = ("entropy", "--m", "2", "--n", "2", "--samples", "400",
            "--seed", "3", "--format", "csv")
    _, out1 = run(capsys, *args)
    _, out2 = run(capsys, *args)
    assert out1 == out2


def test_every_record_echoes_seed_and_caps(capsys):
    rec = run_json(capsys, "tableaux", "--shape", "1", "--N", "2")
    assert "seed" in rec and "threads" in rec
    rec = run_json(capsys, "integral", "--group", "Sp", "--N", "2",
                   "--factors", "1,1,+;1,1,-")
    assert rec["seed"] is None and rec["threads"] == 1


def test_unknown_command_usage(capsys):
    assert cli.main(["frobnicate"]) == 2
    capsys.readouterr()
