"""Command-line interface: exit codes, determinism, JSON output."""

import json

import pytest

import staralg as sa
from staralg.cli import main
from staralg.core import algebra_to_json
from staralg.groups import group_to_json
from staralg.instances import swap_mutant


@pytest.fixture
def m2_file(tmp_path):
    path = tmp_path / "m2.json"
    path.write_text(json.dumps(algebra_to_json(sa.matrix_algebra(2))))
    return str(path)


def test_analyze_exit_zero_and_json(m2_file, capsys):
    assert main(["analyze", m2_file]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["proper"] and out["baer"]
    assert out["blocks"] == [2] and out["abelian_dim"] == 0


def test_missing_file_exit_one(capsys):
    assert main(["analyze", "/no/such/file.json"]) == 1


def test_malformed_json_exit_one(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert main(["validate", str(p)]) == 1


def test_validate_failure_exit_two(tmp_path, capsys):
    # multiplication that is not associative
    data = {
        "dim": 2,
        "mul": [[0, 0, 1, 1.0, 0.0], [1, 1, 0, 1.0, 0.0], [0, 1, 0, 1.0, 0.0]],
        "star": [[0, 0, 1.0, 0.0], [1, 1, 1.0, 0.0]],
    }
    p = tmp_path / "bad_alg.json"
    p.write_text(json.dumps(data))
    assert main(["validate", str(p)]) == 2


def test_analyze_non_proper_still_coherent(tmp_path, capsys):
    p = tmp_path / "swap.json"
    p.write_text(json.dumps(algebra_to_json(swap_mutant(1))))
    assert main(["analyze", str(p)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert not out["proper"] and not out["baer"]
    assert out["witness"] is not None


def test_deterministic_output(m2_file, capsys):
    main(["--seed", "3", "analyze", m2_file])
    first = capsys.readouterr().out
    main(["--seed", "3", "analyze", m2_file])
    second = capsys.readouterr().out
    assert first == second


def test_spectral_command(m2_file, capsys):
    assert main(["spectral", m2_file, "--element", "0,0 1,0 1,0 0,0"]) == 0
    out = json.loads(capsys.readouterr().out)
    lams = sorted(round(t["eigenvalue"][0], 9) for t in out["terms"])
    assert lams == [-1.0, 1.0]


def test_spectral_wrong_length(m2_file, capsys):
    assert main(["spectral", m2_file, "--element", "1,0"]) == 1


def test_check_properties(m2_file, capsys):
    for prop in ("rp", "baer", "regular", "sqrt"):
        assert main(["check", m2_file, "--property", prop]) == 0, prop
        out = json.loads(capsys.readouterr().out)
        assert out["pass"]


def test_group_command(tmp_path, capsys):
    p = tmp_path / "s3.json"
    p.write_text(json.dumps(group_to_json(sa.symmetric_group_3())))
    assert main(["group", str(p)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["blocks"] == [2] and out["abelian_dim"] == 2


def test_export_commutative_round_trip(tmp_path, capsys):
    out_path = tmp_path / "comm.json"
    assert main(["export-commutative", "3", "--out", str(out_path)]) == 0
    capsys.readouterr()
    assert main(["analyze", str(out_path)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["abelian_dim"] == 3 and out["blocks"] == []


def test_bad_tol_exit_one(m2_file):
    assert main(["--tol", "-1", "analyze", m2_file]) == 1


def test_text_output(m2_file, capsys):
    assert main(["--output", "text", "analyze", m2_file]) == 0
    out = capsys.readouterr().out
    assert "proper=True" in out
