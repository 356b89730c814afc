from __future__ import annotations

import json

import pytest

from ccgame.main import run_cli
from ccgame.models.matrix import new_matrix
from ccgame.utils.json_io import canonical_json, matrix_to_document


def _write_game(path, cells, alphabet=2):
    path.write_text(canonical_json(matrix_to_document(new_matrix(cells, alphabet_size=alphabet))), encoding="utf-8")
    return str(path)


def _stdout_json(capsys):
    return json.loads(capsys.readouterr().out)


def test_phi_prints_the_canonical_game(capsys, golden):
    assert run_cli(["phi", "--B", "2", "--i", "1"]) == 0
    assert capsys.readouterr().out == golden("phi1_B2.json")


def test_phi_needs_one_selector(capsys):
    assert run_cli(["phi", "--B", "2"]) == 2
    error = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert error["error"] == "UsageError"


def test_phi_size_guard(capsys):
    assert run_cli(["--max-cells", "100", "phi", "--B", "2", "--i", "3"]) == 3
    assert "SizeGuardError" in capsys.readouterr().err


def test_padded_member(capsys):
    assert run_cli(["phi", "--padded", "2"]) == 0
    document = _stdout_json(capsys)
    assert (document["m"], document["n"]) == (4, 4)


def test_interlace_display_matches_printed_form(tmp_path, capsys, golden):
    source = _write_game(tmp_path / "phi0.json", [[1, 0]])
    assert run_cli(["interlace", "--in", source, "--p", "2", "--display"]) == 0
    assert capsys.readouterr().out == golden("interlace_A2.json")


def test_dsum_writes_relative_output_under_the_output_dir(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("CCGAME_OUTPUT_DIR", str(tmp_path / "out"))
    source = _write_game(tmp_path / "phi0.json", [[1, 0]])
    assert run_cli(["dsum", "--in", source, "--l", "2", "--out", "sum.json"]) == 0
    assert capsys.readouterr().out == ""
    document = json.loads((tmp_path / "out" / "sum.json").read_text(encoding="utf-8"))
    assert document == {"m": 1, "n": 4, "alphabet": 4, "rows": [[3, 2, 1, 0]]}


def test_solve_exact(tmp_path, capsys):
    source = _write_game(tmp_path / "i2.json", [[1, 0], [0, 1]])
    assert run_cli(["solve", "--exact", "--in", source]) == 0
    document = _stdout_json(capsys)
    assert document["depth"] == 2
    assert document["lower_bound"] == 2
    assert document["method"] == "exact"
    assert document["protocol"]["node"] == "internal"


def test_solve_with_small_budget(tmp_path, capsys):
    source = _write_game(tmp_path / "i2.json", [[1, 0], [0, 1]])
    assert run_cli(["solve", "--in", source, "--budget", "1"]) == 0
    document = _stdout_json(capsys)
    assert document["depth"] is None
    assert document["protocol"] is None


def test_solve_greedy_rejects_budget(tmp_path, capsys):
    source = _write_game(tmp_path / "i2.json", [[1, 0], [0, 1]])
    assert run_cli(["solve", "--greedy", "--in", source, "--budget", "1"]) == 2


def test_solve_outside_policy(tmp_path, capsys):
    source = _write_game(tmp_path / "wide.json", [[0] * 17 for _ in range(5)])
    assert run_cli(["solve", "--in", source]) == 3
    assert run_cli(["--solver-min-side", "5", "--solver-max-side", "17", "solve", "--in", source]) == 0


def test_malformed_matrix_file(tmp_path, capsys):
    broken = tmp_path / "broken.json"
    broken.write_text('{"m": 2, "n": 2, "alphabet": 2, "rows": [[1, 0]]}', encoding="utf-8")
    assert run_cli(["solve", "--in", str(broken)]) == 2
    assert "ShapeError" in capsys.readouterr().err


def test_subgame(tmp_path, capsys):
    small = _write_game(tmp_path / "phi0.json", [[1, 0]])
    large = _write_game(tmp_path / "i2.json", [[1, 0], [0, 1]])
    assert run_cli(["subgame", "--small", small, "--large", large]) == 0
    assert _stdout_json(capsys)["subgame"] is True
    assert run_cli(["subgame", "--small", large, "--large", small]) == 0
    document = _stdout_json(capsys)
    assert document == {"subgame": False, "witness": None}


def test_verify_and_merge(tmp_path, capsys):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    assert run_cli(["verify", "--lemma", "rank-claim", "--grid", "tiny", "--out", str(first)]) == 0
    assert run_cli(["verify", "--lemma", "transpose-ds", "--grid", "tiny", "--out", str(second)]) == 0
    capsys.readouterr()
    assert run_cli(["report", "--merge", str(second), str(first)]) == 0
    merged = _stdout_json(capsys)
    assert merged["status"] == "pass"
    assert list(merged["reports"]) == ["rank-claim", "transpose-ds"]


def test_verify_honours_the_cell_guard(capsys):
    assert run_cli(["--max-cells", "10", "verify", "--lemma", "rank-gap", "--grid", "tiny"]) == 3
    assert "SizeGuardError" in capsys.readouterr().err


def test_merge_rejects_duplicates(tmp_path, capsys):
    first = tmp_path / "a.json"
    assert run_cli(["verify", "--lemma", "rank-claim", "--grid", "tiny", "--out", str(first)]) == 0
    assert run_cli(["report", "--merge", str(first), str(first)]) == 2


def test_merge_reports_failures(tmp_path, capsys):
    failed = tmp_path / "failed.json"
    failed.write_text(
        json.dumps(
            {
                "lemma": "rank-claim",
                "grid": {"preset": "tiny"},
                "instances": 1,
                "violations": [{"instance": "x", "lhs": 0, "rhs": 1}],
                "status": "fail",
            }
        ),
        encoding="utf-8",
    )
    assert run_cli(["report", "--merge", str(failed)]) == 1
    assert _stdout_json(capsys)["status"] == "fail"


def test_unknown_lemma(capsys):
    assert run_cli(["verify", "--lemma", "nope"]) == 2


def test_constants(capsys):
    assert run_cli(["constants"]) == 0
    document = _stdout_json(capsys)
    assert document["status"] == "pass"
    assert document["grid"] == {"k": 10000, "a": 10, "s": 2, "precision_bits": 128}


def test_unknown_subcommand(capsys):
    assert run_cli(["frobnicate"]) == 2


def test_version_exits(capsys):
    with pytest.raises(SystemExit) as info:
        run_cli(["--version"])
    assert info.value.code == 0
    assert "ccgame" in capsys.readouterr().out
