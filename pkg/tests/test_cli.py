import json

import pytest

from config import EXIT_COST_GUARD, EXIT_DISCREPANCY, EXIT_INVALID_INPUT, EXIT_OK
from groups import catalog_group
from main import main
from utils.table_io import save_table


def test_build_json(capsys):
    assert main(["build", "--cyclic", "4", "--h", "2"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["edges"] == [[1, 2], [2, 3]]


def test_build_dot_to_file(tmp_path):
    out = tmp_path / "z6.dot"
    assert main(["build", "--cyclic", "6", "--h", "2", "--format", "dot", "--output", str(out)]) == EXIT_OK
    text = out.read_text(encoding="utf-8")
    assert text.startswith('graph "Z6_2" {')
    assert "   3 -- 5;" in text


def test_build_all_subgroups(capsys):
    assert main(["build", "--catalog", "S3", "--all-subgroups"]) == EXIT_OK
    payloads = json.loads(capsys.readouterr().out)
    assert [p["h"] for p in payloads] == [2, 2, 2, 3, 6]


def test_build_from_table(tmp_path, capsys):
    path = tmp_path / "s3.txt"
    save_table(catalog_group("S3"), path)
    assert main(["build", "--table", str(path), "--h", "3"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["vertices"]) == 5
    assert sum(v["in_h"] for v in payload["vertices"]) == 2


def test_build_gk_without_subgroup(capsys):
    assert main(["build", "--catalog", "S3", "--graph", "gk"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert [v["id"] for v in payload["vertices"]] == [2, 3]
    assert payload["edges"] == []


def test_classify_marks(capsys):
    assert main(["classify", "--cyclic", "6", "--h", "2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "Γ(Z6, Z2)" in out
    assert "✅" in out
    assert "❌ max_degree_paper" in out


def test_reduce_single_pass(capsys):
    assert main(["reduce", "--cyclic", "210", "--h", "210", "--single-pass"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "После редукции: 15 вершин" in out
    assert "После отсечения: 6 вершин, 12 рёбер" in out


def test_sweep_small(tmp_path, capsys):
    out = tmp_path / "sweep.json"
    assert main(["sweep", "--max-n", "6", "--format", "json", "--output", str(out)]) == EXIT_OK
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert payload["summary"]["unexpected"] == 0
    assert "Итоги" in capsys.readouterr().err


def test_sweep_without_allowlist_reports_discrepancies(capsys):
    assert main(["sweep", "--max-n", "6", "--no-default-allowlist"]) == EXIT_DISCREPANCY
    assert "max_degree_paper" in capsys.readouterr().out


def test_sweep_allow_flag_restores_exit_code():
    argv = ["sweep", "--max-n", "6", "--no-default-allowlist", "--properties", "max_degree"]
    assert main(argv + ["--allow", "max_degree_paper"]) == EXIT_OK
    assert main(argv) == EXIT_DISCREPANCY


def test_verify_nilpotent():
    assert main(["verify", "--catalog", "nilpotent"]) == EXIT_OK
    assert main(["verify", "--catalog", "nilpotent", "--no-default-allowlist"]) == EXIT_DISCREPANCY


def test_malformed_table_exit_code(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("2\n0 1\n1 1\n", encoding="utf-8")
    assert main(["build", "--table", str(path), "--h", "2"]) == EXIT_INVALID_INPUT


def test_cost_guard_exit_code():
    assert main(["build", "--product", "Z200xZ100", "--h", "2"]) == EXIT_COST_GUARD


@pytest.mark.parametrize(
    "argv",
    [
        ["build", "--cyclic", "200000", "--h", "2"],
        ["build", "--catalog", "Z20000", "--h", "2"],
        ["classify", "--cyclic", "20000", "--h", "2"],
        ["sweep", "--max-n", "20000"],
        ["sweep", "--max-n", "10", "--extra", "20000:2"],
    ],
)
def test_oversized_cyclic_group_exit_code(argv):
    assert main(argv) == EXIT_COST_GUARD


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["build", "--cyclic", "4"],
        ["build", "--cyclic", "4", "--catalog", "S3", "--h", "2"],
        ["build", "--cyclic", "6", "--h", "4"],
        ["classify", "--cyclic", "6", "--h", "1"],
        ["sweep", "--max-n", "6", "--extra", "6-2"],
        ["verify", "--catalog", "everything"],
    ],
)
def test_invalid_input_exit_code(argv):
    assert main(argv) == EXIT_INVALID_INPUT
