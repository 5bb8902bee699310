import json

import pytest

from threshold_lab.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == 0, err
    payload = json.loads(out)
    assert payload["schema"] == "1"
    return payload


def test_classify_star(capsys):
    payload = run_json(capsys, "classify", "--graph6", "D?{")
    assert payload["chromatic_number"] == 2
    assert payload["cloud_forest"] is True
    assert "witnesses" in payload


def test_classify_k3(capsys):
    payload = run_json(capsys, "classify", "--graph6", "Bw")
    assert payload["chromatic_number"] == 3
    assert payload["cloud_forest"] is False
    assert payload["forest_in_decomposition_family"] is True


def test_threshold_k3(capsys):
    payload = run_json(capsys, "threshold", "--graph6", "Bw")
    assert payload["delta_chi"] == "1/3"


def test_threshold_edge_list_file(tmp_path, capsys):
    path = tmp_path / "k3.txt"
    path.write_bytes(b"3 3\n0 1\n0 2\n1 2\n")
    payload = run_json(capsys, "threshold", "--edge-list", str(path))
    assert payload["delta_chi"] == "1/3"


def test_threshold_star(capsys):
    from threshold_lab.constructions import blow_up
    from threshold_lab.formats import write_graph6
    from threshold_lab.graphs import Graph
    code = write_graph6(blow_up(Graph.cycle(5), 2)).decode("ascii")
    payload = run_json(capsys, "threshold-star", "--graph6", code)
    assert payload["delta_chi_star"] == "0"


def test_regimes_c5(capsys):
    payload = run_json(capsys, "regimes", "--graph6", "DLo")
    values = [row["value"] for row in payload["rows"]]
    assert values[:4] == [
        {"kind": "Exact", "v": "0"},
        {"kind": "Exact", "v": "1/3"},
        {"kind": "Exact", "v": "1/2"},
        {"kind": "Exact", "v": "1"},
    ]


def test_regimes_table_format(capsys):
    code, out, err = run_cli(capsys, "regimes", "--graph6", "DLo",
                             "--format", "table")
    assert code == 0
    assert "1/3" in out
    with pytest.raises(json.JSONDecodeError):
        json.loads(out)


def test_regimes_star(capsys):
    payload = run_json(capsys, "regimes-star", "--graph6", "Bw")
    assert len(payload["rows"]) == 2
    assert payload["rows"][0]["range"]["lo"]["exp"] == "1/2"


def test_zykov_build(capsys):
    payload = run_json(capsys, "zykov", "--trees", "A_", "--r", "3", "--t", "1")
    assert payload["vertices"] == 4
    assert len(payload["roles"]) == 4


def test_zykov_search(capsys):
    payload = run_json(capsys, "zykov-search", "--graph6", "DLo",
                       "--max-l", "2", "--max-t", "3", "--max-tree-size", "3")
    assert payload["found"] is True
    payload = run_json(capsys, "zykov-search", "--graph6", "Bw",
                       "--max-l", "2", "--max-t", "2", "--max-tree-size", "3")
    assert payload["found"] is False
    assert payload["note"] == "not found within bounds"


def test_sample_deterministic(capsys):
    a = run_json(capsys, "sample", "--n", "12", "--p", "0.5", "--seed", "9")
    b = run_json(capsys, "sample", "--n", "12", "--p", "0.5", "--seed", "9")
    assert a == b
    assert a["params"]["rng"] == "splitmix64-v1"


def test_stdin_input(capsys, monkeypatch):
    import io
    import sys

    class FakeStdin:
        buffer = io.BytesIO(b"Bw\n")

    monkeypatch.setattr(sys, "stdin", FakeStdin())
    payload = run_json(capsys, "threshold", "--stdin")
    assert payload["delta_chi"] == "1/3"


def test_experiment_verb(capsys):
    payload = run_json(capsys, "experiment", "--n", "40", "--p", "0.5",
                       "--k", "3", "--trials", "3", "--seed", "4")
    assert payload["trials"] == 3
    assert len(payload["per_trial"]) == 3


def test_audit_verb(capsys):
    payload = run_json(capsys, "audit", "--graph6", "D?{", "--p", "0.5",
                       "--set-size-cap", "1", "--samples", "20")
    assert "A1" in payload and "A2" in payload and "A3" in payload


def test_usage_errors_exit_3(capsys):
    code, out, err = run_cli(capsys, "regimes")
    assert code == 3 and "usage" in err.lower()
    code, out, err = run_cli(capsys, "threshold", "--graph6", "Bw",
                             "--graph6-oops", "x")
    assert code == 3
    code, out, err = run_cli(capsys, "threshold", "--graph6", "!!bad!!")
    assert code == 3


def test_domain_error_exit_1(capsys):
    code, out, err = run_cli(capsys, "threshold", "--graph6", "@")
    assert code == 1 and "domain" in err.lower()


def test_budget_exit_2(capsys, monkeypatch):
    monkeypatch.setenv("THRESHOLD_LAB_BUDGET", "5")
    code, out, err = run_cli(capsys, "threshold", "--graph6", "DLo")
    assert code == 2


def test_budget_flag_overrides_env(capsys, monkeypatch):
    monkeypatch.setenv("THRESHOLD_LAB_BUDGET", "5")
    code, out, err = run_cli(capsys, "threshold", "--graph6", "DLo",
                             "--budget", "1000000")
    assert code == 0


def test_stdout_pure_json(capsys):
    code, out, err = run_cli(capsys, "classify", "--graph6", "Bw")
    json.loads(out)  # the whole stream is one JSON document
    assert code == 0
