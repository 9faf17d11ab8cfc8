import json

import pytest

from lfsat import cli, families
from lfsat.graph import complete_graph, cycle_graph, empty_graph
from lfsat.graph6 import graph6_decode, graph6_encode


def g6(g):
    return graph6_encode(g).decode()


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "argv,n,m",
    [
        (["--family", "fan", "--i", "3"], 7, 9),
        (["--family", "ffan", "--i", "2", "--j", "3"], 12, 16),
        (["--family", "delta", "--i", "2"], 6, 8),
        (["--family", "extremal", "--n", "30", "--t", "1"], 30, 28),
        (["--family", "forest", "--n", "41"], 41, 39),
    ],
)
def test_construct_counts(capsys, argv, n, m):
    code, out, err = run(capsys, "construct", *argv)
    assert code == 0
    g = graph6_decode(out.strip())
    assert (g.n, g.num_edges()) == (n, m)
    assert err == f"vertices: {n} edges: {m}\n"


def test_construct_formats_round_trip(capsys, tmp_path):
    path = tmp_path / "fan.json"
    code, out, _ = run(capsys, "construct", "--family", "fan", "--i", "2", "--format", "json", "-o", str(path))
    assert code == 0 and out == "vertices: 5 edges: 6\n"
    doc = json.loads(path.read_text())
    assert doc["n"] == 5 and len(doc["edges"]) == 6
    _, dot, _ = run(capsys, "construct", "--family", "fan", "--i", "2", "--format", "dot")
    assert dot.startswith("graph") and dot.count("--") == 6


def test_construct_rejects_bad_parameters(capsys):
    code, _, err = run(capsys, "construct", "--family", "fan", "--i", "0")
    assert code == 2 and err.startswith("error:")
    code, _, err = run(capsys, "construct", "--family", "extremal", "--n", "7", "--t", "1")
    assert code == 2 and "n = 7" in err
    code, _, err = run(capsys, "construct", "--family", "forest")
    assert code == 2 and "--n" in err


def test_check_saturated_padded_clique(capsys):
    code, out, _ = run(capsys, "check", "--spec", "7,1", "--input", g6(complete_graph(8) + empty_graph(22)))
    assert code == 0 and out.splitlines()[0] == "saturated"


def test_check_contains(capsys):
    code, out, _ = run(capsys, "check", "--spec", "7,1", "--input", g6(complete_graph(9)))
    assert code == 1
    lines = out.splitlines()
    assert lines[0] == "contains H" and lines[1].startswith("embedding:")


def test_check_not_saturated(capsys):
    code, out, _ = run(capsys, "check", "--spec", "7,0", "--input", g6(cycle_graph(5)))
    assert code == 1
    lines = out.splitlines()
    assert lines[0] == "H-free, not saturated" and lines[1].startswith("non-edge without a copy:")


def test_check_reads_files_and_json(capsys, tmp_path):
    path = tmp_path / "g.g6"
    path.write_text(g6(complete_graph(3) + empty_graph(1)) + "\n")
    code, out, _ = run(capsys, "check", "--spec", "2,1", "--input", str(path), "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "saturated" and doc["edges"] == 3


def test_certificate_round_trip(capsys, tmp_path):
    cert = tmp_path / "cert.json"
    graph = g6(families.make_extremal_p7(30, 0, [], 1))
    code, _, _ = run(capsys, "check", "--spec", "7,1", "--input", graph, "--certify", str(cert))
    assert code == 0
    code, out, _ = run(capsys, "check", "--spec", "7,1", "--input", graph, "--validate", str(cert), "--recheck")
    assert code == 0 and out == "certificate valid\n"
    # the same certificate does not fit a different graph
    code, out, _ = run(capsys, "check", "--spec", "7,1", "--input", g6(complete_graph(30)), "--validate", str(cert))
    assert code == 1 and out.startswith("certificate invalid")


def test_check_parse_error_reports_offset(capsys):
    code, _, err = run(capsys, "check", "--spec", "2,1", "--input", "A_x")
    assert code == 2 and "offset 2" in err


def test_bad_spec_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["check", "--spec", "7", "--input", "A_"])
    assert exc.value.code == 2


def test_unknown_flag_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["construct", "--family", "fan", "--i", "3", "--bogus"])
    assert exc.value.code == 2


def test_sat_search_matching_examples(capsys, tmp_path):
    sidecar = tmp_path / "ext.g6"
    code, out, _ = run(capsys, "sat-search", "--n", "4", "--spec", "2,1", "--sidecar", str(sidecar))
    doc = json.loads(out)
    assert code == 0 and doc["sat_value"] == 3 and len(doc["extremal_graphs"]) == 2
    assert sidecar.read_text().split() == doc["extremal_graphs"]
    assert "elapsed" not in doc
    code, out, _ = run(capsys, "sat-search", "--n", "6", "--spec", "2,1")
    assert code == 0 and json.loads(out)["sat_value"] == 3


def test_sat_search_with_oracle(capsys):
    code, out, _ = run(capsys, "sat-search", "--n", "7", "--spec", "3,1", "--oracle")
    doc = json.loads(out)
    assert code == 0 and doc["oracle"]["agrees"] is True
    assert doc["oracle"]["sat_value"] == doc["sat_value"] == 3


def test_sat_search_resource_bounds(capsys):
    code, _, err = run(capsys, "sat-search", "--n", "11", "--spec", "2,1")
    assert code == 3 and "resource bound" in err
    code, _, _ = run(capsys, "sat-search", "--n", "8", "--spec", "2,1", "--oracle")
    assert code == 3
    code, _, _ = run(capsys, "sat-search", "--n", "6", "--spec", "2,2", "--edge-budget", "3")
    assert code == 3


def test_sat_search_is_repeatable(capsys):
    outs = {run(capsys, "--threads", str(th), "sat-search", "--n", "6", "--spec", "3,1")[1] for th in (1, 2)}
    assert len(outs) == 1


def test_verify_paper_lemma5(capsys):
    code, out, _ = run(capsys, "verify-paper", "--lemma", "5", "--max-n", "8")
    assert code == 0 and out.startswith("lemma5: verified")


def test_verify_paper_theorem(capsys):
    code, out, _ = run(capsys, "verify-paper", "--lemma", "theorem", "--t", "1..3", "--format", "json")
    reports = json.loads(out)
    assert code == 0 and reports[0]["counterexamples"] == [] and not reports[0]["vacuous"]


def test_verify_paper_mutation_exits_nonzero(capsys, monkeypatch):
    real = families.make_fan
    monkeypatch.setattr(families, "make_fan", lambda i: real(i).remove_edge(1, 2))
    code, out, _ = run(capsys, "verify-paper", "--lemma", "5", "--max-n", "7")
    assert code == 1 and "FAILED" in out


def test_verify_paper_usage(capsys):
    code, _, err = run(capsys, "verify-paper", "--lemma", "42")
    assert code == 2 and "unknown lemma" in err
    code, _, _ = run(capsys, "verify-paper", "--lemma", "5", "--max-n", "12")
    assert code == 3
