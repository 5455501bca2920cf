import json

import pytest

from cubicham import from_json
from cubicham.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_quotient(capsys):
    code, out, _ = run(capsys, "construct", "tutte-quotient")
    assert code == 0
    G = from_json(out)
    assert G.n == 16 and G.is_cubic()


def test_construct_replacement(capsys):
    code, out, _ = run(capsys, "construct", "replacement", "--n", "1")
    assert code == 0
    assert from_json(out).n == 30


def test_construct_chain_and_out_file(tmp_path, capsys):
    target = tmp_path / "chain.json"
    code, out, _ = run(capsys, "--out", str(target), "construct", "chain-H")
    assert code == 0 and out == ""
    doc = json.loads(target.read_text())
    assert doc["mode"] == "one-ended"


def test_construct_truncation_and_segment(capsys):
    code, out, _ = run(capsys, "construct", "truncation", "--chain", "chain-ladder", "--k", "2")
    assert code == 0 and from_json(out).n == 9
    code, out, _ = run(capsys, "construct", "segment", "--chain", "chain-G", "--n", "0")
    assert code == 0 and from_json(out).n == 16


def test_construct_unknown_name(capsys):
    code, _, err = run(capsys, "construct", "nonsense")
    assert code == 2 and "error" in err


def test_hamilton_count_and_through(capsys):
    code, out, _ = run(capsys, "hamilton", "count", "tutte-quotient")
    assert code == 0 and out.strip() == "6"
    code, out, _ = run(capsys, "hamilton", "through", "tutte-quotient", "--require", "e_x,e_y")
    assert code == 0 and out.strip() == "0"
    code, out, _ = run(capsys, "hamilton", "through", "tutte-quotient", "--require", "e_y,e_z")
    assert code == 0 and out.strip() == "4"


def test_hamilton_list_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "hamilton", "list", "k4")
    assert code == 0
    assert len(json.loads(out)["cycles"]) == 3


def test_hamilton_parity(capsys):
    code, out, _ = run(capsys, "hamilton", "parity", "k4")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "edge,count"
    assert all(line.endswith(",2") for line in lines[1:])


def test_hamilton_second(capsys):
    code, out, _ = run(capsys, "hamilton", "second", "tutte-quotient", "--edge", "e_z")
    assert code == 0
    first, second = out.strip().splitlines()
    assert first != second and "e_z" in first and "e_z" in second


def test_hamilton_second_unreachable_edge(capsys):
    code, _, err = run(capsys, "hamilton", "second", "petersen", "--edge", "o0o1")
    assert code == 1


def test_incidence(capsys):
    code, out, _ = run(capsys, "incidence", "tutte-quotient", "--v", "w", "--w", "v")
    assert code == 0
    assert "{e_y,e_z}" in out and "pair sums even: True" in out


def test_chain_analyze(capsys):
    code, out, _ = run(capsys, "chain", "analyze", "chain-H")
    assert code == 0 and "Finite(2)" in out and "end degree: right=3" in out
    code, out, _ = run(capsys, "--format", "json", "chain", "analyze", "chain-Hprime")
    doc = json.loads(out)
    assert code == 0 and doc["classification"] == "Finite(1)" and doc["count"] == 1
    code, out, _ = run(capsys, "--format", "json", "chain", "analyze", "chain-G")
    doc = json.loads(out)
    assert doc["classification"] == "Infinite"
    assert sorted(doc["witness"]["state"]) == ["f_b", "f_c"]


def test_chain_check(capsys):
    code, out, _ = run(capsys, "chain", "check", "chain-double-ladder", "--depth", "3")
    assert code == 0 and out.count("ok") == 3


def test_chain_file_roundtrip(tmp_path, capsys):
    target = tmp_path / "c.json"
    run(capsys, "--out", str(target), "construct", "chain-ladder")
    code, out, _ = run(capsys, "chain", "analyze", str(target))
    assert code == 0 and "Finite(2)" in out


def test_export_dot(capsys):
    code, out, _ = run(capsys, "export-dot", "k4")
    assert code == 0 and out.startswith("graph")
    code, out, _ = run(capsys, "export-dot", "chain-ladder", "--levels", "2")
    assert code == 0 and "F0:" in out


def test_unknown_graph_is_usage_error(capsys):
    code, _, err = run(capsys, "hamilton", "count", "no-such-thing")
    assert code == 2 and "error" in err


def test_unknown_edge_label(capsys):
    code, _, err = run(capsys, "hamilton", "through", "k4", "--require", "zz")
    assert code == 2


def test_jobs_flag(capsys):
    code, out, _ = run(capsys, "--jobs", "2", "hamilton", "count", "tutte-quotient")
    assert code == 0 and out.strip() == "6"
