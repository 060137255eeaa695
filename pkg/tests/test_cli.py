import json

import pytest

from plabel.cli import main
from plabel.graphs import emit_edge_list, emit_graph6, make_path, make_star, parse_graph6
from plabel.labelling import full_lists, labelling_from_json, lists_to_json
from plabel.solvers import Certificate


@pytest.fixture
def star3_file(tmp_path):
    path = tmp_path / "star3.txt"
    path.write_text(emit_edge_list(make_star(3)))
    return str(path)


@pytest.fixture
def p4_file(tmp_path):
    path = tmp_path / "p4.txt"
    path.write_text(emit_edge_list(make_path(4)))
    return str(path)


def test_solve_minimizes(p4_file, capsys, tmp_path):
    out = tmp_path / "lab.json"
    code = main(["solve", "--graph", p4_file, "--p", "2", "--out", str(out)])
    assert code == 0
    assert "lambda=4 chi=5" in capsys.readouterr().out
    p, lab = labelling_from_json(out.read_text())
    assert p == 2 and len(lab) == 7


def test_solve_fixed_k(p4_file, capsys):
    assert main(["solve", "--graph", p4_file, "--p", "2", "--k", "3"]) == 0
    assert "infeasible" in capsys.readouterr().out


def test_list_solve(star3_file, tmp_path, capsys):
    lists = tmp_path / "lists.json"
    lists.write_text(lists_to_json(2, full_lists(make_star(3), range(6))))
    code = main(["list-solve", "--graph", star3_file, "--lists", str(lists)])
    assert code == 0
    assert "labelled" in capsys.readouterr().out


def test_choosability_witness_and_recheck(star3_file, tmp_path, capsys):
    cert_path = tmp_path / "cert.json"
    code = main([
        "choosability", "--graph", star3_file, "--p", "2", "--k", "4",
        "--budget", "50", "--out", str(cert_path),
    ])
    assert code == 0
    cert = Certificate.from_json(cert_path.read_text())
    assert cert.kind == "lower-witness"
    assert main(["recheck", str(cert_path)]) == 0
    # tampered certificate must fail the recheck
    broken = json.loads(cert_path.read_text())
    broken["k"] = 3
    cert_path.write_text(json.dumps(broken))
    assert main(["recheck", str(cert_path)]) == 1


def test_choosability_exhaustive(tmp_path, capsys):
    edge = tmp_path / "p2.txt"
    edge.write_text(emit_edge_list(make_path(2)))
    cert_path = tmp_path / "cert.json"
    code = main([
        "choosability", "--graph", str(edge), "--p", "1", "--k", "3",
        "--universe", "5", "--exhaustive", "--out", str(cert_path),
    ])
    assert code == 0
    assert Certificate.from_json(cert_path.read_text()).kind == "upper-certified"


def test_construct_star_with_audit(star3_file, tmp_path):
    out = tmp_path / "lab.json"
    code = main([
        "construct", "--family", "star", "--graph", star3_file, "--p", "2",
        "--out", str(out),
    ])
    assert code == 0
    p, lab = labelling_from_json(out.read_text())
    assert len(lab) == 7


def test_construct_star_span(tmp_path):
    out = tmp_path / "lab.json"
    dot = tmp_path / "lab.dot"
    code = main([
        "construct", "--family", "star-span", "--n", "3", "--p", "2",
        "--out", str(out), "--dot", str(dot),
    ])
    assert code == 0
    _, lab = labelling_from_json(out.read_text())
    assert max(lab.values()) == 5
    assert "--" in dot.read_text()


def test_construct_outerplanar_audit_trail(tmp_path):
    from plabel.harness import mop_with_degree

    g = mop_with_degree(8, 1, min_delta=5)
    gfile = tmp_path / "g.txt"
    gfile.write_text(emit_edge_list(g))
    audit = tmp_path / "audit.json"
    code = main([
        "construct", "--family", "outerplanar", "--graph", str(gfile), "--p", "2",
        "--audit", str(audit), "--out", str(tmp_path / "lab.json"),
    ])
    assert code == 0
    trail = json.loads(audit.read_text())
    assert trail["full_resolves"] == 0
    assert trail["configurations"]


def test_incidence_graph6_output(tmp_path, capsys):
    gfile = tmp_path / "p3.txt"
    gfile.write_text(emit_edge_list(make_path(3)))
    mapfile = tmp_path / "map.json"
    code = main([
        "incidence", "--graph", str(gfile), "--format", "edge-list",
        "--map", str(mapfile),
    ])
    assert code == 0
    mapping = json.loads(mapfile.read_text())
    assert mapping["edge_image"] == {"0-1": 3, "1-2": 4}


def test_oracle_command(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main([
        "oracle", "--p-min", "2", "--p-max", "2", "--size-min", "2",
        "--size-max", "4", "--out", str(out),
    ])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["ok"] is True


def test_props_command_exit_codes(tmp_path):
    code = main([
        "props", "--family", "path", "--p-values", "2", "--size-min", "3",
        "--size-max", "4", "--trials", "6", "--csv", str(tmp_path / "r.csv"),
    ])
    assert code == 0
    csv_text = (tmp_path / "r.csv").read_text()
    assert csv_text.splitlines()[0] == "instance,family,n,p,k,outcome,span,fallbacks,nodes"


def test_hunt_command(tmp_path):
    code = main([
        "hunt", "--conjecture", "general", "--p-values", "2", "--size-min", "3",
        "--size-max", "3", "--trials", "2", "--budget", "10",
        "--out", str(tmp_path / "hunt.json"),
    ])
    assert code == 0


def test_usage_errors(tmp_path, capsys):
    missing = str(tmp_path / "nope.txt")
    assert main(["solve", "--graph", missing, "--p", "2"]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("0 zero")
    assert main(["solve", "--graph", str(bad), "--p", "2"]) == 2


def test_theorem_violation_exit_code(tmp_path):
    # K5 is not outerplanar: the labeller reports a research event, exit 3
    from plabel.graphs import Graph

    k5 = Graph(5, [(u, v) for u in range(5) for v in range(u + 1, 5)])
    gfile = tmp_path / "k5.txt"
    gfile.write_text(emit_edge_list(k5))
    code = main(["construct", "--family", "outerplanar", "--graph", str(gfile), "--p", "1"])
    assert code == 3


def test_graph6_input_support(tmp_path, capsys):
    gfile = tmp_path / "tri.g6"
    gfile.write_text(emit_graph6(parse_graph6("Bw")) + "\n")
    assert main(["solve", "--graph", str(gfile), "--format", "graph6", "--p", "1"]) == 0
    assert "lambda=" in capsys.readouterr().out
