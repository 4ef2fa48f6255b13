import json

import pytest
from hypothesis import given, strategies as st

from semireg import cli, io
from semireg.certificate import Certificate
from semireg.graphs import Digraph, Graph, corpus_pair, oriented_blowup
from semireg.permcore import PermGroup, Permutation


def perms(n):
    return st.permutations(list(range(n))).map(Permutation)


@given(st.integers(1, 8).flatmap(lambda n: st.lists(perms(n), max_size=3)))
def test_group_round_trip(gens):
    G = PermGroup(gens[0].degree if gens else 3, gens)
    H = io.parse_group(io.format_group(G))
    assert H.degree == G.degree and H.generators == G.generators


@given(st.integers(2, 8).flatmap(
    lambda n: st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
                      .filter(lambda e: e[0] != e[1])).map(lambda es: (n, es))))
def test_graph_round_trip(data):
    n, pairs = data
    d = Digraph(n, pairs)
    assert io.parse_graph(io.format_graph(d)) == d
    g = Graph(n, pairs)
    assert io.parse_graph(io.format_graph(g)) == g


def test_certificate_round_trip():
    x = Permutation.from_cycles(6, [(0, 3), (1, 4), (2, 5)])
    c = Certificate(x, 2, 2, ("AbelianNormal",), True)
    text = io.format_certificate(c)
    assert io.parse_certificate(text) == c
    data = json.loads(text)
    assert data["format"] == 1 and data["element"] == "(1,4)(2,5)(3,6)"


def test_group_file_format():
    G = io.parse_group('{"degree": 5, "generators": ["(1,2,3)(4,5)", "()"]}')
    assert G.generators == (Permutation.from_cycles(5, [(0, 1, 2), (3, 4)]),)


@pytest.mark.parametrize("text", [
    "", "graph 3", "graph 3 2\n0 1\n", "graph 3 1\n0 7\n", "nodes 3 0\n",
])
def test_bad_graph_files(text):
    with pytest.raises(io.FormatError):
        io.parse_graph(text)


@pytest.mark.parametrize("text", ['{"degree": 3}', '{"degree": 3, "generators": ["(1,2"]}',
                                  "not json", '{"format": 2, "degree": 1, "generators": []}'])
def test_bad_group_files(text):
    with pytest.raises(io.FormatError):
        io.parse_group(text)


@pytest.fixture
def paley_files(tmp_path):
    g, G = corpus_pair("paley:17")
    (tmp_path / "p.g").write_text(io.format_graph(g))
    (tmp_path / "p.json").write_text(io.format_group(G))
    return tmp_path


def test_cli_find_and_verify(paley_files, capsys):
    d = paley_files
    assert cli.main(["find", "--graph", str(d / "p.g"), "--group", str(d / "p.json"),
                     "--json", "--out", str(d / "c.json")]) == 0
    cert = json.loads((d / "c.json").read_text())
    assert cert["order"] == 17 and cert["verified"] is True
    assert cli.main(["verify", "--cert", str(d / "c.json"), "--graph", str(d / "p.g"),
                     "--group", str(d / "p.json")]) == 0
    assert "verified: true" in capsys.readouterr().out


def test_cli_find_wrong_valency(tmp_path, capsys):
    g, G = corpus_pair("circulant:13,1,3,4,9,10,12")
    (tmp_path / "g.g").write_text(io.format_graph(g))
    (tmp_path / "g.json").write_text(io.format_group(G))
    assert cli.main(["find", "--graph", str(tmp_path / "g.g"), "--group", str(tmp_path / "g.json")]) == 2
    assert "valency 6 ≠ 8" in capsys.readouterr().err


def test_cli_parse_errors(tmp_path, capsys):
    (tmp_path / "bad.g").write_text("graph 2\n")
    assert cli.main(["find", "--graph", str(tmp_path / "bad.g"), "--group", "missing.json"]) == 1
    assert cli.main(["find", "--graph", str(tmp_path / "nope.g"), "--group", "x"]) == 1
    with pytest.raises(SystemExit) as exc:
        cli.main(["bogus"])
    assert exc.value.code == 1
    assert "Traceback" not in capsys.readouterr().err


def test_cli_gen(tmp_path):
    for spec, order in [("paley:17", 136), ("complete:9", 362880), ("blowup:c5,4", 10240)]:
        out = tmp_path / spec.replace(":", "_").replace(",", "_")
        assert cli.main(["gen", spec, "--out", str(out)]) == 0
        g = io.read_graph(str(out) + ".g")
        assert g.valency == 8 and io.read_group(str(out) + ".json").order() == order
    assert cli.main(["gen", "nope:3"]) == 2


def test_cli_oracle(paley_files, capsys):
    assert cli.main(["oracle", "--group", str(paley_files / "p.json"), "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["found"] is not None and report["exhausted"] is False


def test_cli_alternets(tmp_path, capsys):
    (tmp_path / "d.g").write_text(io.format_graph(oriented_blowup(3, 4)))
    assert cli.main(["alternets", "--digraph", str(tmp_path / "d.g"), "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["classes"]) == 3 and data["loosely_attached"] is False
    assert data["alternet_digraph"].startswith("digraph 3 3")


def test_cli_quotient_and_local_action(tmp_path, capsys):
    g, G = corpus_pair("blowup:c3x4")
    (tmp_path / "b.g").write_text(io.format_graph(g))
    (tmp_path / "b.json").write_text(io.format_group(G))
    assert cli.main(["quotient", "--graph", str(tmp_path / "b.g"),
                     "--group", str(tmp_path / "b.json"), "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["quotient_valency"] in (2, 4)
    assert cli.main(["local-action", "--graph", str(tmp_path / "b.g"),
                     "--group", str(tmp_path / "b.json"), "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["transitive"] is True and data["group"]["degree"] == 8


def test_cli_verify_rejects_tampered(paley_files, capsys):
    d = paley_files
    cli.main(["find", "--graph", str(d / "p.g"), "--group", str(d / "p.json"),
              "--json", "--out", str(d / "c.json")])
    data = json.loads((d / "c.json").read_text())
    data["element"] = "(1,2)"
    (d / "bad.json").write_text(json.dumps(data))
    assert cli.main(["verify", "--cert", str(d / "bad.json"), "--graph", str(d / "p.g"),
                     "--group", str(d / "p.json")]) == 2
    assert "verified: false" in capsys.readouterr().out
