import json

import networkx as nx
import pytest

from utils.errors import AlgebraMismatch, InvalidModule
from utils.exactla import Matrix
from utils.rep import direct_sum, projective, simple
from utils.serialization import (
    dumps, graph_to_dot, graph_to_json, load_module, matrix_from_json, matrix_to_json, module_from_json,
    module_to_json, notation, pair_notation, pair_to_json, write_dot,
)


def test_matrices_use_rational_strings():
    m = Matrix.from_rows([["1/2", 0], [3, "-2/4"]])
    assert matrix_to_json(m) == [["1/2", "0"], ["3", "-1/2"]]
    assert matrix_from_json([["1/2", "0"], ["3", "-1/2"]], 2) == m
    with pytest.raises(InvalidModule):
        matrix_from_json([["1", "x"], ["0", "1"]], 2)
    with pytest.raises(InvalidModule):
        matrix_from_json([["1"]], 2)


def test_module_json(p3):
    p2 = projective(p3, "2")
    data = module_to_json(p2)
    assert data["algebra"] == "preproj_a3"
    assert data["dims"] == [1, 2, 1]
    assert set(data["action"]) == set(p3.basis)
    assert module_from_json(json.loads(json.dumps(data)), p3) == p2


def test_module_json_is_validated(a3, p3):
    data = module_to_json(simple(a3, "1"))
    with pytest.raises(AlgebraMismatch):
        module_from_json(data, p3)
    broken = json.loads(json.dumps(data))
    broken["action"]["a"] = [["1"]]
    with pytest.raises(InvalidModule):
        module_from_json(broken, a3)
    broken = json.loads(json.dumps(data))
    broken["dims"] = [0, 1, 0]
    with pytest.raises(InvalidModule):
        module_from_json(broken, a3)
    with pytest.raises(InvalidModule):
        module_from_json({"dims": [1, 0, 0]}, a3)


def test_load_module(tmp_path, a3):
    path = tmp_path / "s2.json"
    path.write_text(dumps(module_to_json(simple(a3, "2"))), encoding="utf-8")
    assert load_module(path, a3) == simple(a3, "2")
    (tmp_path / "bad.json").write_text("{", encoding="utf-8")
    with pytest.raises(InvalidModule):
        load_module(tmp_path / "bad.json", a3)


def test_notation(a3, p3):
    assert notation(projective(a3, "1")) == "1/2/3"
    assert notation(projective(p3, "2")) == "2/13/2"
    assert notation(direct_sum([], a3).module) == "0"


def test_pair_rendering(a3_graph):
    top_pair, bottom = a3_graph.nodes[0], a3_graph.nodes[-1]
    assert pair_notation(top_pair) == "3 ⊕ 2/3 ⊕ 1/2/3"
    assert pair_notation(bottom) == "0 | P1 ⊕ P2 ⊕ P3"
    payload = pair_to_json(top_pair)
    assert payload["id"] == top_pair.certificate
    assert payload["summand_dims"] == [[0, 0, 1], [0, 1, 1], [1, 1, 1]]
    assert sorted(payload["semibrick"]) == ["1", "2", "3"]


def test_graph_payload_and_dot(a3_graph):
    payload = graph_to_json(a3_graph)
    assert payload["complete"] is True
    assert payload["node_count"] == 14
    assert len(payload["edges"]) == 21
    dot = graph_to_dot(a3_graph)
    assert dot.startswith('digraph "path_a3" {')
    assert dot.count("->") == 21
    assert dumps(payload) == dumps(graph_to_json(a3_graph))


def test_dot_follows_the_networkx_graph(a3_graph):
    digraph = a3_graph.to_networkx()
    dot = graph_to_dot(a3_graph)
    assert dot.count("->") == digraph.number_of_edges()
    assert dot.count("[label=") == digraph.number_of_nodes() + digraph.number_of_edges()
    for a, b in digraph.edges:
        source, target = a3_graph.nodes[a].certificate, a3_graph.nodes[b].certificate
        assert f'"{source}" -> "{target}"' in dot

    small = nx.DiGraph(name="tiny")
    small.add_node(0, certificate="x", label="X")
    small.add_node(1, certificate="y", label="Y")
    small.add_edge(0, 1, label="e")
    assert write_dot(small) == 'digraph "tiny" {\n  "x" [label="X"];\n  "y" [label="Y"];\n  "x" -> "y" [label="e"];\n}\n'
