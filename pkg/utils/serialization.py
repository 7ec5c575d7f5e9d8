"""JSON, notation and DOT renderings of modules, pairs, semibricks and exchange graphs."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import networkx as nx

from utils import constants
from utils.algebra import BasedAlgebra
from utils.errors import AlgebraMismatch, InvalidModule
from utils.exactla import Matrix, format_scalar, scalar
from utils.rep import Module, loewy_layers, module_from_actions
from utils.structure import Semibrick
from utils.taumod import ExchangeGraph, SttPair, semibrick_of


# --- Scalars & Matrices ---

def matrix_to_json(m: Matrix) -> list[list[str]]:
    return [[format_scalar(x) for x in m.row(i)] for i in range(m.rows)]


def matrix_from_json(data: Any, size: int) -> Matrix:
    if not isinstance(data, list) or len(data) != size:
        raise InvalidModule(f"expected a {size}x{size} matrix")
    rows = []
    for row in data:
        if not isinstance(row, list) or len(row) != size:
            raise InvalidModule(f"expected a {size}x{size} matrix")
        try:
            rows.append([scalar(x) for x in row])
        except (ValueError, ZeroDivisionError, TypeError):
            raise InvalidModule(f"malformed scalar in row {row}") from None
    return Matrix.from_rows(rows, cols=size)


# --- Modules ---

def module_to_json(module: Module) -> dict:
    algebra = module.algebra
    return {
        "algebra": algebra.name,
        "dims": list(module.dims),
        "action": {label: matrix_to_json(m) for label, m in zip(algebra.basis, module.action)},
    }


def module_from_json(data: Any, algebra: BasedAlgebra) -> Module:
    if not isinstance(data, dict) or "action" not in data or "dims" not in data:
        raise InvalidModule("a module object needs 'dims' and 'action'")
    if data.get("algebra", algebra.name) != algebra.name:
        raise AlgebraMismatch(f"module is over '{data['algebra']}', not '{algebra.name}'")
    dims = data["dims"]
    if not isinstance(dims, list) or not all(isinstance(d, int) and d >= 0 for d in dims):
        raise InvalidModule("'dims' must be a list of non-negative integers")
    action = data["action"]
    if not isinstance(action, dict) or set(action) != set(algebra.basis):
        raise InvalidModule(f"'action' must give one matrix per basis element of {algebra.name}")
    size = sum(data["dims"])
    module = module_from_actions(algebra, [matrix_from_json(action[label], size) for label in algebra.basis])
    if list(module.dims) != list(data["dims"]):
        raise InvalidModule(f"declared dims {data['dims']} disagree with the action ({list(module.dims)})")
    return module


def load_module(path: str | Path, algebra: BasedAlgebra) -> Module:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise InvalidModule(f"cannot read module file {path}: {e}") from e
    return module_from_json(data, algebra)


def notation(module: Module) -> str:
    """Radical layers top first, e.g. "2/13/2"."""
    if module.total_dim == 0:
        return constants.ZERO_MODULE
    labels = module.algebra.vertices
    joiner = "" if all(len(label) == 1 for label in labels) else ","
    layers = []
    for layer in loewy_layers(module):
        layers.append(joiner.join(labels[v] for v, k in enumerate(layer) for _ in range(k)))
    return "/".join(layers)


def pair_notation(pair: SttPair) -> str:
    text = constants.DIRECT_SUM_SEPARATOR.join(notation(s) for s in pair.summands) or constants.ZERO_MODULE
    if pair.projectives:
        projectives = constants.DIRECT_SUM_SEPARATOR.join(f"P{pair.algebra.vertices[v]}" for v in pair.projectives)
        text = f"{text} | {projectives}"
    return text


def semibrick_notation(semibrick: Semibrick) -> str:
    return "{" + ", ".join(notation(b) for b in semibrick) + "}"


def semibrick_to_json(semibrick: Semibrick) -> list[dict]:
    return [module_to_json(b) for b in semibrick]


# --- Pairs & Graphs ---

def pair_to_json(pair: SttPair) -> dict:
    semibrick = semibrick_of(pair)
    return {
        "id": pair.certificate,
        "module": pair_notation(pair),
        "dims": list(pair.module.dims),
        "summands": [notation(s) for s in pair.summands],
        "summand_dims": [list(s.dims) for s in pair.summands],
        "projectives": [pair.algebra.vertices[v] for v in pair.projectives],
        "semibrick": [notation(b) for b in semibrick],
        "semibrick_dims": [list(b.dims) for b in semibrick],
    }


def graph_to_json(graph: ExchangeGraph) -> dict:
    return {
        "algebra": graph.algebra.name,
        "complete": graph.complete,
        "node_count": len(graph.nodes),
        "nodes": [pair_to_json(node) for node in graph.nodes],
        "edges": [
            {
                "source": graph.nodes[a].certificate,
                "target": graph.nodes[b].certificate,
                "summand": _summand_label(graph.nodes[a], k),
            }
            for a, b, k in graph.edges
        ],
    }


def _summand_label(pair: SttPair, k: int) -> str:
    if k < len(pair.summands):
        return notation(pair.summands[k])
    return f"P{pair.algebra.vertices[pair.projectives[k - len(pair.summands)]]}"


def graph_to_dot(graph: ExchangeGraph) -> str:
    digraph = graph.to_networkx()
    digraph.graph["name"] = graph.algebra.name
    for i, node in enumerate(graph.nodes):
        digraph.nodes[i]["label"] = pair_notation(node)
    for a, b, data in digraph.edges(data=True):
        data["label"] = _summand_label(graph.nodes[a], data["summand"])
    return write_dot(digraph)


def write_dot(digraph: nx.DiGraph) -> str:
    """DOT text keyed on the `certificate` node attribute; only `label` attributes are written."""
    def key(n) -> str:
        return digraph.nodes[n]["certificate"]

    lines = [f'digraph "{digraph.graph.get("name", "")}" {{']
    for n, data in digraph.nodes(data=True):
        lines.append(f'  "{key(n)}" [label="{data["label"]}"];')
    for a, b, data in digraph.edges(data=True):
        lines.append(f'  "{key(a)}" -> "{key(b)}" [label="{data["label"]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def dumps(payload: Any) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
