"""JSON instance files and DOT export.

One document schema serves games and networks::

    {"vertices": [{"id": 0, "owner": "max"}, {"id": 1, "owner": "terminal", "payoff": 3}],
     "arcs": [{"tail": 0, "head": 1, "capacity": 5}],
     "start": 0, "source": 0, "sink": 1, "budget": [{"id": 0, "k": 1}]}

A document with a ``sink`` is a network; otherwise it is a game.
"""
from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Union

from .core import Owner, Solution, Srg
from .errors import ParseError, SchemaError
from .network import Network

TOP_FIELDS = {"vertices", "arcs", "start", "source", "sink", "budget"}
VERTEX_FIELDS = {"id", "owner", "payoff"}
ARC_FIELDS = {"tail", "head", "capacity"}
BUDGET_FIELDS = {"id", "k"}
SOLUTION_META = {"mode", "start", "value", "iterations", "comparisons"}


def _check_fields(obj, allowed: set, where: str, required: tuple = ()) -> None:
    if not isinstance(obj, dict):
        raise SchemaError(where, "expected an object")
    for k in obj:
        if k not in allowed:
            raise SchemaError(f"{where}.{k}", "unknown field")
    for k in required:
        if k not in obj:
            raise SchemaError(f"{where}.{k}", "missing required field")


def _id(x, where: str):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise SchemaError(where, f"vertex ids must be integers or strings, got {x!r}")
    return x


def _number(x, where: str):
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise SchemaError(where, f"expected a number, got {x!r}")
    return x


def parse_document(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    _check_fields(doc, TOP_FIELDS, "document", required=("vertices", "arcs"))
    if not isinstance(doc["vertices"], list):
        raise SchemaError("vertices", "expected a list")
    if not isinstance(doc["arcs"], list):
        raise SchemaError("arcs", "expected a list")
    return doc


def game_from_dict(doc: dict) -> Srg:
    owner, payoff, arcs = {}, {}, []
    for i, v in enumerate(doc["vertices"]):
        where = f"vertices[{i}]"
        _check_fields(v, VERTEX_FIELDS, where, required=("id", "owner"))
        vid = _id(v["id"], f"{where}.id")
        try:
            owner[vid] = Owner(v["owner"])
        except ValueError:
            raise SchemaError(f"{where}.owner", f"unknown owner {v['owner']!r}") from None
        if "payoff" in v:
            payoff[vid] = _number(v["payoff"], f"{where}.payoff")
    for i, a in enumerate(doc["arcs"]):
        where = f"arcs[{i}]"
        _check_fields(a, ARC_FIELDS - {"capacity"}, where, required=("tail", "head"))
        arcs.append((_id(a["tail"], f"{where}.tail"), _id(a["head"], f"{where}.head")))
    for f in ("source", "sink", "budget"):
        if f in doc:
            raise SchemaError(f, "not allowed in a game document")
    start = _id(doc["start"], "start") if doc.get("start") is not None else None
    return Srg(owner, payoff, tuple(arcs), start)


def network_from_dict(doc: dict) -> Network:
    vertices = []
    for i, v in enumerate(doc["vertices"]):
        where = f"vertices[{i}]"
        _check_fields(v, {"id"}, where, required=("id",))
        vertices.append(_id(v["id"], f"{where}.id"))
    arcs = []
    for i, a in enumerate(doc["arcs"]):
        where = f"arcs[{i}]"
        _check_fields(a, ARC_FIELDS, where, required=("tail", "head", "capacity"))
        arcs.append((_id(a["tail"], f"{where}.tail"), _id(a["head"], f"{where}.head"),
                     _number(a["capacity"], f"{where}.capacity")))
    budget = {}
    raw = doc.get("budget", [])
    if not isinstance(raw, list):
        raise SchemaError("budget", "expected a list")
    for i, b in enumerate(raw):
        where = f"budget[{i}]"
        _check_fields(b, BUDGET_FIELDS, where, required=("id", "k"))
        k = b["k"]
        if isinstance(k, bool) or not isinstance(k, int) or k < 0:
            raise SchemaError(f"{where}.k", "expected a non-negative integer")
        budget[_id(b["id"], f"{where}.id")] = k
    if "start" in doc:
        raise SchemaError("start", "not allowed in a network document")
    for f in ("source", "sink"):
        if f not in doc:
            raise SchemaError(f, "missing required field")
    return Network(tuple(vertices), tuple(arcs), budget, _id(doc["source"], "source"), _id(doc["sink"], "sink"))


def game_to_dict(game: Srg) -> dict:
    vertices = []
    for v, o in game.owner.items():
        entry = {"id": v, "owner": o.value}
        if v in game.payoff:
            entry["payoff"] = game.payoff[v]
        vertices.append(entry)
    doc = {"vertices": vertices, "arcs": [{"tail": a, "head": b} for a, b in game.arcs]}
    if game.start is not None:
        doc["start"] = game.start
    return doc


def network_to_dict(net: Network) -> dict:
    return {
        "vertices": [{"id": v} for v in net.vertices],
        "arcs": [{"tail": a, "head": b, "capacity": c} for a, b, c in net.arcs],
        "source": net.source,
        "sink": net.sink,
        "budget": [{"id": v, "k": k} for v, k in net.budget.items()],
    }


Instance = Union[Srg, Network]


def loads(text: str) -> Instance:
    doc = parse_document(text)
    return network_from_dict(doc) if "sink" in doc else game_from_dict(doc)


def dumps(obj: Instance) -> str:
    doc = network_to_dict(obj) if isinstance(obj, Network) else game_to_dict(obj)
    return json.dumps(doc, indent=1)


def load(path) -> Instance:
    return loads(Path(path).read_text())


def save(obj: Instance, path) -> None:
    Path(path).write_text(dumps(obj) + "\n")


def load_game(path) -> Srg:
    obj = load(path)
    if not isinstance(obj, Srg):
        raise SchemaError("document", "expected a game, found a network")
    return obj


def load_network(path) -> Network:
    obj = load(path)
    if not isinstance(obj, Network):
        raise SchemaError("document", "expected a network, found a game")
    return obj


def _jsonable(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def solution_to_dict(sol: Solution) -> dict:
    return {
        "values": [{"id": v, "value": _jsonable(x)} for v, x in sol.value.items()],
        "choices": [{"id": v, "arc": e} for d in (sol.max_choice, sol.min_choice) for v, e in d.items()],
    }


def solution_from_dict(doc: dict, game: Srg) -> Solution:
    # solver output carries a few informational fields besides values and choices
    _check_fields(doc, {"values", "choices"} | SOLUTION_META, "solution")
    value = {}
    for i, e in enumerate(doc.get("values", [])):
        _check_fields(e, {"id", "value"}, f"values[{i}]", required=("id", "value"))
        x = e["value"]
        if x in ("inf", "-inf"):
            x = float(x)
        value[_id(e["id"], f"values[{i}].id")] = _number(x, f"values[{i}].value")
    max_choice, min_choice = {}, {}
    for i, e in enumerate(doc.get("choices", [])):
        where = f"choices[{i}]"
        _check_fields(e, {"id", "arc"}, where, required=("id", "arc"))
        v = _id(e["id"], f"{where}.id")
        if game.owner.get(v) is Owner.MAX:
            max_choice[v] = e["arc"]
        elif game.owner.get(v) is Owner.MIN:
            min_choice[v] = e["arc"]
        else:
            raise SchemaError(f"{where}.id", f"{v!r} is not a non-terminal of the game")
    return Solution(value, max_choice, min_choice)


def _q(x) -> str:
    # labels may carry the DOT line break escape, so backslashes pass through
    return '"' + str(x).replace('"', '\\"') + '"'


def to_dot(obj: Instance, name: str = "G") -> str:
    """Graphviz source: box = Max, diamond = Min, circle = terminal (with payoff); arcs carry capacities."""
    lines = [f"digraph {_q(name)} {{"]
    if isinstance(obj, Network):
        for v in obj.vertices:
            label = str(v)
            if obj.k(v):
                label += f"\\nk={obj.k(v)}"
            shape = "doublecircle" if v == obj.sink else "circle"
            lines.append(f"  {_q(v)} [shape={shape}, label={_q(label)}];")
        for a, b, c in obj.arcs:
            lines.append(f"  {_q(a)} -> {_q(b)} [label={_q(c)}];")
    else:
        shapes = {Owner.MAX: "box", Owner.MIN: "diamond", Owner.TERMINAL: "circle"}
        for v, o in obj.owner.items():
            label = f"{v}\\n{obj.payoff[v]}" if o is Owner.TERMINAL else str(v)
            lines.append(f"  {_q(v)} [shape={shapes[o]}, label={_q(label)}];")
        for a, b in obj.arcs:
            lines.append(f"  {_q(a)} -> {_q(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
