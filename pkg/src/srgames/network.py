"""Capacitated networks with per-vertex arc-removal budgets."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Hashable, Mapping

from .errors import DanglingArc, SchemaError, UnknownVertex

Vertex = Hashable
INF = math.inf


@dataclass(frozen=True)
class Network:
    """Digraph with positive arc capacities, removal budgets, a source and a sink.

    Arc ids are positions in ``arcs``.  Vertices missing from ``budget`` have
    budget 0.
    """

    vertices: tuple
    arcs: tuple[tuple[Vertex, Vertex, object], ...]
    budget: Mapping[Vertex, int]
    source: Vertex
    sink: Vertex

    def k(self, v: Vertex) -> int:
        return self.budget.get(v, 0)

    @property
    def m(self) -> int:
        return len(self.arcs)

    def out_arcs(self, v: Vertex) -> list[int]:
        return [i for i, (a, _, _) in enumerate(self.arcs) if a == v]


@dataclass
class WidthSolution:
    """Per-vertex minimax width and one budget-feasible set of removed arc ids."""

    width: dict
    removed: frozenset
    removals: dict = field(default_factory=dict)
    extracted: list | None = None  # bucket ranks in extraction order, when recorded
    touches: int = 0


def validate_network(net: Network, strict: bool = False) -> Network:
    """Drop self-loops and arcs out of the sink; check ids, capacities and budgets.

    Fewer arcs than vertices is only a warning unless ``strict``.
    """
    verts = set(net.vertices)
    if len(verts) != len(net.vertices):
        raise SchemaError("vertices", "duplicate vertex id")
    for end in (net.source, net.sink):
        if end not in verts:
            raise UnknownVertex(f"{end!r} is not a vertex")
    arcs = []
    for a, b, c in net.arcs:
        if a not in verts or b not in verts:
            raise DanglingArc(a, b)
        if not c > 0:
            raise SchemaError("capacity", f"arc ({a!r}, {b!r}) has non-positive capacity {c!r}")
        if a == b or a == net.sink:
            continue
        arcs.append((a, b, c))
    for v, k in net.budget.items():
        if v not in verts:
            raise UnknownVertex(f"budget given for unknown vertex {v!r}")
        if not isinstance(k, int) or k < 0:
            raise SchemaError("budget", f"budget of {v!r} must be a non-negative integer")
    if len(arcs) < len(net.vertices):
        msg = f"network has {len(arcs)} arcs but {len(net.vertices)} vertices"
        if strict:
            raise SchemaError("arcs", msg)
        warnings.warn(msg, stacklevel=2)
    budget = {v: k for v, k in net.budget.items() if k}
    return Network(tuple(net.vertices), tuple(arcs), budget, net.source, net.sink)
