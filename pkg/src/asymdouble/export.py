"""Deterministic JSON and DOT serialization of bipartite graphs."""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from . import __version__
from .alcove import Field, enumerate_fields
from .doublegraph import BipartiteGraph, GraphError, OcneanuClass
from .modular import default_tolerance

FORMATS = ("json", "dot")
SPLIT_MARKS = {2: "+-"}


def fmt(x: float) -> float:
    """Round to 12 significant digits so output is stable across platforms."""
    return float(f"{x:.12g}")


def field_label(f: Field) -> str:
    return str(f)


def even_label(g: BipartiteGraph, v: OcneanuClass) -> str:
    table = enumerate_fields(g.rank, g.level)
    a, b = (table[x] for x in v.representative)
    if g.rank == 2:
        sep = "," if g.level >= 10 else ""
        text = f"{a}{sep}{b}"
    else:
        text = f"{a}{b}"
    if v.is_split:
        marks = SPLIT_MARKS.get(g.rank)
        text += marks[v.split_index] if marks else f"_{v.split_index}"
    return text


def to_document(g: BipartiteGraph, tolerance: float | None = None) -> dict[str, Any]:
    table = enumerate_fields(g.rank, g.level)
    tol = default_tolerance() if tolerance is None else tolerance
    odd = [
        {"id": i, "label": field_label(table[x]), "field": list(table[x].labels), "dimension": fmt(d)}
        for i, (x, d) in enumerate(zip(g.odd, g.odd_dims))
    ]
    even = [
        {
            "id": i,
            "label": even_label(g, v),
            "orbit": [[list(table[a].labels), list(table[b].labels)] for a, b in v.orbit],
            "split_index": v.split_index,
            "dimension": fmt(v.dimension),
        }
        for i, v in enumerate(g.even)
    ]
    edges = [[int(i), int(j), int(g.edges[i, j])] for i, j in zip(*np.nonzero(g.edges))]
    return {
        "kind": g.kind,
        "model": {"rank": g.rank, "level": g.level},
        "odd": odd,
        "even": even,
        "edges": edges,
        "provenance": {"generator": f"asymdouble {__version__}", "tolerance": tol},
    }


def dumps_json(doc: dict[str, Any]) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def from_document(doc: dict[str, Any]) -> BipartiteGraph:
    rank, level = doc["model"]["rank"], doc["model"]["level"]
    table = enumerate_fields(rank, level)
    odd = tuple(table.index(tuple(o["field"])) for o in doc["odd"])
    even = tuple(
        OcneanuClass(
            tuple((table.index(tuple(a)), table.index(tuple(b))) for a, b in e["orbit"]),
            float(e["dimension"]),
            e["split_index"],
        )
        for e in doc["even"]
    )
    edges = np.zeros((len(even), len(odd)), dtype=np.int64)
    for i, j, m in doc["edges"]:
        edges[i, j] = m
    return BipartiteGraph(doc["kind"], rank, level, odd, tuple(float(o["dimension"]) for o in doc["odd"]), even, edges)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: BipartiteGraph) -> str:
    """Plain undirected DOT; odd vertices are circles, even vertices boxes."""
    table = enumerate_fields(g.rank, g.level)
    lines = [f"graph {_quote(f'SU({g.rank})_{g.level} {g.kind}')} {{"]
    for i, x in enumerate(g.odd):
        lines.append(f"  o{i} [label={_quote(field_label(table[x]))}, shape=circle];")
    for i, v in enumerate(g.even):
        lines.append(f"  e{i} [label={_quote(even_label(g, v))}, shape=box];")
    for i, j in zip(*np.nonzero(g.edges)):
        lines.extend([f"  e{i} -- o{j};"] * int(g.edges[i, j]))
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_graph(g: BipartiteGraph, format: str = "json", tolerance: float | None = None) -> bytes:
    if format not in FORMATS:
        raise ValueError(f"unsupported format {format!r}; choose from {FORMATS}")
    if not g.is_connected():
        raise GraphError("refusing to export a disconnected graph")
    text = dumps_json(to_document(g, tolerance)) if format == "json" else to_dot(g)
    return text.encode()
