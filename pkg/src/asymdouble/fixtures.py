"""Hand-transcribed reference graphs and comparison against generated ones."""

from __future__ import annotations

import json
from collections import Counter
from importlib import resources
from typing import Any

import numpy as np

from .alcove import enumerate_fields, from_young
from .doublegraph import BipartiteGraph, split_rows

FIGURES = ("su2_4_dual", "su2_6_dual", "su3_3_dual")
PARTIAL = "su3_6_split"


def load_fixture(name: str) -> dict[str, Any]:
    text = resources.files("asymdouble").joinpath("data", f"{name}.json").read_text()
    return json.loads(text)


def load_text(name: str) -> str:
    return resources.files("asymdouble").joinpath("data", name).read_text()


def _parse_label(label: str, rank: int) -> tuple[int, ...]:
    if rank == 2:
        return (int(label),)
    return tuple(int(x) for x in label.strip("()").split(","))


def compare_to_figure(g: BipartiteGraph, fig: dict[str, Any], tolerance: float = 1e-6) -> list[str]:
    """Differences between a generated graph and a transcribed one (empty when they agree).

    Split vertices are matched as a multiset of edge rows, so any permutation
    of them is accepted.
    """
    model = fig["model"]
    if (g.rank, g.level) != (model["rank"], model["level"]):
        return [f"model mismatch: SU({g.rank})_{g.level} vs {model}"]
    table = enumerate_fields(g.rank, g.level)

    def idx(label: str) -> int:
        return table.index(_parse_label(label, g.rank))

    problems: list[str] = []
    odd = [idx(o["label"]) for o in fig["odd"]]
    if sorted(odd) != sorted(g.odd):
        return [f"odd vertices differ: {sorted(odd)} vs {sorted(g.odd)}"]
    for o in fig["odd"]:
        d = g.odd_dims[g.odd_position(idx(o["label"]))]
        if abs(d - o["dimension"]) > tolerance:
            problems.append(f"odd {o['label']}: dimension {d} vs {o['dimension']}")

    def row_of(entry) -> tuple[int, ...]:
        row = [0] * len(g.odd)
        for label, m in entry["adjacent"].items():
            row[g.odd_position(idx(label))] = m
        return tuple(row)

    by_orbit = {frozenset(v.orbit): i for i, v in enumerate(g.even) if not v.is_split}
    seen: set[int] = set()
    fig_split: list[tuple[int, ...]] = []
    for e in fig["even"]:
        pairs = frozenset((idx(a), idx(b)) for a, b in e["pairs"])
        if e["split"] is not None:
            fig_split.append(row_of(e))
            target = [v for v in g.even if v.is_split]
            if not target or frozenset(target[0].orbit) != pairs:
                problems.append(f"split vertex {e['name']}: pairs do not match the fixed pair")
            elif abs(target[0].dimension - e["dimension"]) > tolerance:
                problems.append(f"split vertex {e['name']}: dimension {target[0].dimension} vs {e['dimension']}")
            continue
        i = by_orbit.get(pairs)
        if i is None:
            problems.append(f"even vertex {e['name']} not found")
            continue
        seen.add(i)
        if abs(g.even[i].dimension - e["dimension"]) > tolerance:
            problems.append(f"even {e['name']}: dimension {g.even[i].dimension} vs {e['dimension']}")
        if tuple(int(x) for x in g.edges[i]) != row_of(e):
            problems.append(f"even {e['name']}: edges {g.edges[i].tolist()} vs {list(row_of(e))}")
    missing = set(by_orbit.values()) - seen
    if missing:
        problems.append(f"{len(missing)} generated even vertices absent from the figure")
    generated_split = Counter(tuple(int(x) for x in r) for r in split_rows(g))
    if generated_split != Counter(fig_split):
        problems.append(f"split rows differ: {sorted(generated_split)} vs {sorted(fig_split)}")
    return problems


def compare_split_neighbourhood(g: BipartiteGraph, partial: dict[str, Any]) -> list[str]:
    """Compare only the split-vertex rows, given as lists of Young-diagram labels."""
    table = enumerate_fields(g.rank, g.level)
    expected = []
    for row in partial["split_rows"]:
        vec = np.zeros(len(g.odd), dtype=np.int64)
        for label in row:
            vec[g.odd_position(table.index(from_young(label, g.level)))] += 1
        expected.append(tuple(int(x) for x in vec))
    got = Counter(tuple(int(x) for x in r) for r in split_rows(g))
    if got != Counter(expected):
        return [f"split rows differ: {sorted(got)} vs {sorted(expected)}"]
    return []
