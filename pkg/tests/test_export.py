import json

import pytest

from asymdouble.doublegraph import dual_graph, principal_graph_for
from asymdouble.export import dumps_json, export_graph, fmt, from_document, to_document
from asymdouble.fixtures import FIGURES, compare_to_figure, load_fixture, load_text


@pytest.mark.parametrize("n,k", [(2, 4), (2, 6), (3, 3), (3, 6)])
def test_json_round_trip_is_byte_identical(n, k):
    first = export_graph(dual_graph(n, k), "json")
    again = dumps_json(to_document(from_document(json.loads(first)))).encode()
    assert first == again


def test_export_is_deterministic():
    g = dual_graph(3, 3)
    assert export_graph(g, "json") == export_graph(g, "json")
    assert export_graph(g, "dot") == export_graph(g, "dot")


def test_dot_matches_golden_file():
    assert export_graph(dual_graph(2, 6), "dot").decode() == load_text("su2_6_dual.dot")


def test_dot_shapes_and_split_labels():
    text = export_graph(dual_graph(2, 4), "dot").decode()
    assert text.count("shape=circle") == 3
    assert text.count("shape=box") == 8
    assert 'label="22+"' in text and 'label="22-"' in text


def test_dot_repeats_multi_edges():
    text = export_graph(principal_graph_for(3, 3), "dot").decode()
    lines = text.splitlines()
    assert any(lines.count(line) == 2 for line in lines if "--" in line)


def test_non_degenerate_dual_json_differs_only_in_kind():
    d = json.loads(export_graph(dual_graph(2, 5), "json"))
    p = json.loads(export_graph(principal_graph_for(2, 5), "json"))
    assert d.pop("kind") == "dual" and p.pop("kind") == "principal"
    assert d == p


def test_su3_3_document_sizes():
    doc = json.loads(export_graph(dual_graph(3, 3), "json"))
    assert len(doc["even"]) == 14 and len(doc["odd"]) == 4
    assert [e["id"] for e in doc["even"]] == list(range(14))
    assert doc["provenance"]["tolerance"] == 1e-6


def test_unsupported_format():
    with pytest.raises(ValueError):
        export_graph(dual_graph(2, 4), "svg")


def test_fmt_twelve_digits():
    assert fmt(1 / 3) == 0.333333333333
    assert fmt(2.0) == 2.0


def test_figure_mismatch_is_reported():
    fig = load_fixture(FIGURES[0])
    fig["even"][1]["adjacent"] = {"0": 2}
    problems = compare_to_figure(dual_graph(2, 4), fig)
    assert problems and "edges" in problems[0]
