import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sgscore.graph import PHI, GraphError, SceneGraph, build_graph, extract_tuples, merge_graphs, normalize_lemma

from strategies import graphs


def test_empty_graph():
    g = build_graph([], [], [])
    assert (len(g.objects), len(g.relations), len(g.attributes)) == (0, 0, 0)
    assert g.is_empty
    assert extract_tuples(g) == frozenset()


def test_relation_endpoints_are_added():
    g = build_graph(["kasa"], [("hito", "sasu", "kasa")], [])
    assert g.objects == {"hito", "kasa"}
    assert g.relations == {("hito", "sasu", "kasa")}


def test_placeholder_subject_allowed():
    g = build_graph(["a"], [(PHI, "r", "a")], [])
    assert g.objects == {"a"}
    assert g.relations == {(PHI, "r", "a")}


@pytest.mark.parametrize("objects, relations, attributes", [
    ([PHI], [], []),
    ([], [("a", PHI, "b")], []),
    ([], [("a", "r", PHI)], []),
    ([], [], [(PHI, "x")]),
    ([], [], [("a", PHI)]),
])
def test_placeholder_rejected_elsewhere(objects, relations, attributes):
    with pytest.raises(GraphError):
        build_graph(objects, relations, attributes)


def test_direct_construction_is_validated():
    with pytest.raises(GraphError):
        SceneGraph(frozenset({"a"}), frozenset({("a", "r", "b")}), frozenset())
    with pytest.raises(GraphError):
        SceneGraph(frozenset(), frozenset(), frozenset({("a", "x")}))


def test_lemma_normalization():
    # decomposed "ō" becomes the composed code point
    assert normalize_lemma(" ōkii ") == "ōkii"
    with pytest.raises(GraphError):
        normalize_lemma("   ")


def test_duplicates_collapse():
    g = build_graph(["a", "a"], [("a", "r", "b"), ("a", "r", "b")], [("a", "x"), ("a", "x")])
    assert len(extract_tuples(g)) == 4


def test_tuple_count_by_hand():
    g = build_graph(["a", "b"], [("a", "r", "b")], [("a", "x")])
    assert extract_tuples(g) == {("a",), ("b",), ("a", "r", "b"), ("a", "x")}


def test_placeholder_relations_left_out_of_tuples():
    g = build_graph(["a"], [(PHI, "r", "a")], [])
    assert extract_tuples(g) == {("a",)}


def test_merge_examples():
    g = build_graph(["a"], [("a", "r", "b")], [])
    assert extract_tuples(merge_graphs([g, g])) == extract_tuples(g)
    assert merge_graphs([g]) == g
    g2 = build_graph(["p", "q"], [], [])
    g3 = build_graph(["s"], [("s", "r", "t")], [])
    assert len(extract_tuples(g2)) == 2 and len(extract_tuples(g3)) == 3
    assert len(extract_tuples(merge_graphs([g2, g3]))) == 5
    with pytest.raises(GraphError):
        merge_graphs([])


@settings(max_examples=100, deadline=None)
@given(st.lists(graphs(phi=True), min_size=1, max_size=4))
def test_merge_order_independent(gs):
    merged = merge_graphs(gs)
    for perm in itertools.permutations(gs):
        assert merge_graphs(list(perm)) == merged


@settings(max_examples=200, deadline=None)
@given(graphs(phi=True), graphs(phi=True))
def test_tuples_of_merge_are_union(g1, g2):
    assert extract_tuples(merge_graphs([g1, g2])) == extract_tuples(g1) | extract_tuples(g2)


@settings(max_examples=200, deadline=None)
@given(graphs(phi=True))
def test_tuple_count_identity(g):
    no_phi = [r for r in g.relations if r[0] != PHI]
    assert len(extract_tuples(g)) == len(g.objects) + len(no_phi) + len(g.attributes)
    g.validate()


@settings(max_examples=100, deadline=None)
@given(graphs(phi=True))
def test_build_is_deterministic_and_json_round_trips(g):
    again = build_graph(g.objects, g.relations, g.attributes)
    assert again == g
    text = g.to_json()
    assert list(json.loads(text)) == ["objects", "relations", "attributes"]
    assert SceneGraph.from_json(text) == g
    assert SceneGraph.from_json(text).to_json() == text


def test_bad_json_document():
    with pytest.raises(GraphError):
        SceneGraph.from_dict({"objects": [], "relations": [["a", "b"]], "attributes": []})
