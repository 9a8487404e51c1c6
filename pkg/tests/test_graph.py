import pytest
from hypothesis import given

from conftest import dmgs
from dmgweak.graph import (
    Dmg, Edge, GuardError, InputError, MAX_NODES, Step, Walk, ancestors,
    collider_count, induced_subgraph, is_subgraph, validate_walk,
)


def test_edge_normalises_bidirected_endpoints():
    assert Edge.bidirected(3, 1) == Edge.bidirected(1, 3)
    assert Edge.directed(3, 1) != Edge.directed(1, 3)


def test_bad_edge_kind_rejected():
    with pytest.raises(InputError):
        Edge("-x", 0, 1)


def test_from_edges_builds_symmetric_bidirected_rows():
    g = Dmg.from_edges(3, [(0, 1)], [(1, 2)])
    assert g.has_directed(0, 1) and not g.has_directed(1, 0)
    assert g.has_bidirected(2, 1) and g.has_bidirected(1, 2)
    assert g.par[1] == 0b001


def test_node_limit_and_range_checks():
    with pytest.raises(InputError):
        Dmg.empty(MAX_NODES + 1)
    with pytest.raises(InputError):
        Dmg.from_edges(2, [(0, 2)])
    with pytest.raises(InputError):
        Dmg(2, (0, 0), (0b10, 0))  # asymmetric bidirected row


def test_duplicate_labels_rejected():
    with pytest.raises(InputError):
        Dmg.empty(2, ["a", "a"])


def test_labels_do_not_affect_equality():
    assert Dmg.complete(2, ["x", "y"]) == Dmg.complete(2)


def test_complete_graph_edge_count():
    # n^2 directed plus n(n+1)/2 bidirected
    assert Dmg.complete(4).num_edges() == 16 + 10


def test_degrees_count_the_node_itself_through_loops():
    g = Dmg.from_edges(3, [(0, 1), (1, 1)], [(1, 2)])
    assert g.in_degree(1) == 3  # 0, 1 itself, and 2 through the bidirected edge
    assert g.out_degree(1) == 2  # 1 itself and 2
    assert g.in_degree(0) == 0
    assert g.adjacency_degree(1) == 2


def test_ancestors_include_the_set_itself():
    g = Dmg.from_edges(4, [(0, 1), (1, 2)], [(2, 3)])
    assert ancestors(g, {2}) == 0b0111
    assert ancestors(g, 0) == 0
    assert ancestors(g, {3}) == 0b1000


def test_induced_subgraph_reindexes():
    g = Dmg.from_edges(4, [(0, 3), (3, 1)], [(1, 3)], ["a", "b", "c", "d"])
    h, index = induced_subgraph(g, [1, 3])
    assert index == {1: 0, 3: 1}
    assert h.labels == ("b", "d")
    assert h.has_directed(1, 0) and h.has_bidirected(0, 1)


def test_walk_classification():
    g = Dmg.from_edges(3, [(0, 1)], [(1, 2)])
    w = Walk(0, (Step(Edge.directed(0, 1)), Step(Edge.bidirected(1, 2))))
    assert validate_walk(g, w) == ["endpoint", "collider", "endpoint"]
    assert collider_count(g, w) == 1
    assert w.describe(g) == "0 -> 1 <-> 2"


def test_walk_with_missing_edge_rejected():
    g = Dmg.from_edges(2, [(0, 1)])
    with pytest.raises(InputError):
        validate_walk(g, Walk(0, (Step(Edge.directed(1, 0), False),)))


def test_guard_error_is_an_input_error():
    assert issubclass(GuardError, InputError)


@given(dmgs())
def test_edge_list_round_trip(g):
    assert Dmg.from_edge_list(g.n, g.edges()) == g


@given(dmgs())
def test_remove_then_add_restores(g):
    for e in g.edges()[:3]:
        h = g.remove_edge(e)
        assert not h.has_edge(e)
        assert is_subgraph(h, g)
        assert h.add_edge(e) == g
