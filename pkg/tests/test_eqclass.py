from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from conftest import dmgs
from fixture_graphs import (
    complete, degree_mismatch, directed_cycle, edge_triples, fan_pair, four_class,
    inseparable_nonadjacent, weak_class, _di,
)
from dmgweak.eqclass import (
    LEAST_MAX_DASHED, class_members, dmeg, greatest_element, greatest_of_set,
    is_maximal, is_minimal, least_element, maximal_elements,
)
from dmgweak.graph import Dmg, Edge, GuardError, is_subgraph
from dmgweak.independence import ConditioningFamily, markov_equivalent, weak_equivalent

size = ConditioningFamily.size_bound
everything = ConditioningFamily.all()


def non_loop(g, edges):
    return {t for t in edge_triples(g, edges) if t[1] != t[2]}


def test_four_class_greatest_and_dashed():
    f = four_class()
    assert greatest_element(f["A"], everything) == f["D"]
    d = dmeg(f["A"], everything, fixed_loops=True)
    assert edge_triples(f["D"], d.dashed) == {("->", 1, 3), ("->", 2, 3)}
    for x, y in combinations("ABCD", 2):
        assert markov_equivalent(f[x], f[y])[0]


def test_four_class_extremal_elements():
    f = four_class()
    trio = [f["A"], f["B"], f["C"]]
    assert maximal_elements(trio) == [f["B"], f["C"]]
    assert greatest_of_set(trio) is None
    assert greatest_of_set(list(f.values())) == f["D"]


def test_four_class_least_element_with_fixed_loops():
    f = four_class()
    assert least_element(f["D"], everything, fixed_loops=True) == f["A"]


def test_weak_class_greatest_dmeg_and_least():
    w = weak_class()
    assert greatest_element(w["A"], size(2)) == w["C"]
    d = dmeg(w["C"], size(3), fixed_loops=True)
    assert edge_triples(w["C"], d.dashed) == {("->", 2, 3), ("->", 4, 3)}
    assert least_element(w["C"], size(3), fixed_loops=True) is None
    assert least_element(w["C"], size(3)) is None


def test_directed_cycle_greatest_is_complete():
    g = directed_cycle(4)
    assert greatest_element(g, size(0)) == complete(4)
    assert greatest_element(g, size(1)) == complete(4)
    assert greatest_element(g, size(2)) != complete(4)


def test_fan_pair_maximality():
    for n in (5, 6):
        sparse, dense = fan_pair(n)
        assert is_maximal(dense, size(n - 3))
        assert greatest_element(sparse, size(n - 3)) == dense


def test_markov_greatest_adds_one_edge():
    g = degree_mismatch()
    top = greatest_element(g, everything)
    assert top == g.add_edge(_di(5, 3))
    # the extra edge raises the indegree of 3 yet keeps the model
    assert top.in_degree(2) == g.in_degree(2) + 1
    assert markov_equivalent(g, top)[0]


def test_inseparable_pair_in_maximal_graph_need_not_be_adjacent():
    g = inseparable_nonadjacent()
    assert is_maximal(g, everything)
    assert g.adjacency_degree(1) == 3 and not (g.dir[1] >> 4) & 1 and not (g.bi[1] >> 4) & 1


def test_empty_graph_is_minimal_and_complete_is_maximal():
    assert is_minimal(Dmg.empty(3), size(1))
    assert is_maximal(Dmg.complete(3), size(1))


def test_least_element_guard():
    # at k=0 most edges of the complete graph can go: far more than the cap
    with pytest.raises(GuardError):
        least_element(Dmg.complete(6), size(0))
    assert least_element(Dmg.empty(6), size(0)) == Dmg.empty(6)


def _brute_members(g, fam):
    top = greatest_element(g, fam)
    edges = top.edges()
    out = []
    for r in range(len(edges) + 1):
        for drop in combinations(edges, r):
            h = top.remove_edges(drop)
            if weak_equivalent(h, top, fam)[0]:
                out.append(h)
    return out


@pytest.mark.parametrize("name", "ABCD")
def test_member_sweep_matches_brute_force(name):
    g = weak_class()[name]
    got = class_members(g, size(3))
    want = _brute_members(g, size(3)) if greatest_element(g, size(3)).num_edges() <= 16 else got
    assert set(got) == set(want)


@given(dmgs(), st.integers(0, 5))
def test_greatest_is_equivalent_supergraph_and_idempotent(g, k):
    fam = size(k)
    top = greatest_element(g, fam)
    assert is_subgraph(g, top)
    assert weak_equivalent(g, top, fam)[0]
    assert greatest_element(top, fam) == top


@given(dmgs(max_nodes=4), st.integers(0, 3))
def test_greatest_only_grows_as_k_drops(g, k):
    assert is_subgraph(greatest_element(g, size(k + 1)), greatest_element(g, size(k)))


@settings(max_examples=300)
@given(dmgs(max_nodes=4), st.integers(0, 3))
def test_dashed_edges_are_exactly_the_removable_ones(g, k):
    fam = size(k)
    d = dmeg(g, fam)
    for e in d.base.edges():
        removable = weak_equivalent(d.base.remove_edge(e), d.base, fam)[0]
        assert (e in d.dashed) == removable


@settings(max_examples=200)
@given(dmgs(max_nodes=3, density=0.4), st.integers(0, 3), st.booleans())
def test_least_element_agrees_with_member_sweep(g, k, fixed):
    fam = size(k)
    if len(dmeg(g, fam, fixed).dashed) > 12:
        return
    members = class_members(g, fam, fixed)
    bottom = [m for m in members if all(is_subgraph(m, other) for other in members)]
    assert least_element(g, fam, fixed) == (bottom[0] if bottom else None)
