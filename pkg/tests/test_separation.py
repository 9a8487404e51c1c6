import time

import pytest
from hypothesis import given, settings, strategies as st

from conftest import dmgs, graph_and_set
from fixture_graphs import ix, mixed_triangle
from dmgweak.graph import (
    Dmg, GuardError, InputError, collider_count, is_mu_connecting, is_subgraph, popcount,
)
from dmgweak.separation import (
    bounded_collider_connected, connection_rows, directed_trek_sources, mu_connected,
    mu_separated, mu_separated_sets, route_oracle_connected, separation_rows, witness_walk,
)


@pytest.mark.parametrize("alpha,beta,given_,separated", [
    ("1", "3", ("2", "3"), True),
    ("1", "3", ("2",), False),
    ("3", "1", ("2",), False),
])
def test_three_node_example(alpha, beta, given_, separated):
    g = mixed_triangle()
    start = time.perf_counter()
    got = mu_separated(g, ix(alpha), ix(beta), ix(*given_) if len(given_) > 1 else {ix(given_[0])})
    assert time.perf_counter() - start < 1e-3
    assert got is separated


def test_separation_is_asymmetric():
    g = Dmg.from_edges(2, [(0, 1)])
    assert mu_connected(g, 0, 1)
    assert mu_separated(g, 1, 0)


def test_target_needs_an_arrowhead():
    # a single tail into beta is not enough
    g = Dmg.from_edges(2, [(1, 0)])
    assert mu_separated(g, 0, 1)


def test_loop_makes_node_depend_on_itself():
    with_loop = Dmg.from_edges(1, [(0, 0)])
    assert mu_connected(with_loop, 0, 0)
    assert mu_separated(Dmg.empty(1), 0, 0)


def test_alpha_in_conditioning_set_is_separated():
    g = Dmg.complete(3)
    assert mu_separated(g, 0, 1, {0})
    assert separation_rows(g, {0})[0] == g.full


def test_collider_opened_by_descendant_in_set():
    # 0 -> 1 <-> 2 with 1 -> 3: the collider 1 is an ancestor of {3}
    g = Dmg.from_edges(4, [(0, 1), (1, 3)], [(1, 2)])
    assert mu_separated(g, 0, 2, set())
    assert mu_connected(g, 0, 2, {3})
    assert mu_connected(g, 0, 2, {1})
    assert mu_connected(g, 0, 2, {1, 2})


def test_set_version_agrees_with_singletons():
    g = mixed_triangle()
    assert not mu_separated_sets(g, {0, 1}, {2}, {1})
    assert mu_separated_sets(g, set(), {2}, set())


def test_out_of_range_set_rejected():
    with pytest.raises(InputError):
        mu_separated(Dmg.empty(2), 0, 1, {5})


def test_route_oracle_guard():
    with pytest.raises(GuardError):
        route_oracle_connected(Dmg.empty(13), 0, 1)


def test_directed_trek_sources_on_chain():
    g = Dmg.from_edges(3, [(0, 1), (1, 2)])
    # 2 reaches itself through 2 <- 1 -> 2
    assert directed_trek_sources(g, 2) == 0b111
    assert directed_trek_sources(g, 0) == 0


def _triples(g):
    for cm in range(1 << g.n):
        rows = connection_rows(g, cm)
        for a in range(g.n):
            for b in range(g.n):
                yield a, b, cm, bool((rows[a] >> b) & 1)


@given(dmgs(max_nodes=4))
def test_reachability_matches_route_enumeration(g):
    for a, b, cm, conn in _triples(g):
        assert route_oracle_connected(g, a, b, cm) == conn


@settings(max_examples=1000)
@given(graph_and_set(max_nodes=5), st.integers(0, 4), st.integers(0, 4))
def test_reachability_matches_route_enumeration_five_nodes(gc, a, b):
    g, cm = gc
    a, b = a % g.n, b % g.n
    assert route_oracle_connected(g, a, b, cm) == mu_connected(g, a, b, cm)


@given(dmgs())
def test_collider_bound_at_set_size_is_exact(g):
    for a, b, cm, conn in _triples(g):
        assert bounded_collider_connected(g, a, b, cm, popcount(cm)) == conn


@given(dmgs())
def test_witness_walk_is_valid_with_few_colliders(g):
    for a, b, cm, conn in _triples(g):
        w = witness_walk(g, a, b, cm)
        if not conn:
            assert w is None
            continue
        assert w is not None and w.end == b
        assert is_mu_connecting(g, w, cm)
        assert collider_count(g, w) <= popcount(cm)


@given(dmgs(), st.integers(0, 2**40))
def test_independence_model_shrinks_for_supergraphs(g, seed):
    # drop a pseudo-random subset of edges: separations of g persist in the subgraph
    edges = g.edges()
    h = g.remove_edges(e for i, e in enumerate(edges) if (seed >> (i % 40)) & 1)
    assert is_subgraph(h, g)
    for cm in range(1 << g.n):
        rg, rh = connection_rows(g, cm), connection_rows(h, cm)
        assert all(x & ~y == 0 for x, y in zip(rh, rg))
