from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paramquery.graph import (
    Graph, all_labeled_graphs, brute_max_matching, brute_min_vertex_cover, canon,
    check_matching_properties, enumerate_min_vertex_cover, format_graph, gen_cycle_instance,
    gen_disjoint_cliques, gen_disjoint_edges, gen_random_graph, greedy_maximal_matching,
    is_matching, is_vertex_cover, num_pairs, pair_rank, pair_unrank, parse_graph,
)

K4 = Graph(4, frozenset(itertools.combinations(range(4), 2)))
TRIANGLE = Graph(3, frozenset({(0, 1), (1, 2), (0, 2)}))
C5 = Graph(5, frozenset(canon(i, (i + 1) % 5) for i in range(5)))


def test_graph_rejects_bad_edges():
    with pytest.raises(ValueError):
        Graph(3, frozenset({(1, 1)}))
    with pytest.raises(ValueError):
        Graph(3, frozenset({(0, 3)}))


@pytest.mark.parametrize("n", [2, 3, 7, 12])
def test_pair_rank_is_a_bijection(n):
    ranks = [pair_rank(u, v, n) for u, v in itertools.combinations(range(n), 2)]
    assert ranks == list(range(num_pairs(n)))
    assert all(pair_rank(*pair_unrank(r, n), n) == r for r in ranks)


def test_random_graph_examples():
    assert gen_random_graph(4, 0, 1).m == 0
    assert gen_random_graph(4, 6, 1).edges == K4.edges
    assert gen_random_graph(10, 5, 7).edges == gen_random_graph(10, 5, 7).edges
    with pytest.raises(ValueError):
        gen_random_graph(4, 7, 1)


def test_disjoint_edges_examples():
    g = gen_disjoint_edges(6, 3, 5)
    assert g.m == 3 and is_matching(g.edges) and all(g.degree(v) == 1 for v in range(6))
    g = gen_disjoint_edges(9, 2, 5)
    assert g.m == 2 and sum(1 for v in range(9) if g.degree(v) == 0) == 5
    with pytest.raises(ValueError):
        gen_disjoint_edges(3, 2, 0)


def test_disjoint_cliques_examples():
    g = gen_disjoint_cliques(6, 2, 3, 11)
    assert g.m == 6 and all(g.degree(v) == 2 for v in range(6))
    assert gen_disjoint_cliques(6, 1, 2, 11).m == 1
    with pytest.raises(ValueError):
        gen_disjoint_cliques(5, 2, 3, 0)


def test_cycle_instance_examples():
    g = gen_cycle_instance(8, [8], 3)
    assert g.m == 8 and all(g.degree(v) == 2 for v in range(8))
    assert nx.is_connected(nx.Graph(list(g.edges)))
    g = gen_cycle_instance(8, [3, 5], 3)
    sizes = sorted(len(c) for c in nx.connected_components(nx.Graph(list(g.edges))))
    assert sizes == [3, 5]
    with pytest.raises(ValueError):
        gen_cycle_instance(4, [3, 3], 0)


def test_min_vertex_cover_examples():
    assert brute_min_vertex_cover(Graph(4)) == (0, frozenset())
    size, cover = brute_min_vertex_cover(TRIANGLE)
    assert size == 2 and is_vertex_cover(TRIANGLE, cover)
    g = gen_disjoint_edges(10, 4, 2)
    size, cover = brute_min_vertex_cover(g)
    assert size == 4 and all(len(cover & set(e)) == 1 for e in g.edges)


@pytest.mark.parametrize("n", range(1, 6))
def test_min_cover_matches_subset_enumeration(n):
    for g in all_labeled_graphs(n):
        size, cover = brute_min_vertex_cover(g)
        assert is_vertex_cover(g, cover) and len(cover) == size
        assert size == enumerate_min_vertex_cover(g)[0]


def test_max_matching_examples():
    assert brute_max_matching(Graph(3)) == (0, frozenset())
    size, M = brute_max_matching(K4)
    assert size == 2 and check_matching_properties(K4, M) == (True, True)
    size, M = brute_max_matching(C5)
    assert size == 2 and check_matching_properties(C5, M)[0]


def _nx_matching_size(g: Graph) -> int:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return len(nx.max_weight_matching(h, maxcardinality=True))


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 11), st.data())
def test_max_matching_agrees_with_networkx(n, data):
    m = data.draw(st.integers(0, num_pairs(n)))
    g = gen_random_graph(n, m, data.draw(st.integers(0, 2**32)))
    size, M = brute_max_matching(g)
    assert check_matching_properties(g, M)[0] and len(M) == size
    assert size == _nx_matching_size(g)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.floats(0, 1), st.integers(0, 2**32))
def test_konig_on_bipartite_graphs(a, b, p, seed):
    rng = random.Random(seed)
    edges = frozenset((i, a + j) for i in range(a) for j in range(b) if rng.random() < p)
    g = Graph(a + b, edges)
    assert brute_min_vertex_cover(g)[0] == brute_max_matching(g)[0]


def test_check_matching_properties_examples():
    assert check_matching_properties(K4, {(0, 1)}) == (True, False)
    assert check_matching_properties(K4, {(0, 1), (2, 3)}) == (True, True)
    assert check_matching_properties(TRIANGLE, {(0, 1), (1, 2)}) == (False, False)
    assert check_matching_properties(TRIANGLE, {(0, 3)}) == (False, False)


def test_greedy_matching_is_maximal():
    for seed in range(50):
        g = gen_random_graph(12, 14, seed)
        assert check_matching_properties(g, greedy_maximal_matching(g)) == (True, True)


def test_all_labeled_graphs_count():
    assert sum(1 for _ in all_labeled_graphs(4)) == 64


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 15), st.data())
def test_text_round_trip(n, data):
    m = data.draw(st.integers(0, num_pairs(n)))
    g = gen_random_graph(n, m, data.draw(st.integers(0, 1000)))
    assert parse_graph(format_graph(g)) == g


@pytest.mark.parametrize("text", [
    "", "3", "3 1\n0 0\n", "3 1\n0 1\n0 1\n", "3 2\n0 1\n1 0\n", "3 1\n0 5\n", "x y\n",
])
def test_parse_rejects_malformed(text):
    with pytest.raises(ValueError):
        parse_graph(text)
