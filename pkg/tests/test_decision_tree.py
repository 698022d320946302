from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paramquery.decision_tree import (
    MODELED_LABEL, SCAN_LABEL, modeled_quantum_cost, run_classical_maximal_matching,
    run_list_scan_matching,
)
from paramquery.graph import (
    Graph, check_matching_properties, gen_disjoint_edges, gen_random_graph,
    greedy_maximal_matching,
)
from paramquery.oracle import ListOracle, MatrixOracle, QueryLedger


def test_classical_examples():
    M, st_ = run_classical_maximal_matching(MatrixOracle(Graph(5)))
    assert M == frozenset() and st_.mistakes == 0 and st_.queries_used == 10
    M, st_ = run_classical_maximal_matching(MatrixOracle(Graph(2, frozenset({(0, 1)}))))
    assert M == {(0, 1)} and st_.mistakes == 1 and st_.queries_used == 1
    for p in (1, 3, 5):
        _, st_ = run_classical_maximal_matching(MatrixOracle(gen_disjoint_edges(12, p, p)))
        assert st_.mistakes == p


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 14), st.integers(0, 40), st.integers(0, 2**32))
def test_classical_matches_direct_greedy(n, m, seed):
    g = gen_random_graph(n, min(m, n * (n - 1) // 2), seed)
    o = MatrixOracle(g)
    M, s = run_classical_maximal_matching(o)
    assert M == greedy_maximal_matching(g)
    assert s.queries_used == o.ledger.get(SCAN_LABEL, "classical")
    assert s.mistakes == len(M) and s.within_bounds()


def test_list_scan_examples():
    M, s = run_list_scan_matching(ListOracle(Graph(6)), 2)
    assert M == frozenset() and s.mistakes == 0 and s.queries_used == 6
    for k in (0, 2, 4):
        g = gen_disjoint_edges(2 * k + 6, k + 2, k)
        M, s = run_list_scan_matching(ListOracle(g), k)
        assert len(M) == k + 1 and s.mistakes == k + 1
    M, s = run_list_scan_matching(ListOracle(Graph(4, frozenset({(1, 2)}))), 0)
    assert M == {(1, 2)} and s.queries_used == 2


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 14), st.integers(0, 40), st.integers(0, 5), st.integers(0, 2**32))
def test_list_scan_bounds(n, m, k, seed):
    g = gen_random_graph(n, min(m, n * (n - 1) // 2), seed)
    M, s = run_list_scan_matching(ListOracle(g, order_seed=seed), k)
    ok, maximal = check_matching_properties(g, M)
    assert ok and len(M) <= k + 1
    assert maximal or len(M) == k + 1
    assert s.within_bounds() and s.depth_bound == g.m + n


def test_modeled_cost_examples():
    assert modeled_quantum_cost(0, 7) == 0
    assert modeled_quantum_cost(100, 3) == 18
    assert modeled_quantum_cost(45, 3) == 12
    assert modeled_quantum_cost(16, 4) == 8
    assert modeled_quantum_cost(10, 10, c=2.5) == 25
    with pytest.raises(ValueError):
        modeled_quantum_cost(-1, 1)


def test_modeled_cost_goes_to_its_own_category():
    led = QueryLedger()
    cost = modeled_quantum_cost(45, 3, ledger=led)
    assert led.snapshot()[MODELED_LABEL] == {"classical": 0, "grover_iterations": 0,
                                             "modeled": cost}
    assert cost == math.ceil(math.sqrt(135))
