from __future__ import annotations

import itertools
import math
import random

import pytest

from paramquery.graph import Graph, check_matching_properties, gen_disjoint_edges, gen_random_graph
from paramquery.oracle import MatrixOracle
from paramquery.threshold import (
    ALG1_LABEL, ALG2_LABEL, quantum_threshold_maximal_matching, threshold_budget,
    threshold_matching_unbudgeted,
)

K4 = Graph(4, frozenset(itertools.combinations(range(4), 2)))


def test_budget_formula():
    assert threshold_budget(10, 3) == math.ceil(96 * 10 * 2)
    assert threshold_budget(7, 0, multiplier=1) == 7


def test_edgeless_gives_empty_matching():
    o = MatrixOracle(Graph(8))
    assert quantum_threshold_maximal_matching(o, 3, random.Random(0)) == frozenset()
    assert o.ledger.get(ALG1_LABEL, "grover_iterations") == threshold_budget(8, 3)


def test_negative_k_rejected():
    with pytest.raises(ValueError):
        quantum_threshold_maximal_matching(MatrixOracle(K4), -1, random.Random(0))


@pytest.mark.parametrize("k", [0, 1, 3])
def test_disjoint_edges_reach_k_plus_one(k):
    rng = random.Random(k)
    hits = 0
    for trial in range(300):
        g = gen_disjoint_edges(2 * k + 8, k + 2, trial)
        M = quantum_threshold_maximal_matching(MatrixOracle(g), k, rng)
        assert check_matching_properties(g, M)[0] and len(M) <= k + 1
        hits += len(M) == k + 1
    assert hits / 300 >= 5 / 6


def test_k4_gives_maximal_matching():
    rng = random.Random(9)
    good = 0
    for _ in range(300):
        M = quantum_threshold_maximal_matching(MatrixOracle(K4), 2, rng)
        ok, maximal = check_matching_properties(K4, M)
        assert ok
        good += maximal and len(M) == 2
    assert good / 300 >= 5 / 6


def test_budget_never_exceeded_and_edges_are_free_at_insertion():
    rng = random.Random(1)
    for seed in range(200):
        g = gen_random_graph(30, 25, seed)
        o = MatrixOracle(g)
        M = quantum_threshold_maximal_matching(o, 4, rng, budget_multiplier=2)
        assert check_matching_properties(g, M)[0]
        assert o.ledger.get(ALG1_LABEL, "grover_iterations") <= threshold_budget(30, 4, 2)


def test_count_verification_switch():
    rng = random.Random(2)
    g = gen_random_graph(20, 30, 0)
    o = MatrixOracle(g)
    quantum_threshold_maximal_matching(o, 5, rng, budget_multiplier=1, count_verification=True)
    assert o.ledger.spent(ALG1_LABEL, include_classical=True) <= threshold_budget(20, 5, 1)


def test_unbudgeted_examples():
    g = Graph(2, frozenset({(0, 1)}))
    M, iters = threshold_matching_unbudgeted(MatrixOracle(g), 0, random.Random(0))
    assert M == {(0, 1)} and iters >= 0
    assert threshold_matching_unbudgeted(MatrixOracle(Graph(5)), 3, random.Random(0)) == (
        frozenset(), 0)


def test_unbudgeted_mean_on_perfect_matching():
    rng = random.Random(4)
    total = 0
    trials = 1000
    for trial in range(trials):
        o = MatrixOracle(gen_disjoint_edges(20, 10, trial))
        M, iters = threshold_matching_unbudgeted(o, 9, rng)
        assert len(M) == 10
        assert o.ledger.get(ALG2_LABEL, "grover_iterations") == iters
        total += iters
    assert total / trials <= 16 * 20 * math.sqrt(10)
