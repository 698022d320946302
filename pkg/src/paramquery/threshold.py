"""Threshold maximal matching: a matching of size k+1, or a maximal one."""

from __future__ import annotations

import math

from .graph import Edge, num_pairs
from .grover import SearchSpace, grover_lasvegas
from .oracle import MatrixOracle

ALG1_LABEL = "alg1.grover"
ALG2_LABEL = "alg2.grover"


def threshold_budget(n: int, k: int, multiplier: float = 96) -> int:
    return math.ceil(multiplier * n * math.sqrt(k + 1))


def _free_edge_space(oracle: MatrixOracle, matched: set[int], label: str) -> SearchSpace:
    # All n(n-1)/2 pairs are candidates; the marked ones are edges between
    # unmatched vertices. Endpoint membership is free classical bookkeeping.
    g = oracle.simulation_view
    marked = [e for e in g.edge_list if e[0] not in matched and e[1] not in matched]

    def test(e: Edge) -> int:
        return oracle.query_pair(e[0], e[1], label) if matched.isdisjoint(e) else 0

    return SearchSpace(num_pairs(g.n), marked, test, oracle.ledger, label)


def quantum_threshold_maximal_matching(oracle: MatrixOracle, k: int, rng,
                                       budget_multiplier: float = 96,
                                       label: str = ALG1_LABEL,
                                       count_verification: bool = False) -> frozenset:
    """Grow a matching edge by edge with Las-Vegas Grover searches.

    Stops at ``k + 1`` edges or once ``budget_multiplier * n * sqrt(k+1)``
    Grover iterations are spent under ``label``; a search in flight is cut
    at the budget. With ``count_verification`` the verification queries
    count against the budget too.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    n = oracle.n
    budget = threshold_budget(n, k, budget_multiplier)
    ledger = oracle.ledger
    start = ledger.spent(label, count_verification)
    ledger.set_budget(label, start + budget, include_classical=count_verification)
    check_cost = 1 if count_verification else 0
    matched: set[int] = set()
    matching: list[Edge] = []
    while len(matching) < k + 1:
        left = budget - (ledger.spent(label, count_verification) - start)
        if left <= 0:
            break
        space = _free_edge_space(oracle, matched, label)
        out = grover_lasvegas(space, rng, iteration_cap=left, check_cost=check_cost)
        if out.found is None:
            break
        u, v = out.found
        matching.append((u, v))
        matched.update((u, v))
    return frozenset(matching)


def threshold_matching_unbudgeted(oracle: MatrixOracle, k: int, rng,
                                  label: str = ALG2_LABEL) -> tuple[frozenset, int]:
    """The budget-free loop, stopped as soon as M is maximal or has k+1 edges.

    The stopping test reads the hidden graph; it is instrumentation for
    measuring the expected cost, not part of any algorithm.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    matched: set[int] = set()
    matching: list[Edge] = []
    total = 0
    while len(matching) < k + 1:
        space = _free_edge_space(oracle, matched, label)
        if not space.marked:
            break
        out = grover_lasvegas(space, rng)
        total += out.iterations_used
        u, v = out.found
        matching.append((u, v))
        matched.update((u, v))
    return frozenset(matching), total
