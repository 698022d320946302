"""Classical decision trees with a guessing scheme, and their modeled quantum cost.

A classical query algorithm is executed as-is; alongside it we count the
queries on the executed path and the queries whose answer differed from the
scheme's guess. A tree of depth T whose paths carry at most I wrong guesses
converts to a bounded-error quantum algorithm with O(sqrt(T I)) queries.
That conversion is not simulated: its cost is reported as
``ceil(c * sqrt(T * I))`` in the ``modeled`` ledger category.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graph import Edge, num_pairs
from .oracle import ListOracle, MatrixOracle, QueryLedger

SCAN_LABEL = "dtree.scan"
MODELED_LABEL = "dtree.modeled"


@dataclass(frozen=True)
class GuessStats:
    queries_used: int
    mistakes: int
    depth_bound: int
    mistake_bound: int

    def within_bounds(self) -> bool:
        return self.queries_used <= self.depth_bound and self.mistakes <= self.mistake_bound


def run_classical_maximal_matching(oracle: MatrixOracle,
                                   label: str = SCAN_LABEL) -> tuple[frozenset, GuessStats]:
    """Greedy pair scan; the scheme always guesses "no edge"."""
    n = oracle.n
    covered = [False] * n
    matching: list[Edge] = []
    queries = mistakes = 0
    for v in range(n):
        for u in range(v + 1, n):
            if covered[v]:
                break
            if covered[u]:
                continue
            queries += 1
            if oracle.query_pair(v, u, label):
                mistakes += 1
                matching.append((v, u))
                covered[v] = covered[u] = True
    stats = GuessStats(queries, mistakes, num_pairs(n), len(matching))
    return frozenset(matching), stats


def run_list_scan_matching(oracle: ListOracle, k: int,
                           label: str = SCAN_LABEL) -> tuple[frozenset, GuessStats]:
    """Row-by-row neighbor scan that stops at k+1 edges.

    A row ends at the first null, or as soon as its own vertex is matched;
    rows of already-matched vertices are skipped. Outcomes that are null or
    an already-matched neighbor form the guessed branch, so a wrong guess is
    exactly the discovery of an edge between two free vertices.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    n = oracle.n
    covered = [False] * n
    matching: list[Edge] = []
    queries = mistakes = 0
    for v in range(n):
        if len(matching) > k:
            break
        if covered[v]:
            continue
        for i in range(1, n):
            queries += 1
            w = oracle.query_list(v, i, label)
            if w is None:
                break
            if not covered[w]:
                mistakes += 1
                matching.append((min(v, w), max(v, w)))
                covered[v] = covered[w] = True
                break
    m = oracle.simulation_view.m
    stats = GuessStats(queries, mistakes, m + n, k + 1)
    return frozenset(matching), stats


def modeled_quantum_cost(T: int, I: int, c: float = 1.0, ledger: QueryLedger | None = None,
                         label: str = MODELED_LABEL) -> int:
    if T < 0 or I < 0:
        raise ValueError("T and I must be non-negative")
    prod = T * I
    if c == 1:
        r = math.isqrt(prod)
        cost = r if r * r == prod else r + 1
    else:
        cost = math.ceil(c * math.sqrt(prod))
    if ledger is not None:
        ledger.charge(label, modeled=cost)
    return cost
