"""k-vertex cover: quantum query kernelization, a classical solver for the
kernel, and the adjacency-list variant.

The kernel rests on a maximal matching M of size at most k. Every edge of G
touches V(M), so scanning the neighborhoods of matched vertices finds every
edge. A matched vertex with more than k neighbors must be in every cover of
size at most k (it is forced into U). The remaining matched
vertices each have at most k neighbors, which bounds the kernel by 2k^2 edges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .decision_tree import modeled_quantum_cost, run_list_scan_matching
from .graph import Edge, Graph, canon, format_graph, matched_vertices, num_pairs, parse_graph
from .grover import SearchSpace, grover_find_or_empty, grover_lasvegas
from .oracle import ListOracle, MatrixOracle, QueryLedger
from .threshold import ALG1_LABEL, quantum_threshold_maximal_matching

ALG3_LABEL = "alg3.grover"
ALG3_CHECK_LABEL = "alg3.classical"
LISTVC_LABEL = "listvc.classical"
LISTVC_MODELED_LABEL = "listvc.modeled"
NO_INSTANCE = "NO-INSTANCE"


@dataclass(frozen=True)
class Kernel:
    U: frozenset
    g_prime: Graph
    k_prime: int
    source_matching: frozenset

    def to_text(self) -> str:
        head = " ".join(str(v) for v in sorted(self.U))
        return f"U: {head}".rstrip() + f"\nk': {self.k_prime}\n" + format_graph(self.g_prime)

    @classmethod
    def from_text(cls, text: str) -> Kernel:
        lines = text.splitlines()
        if len(lines) < 3 or not lines[0].startswith("U:") or not lines[1].startswith("k':"):
            raise ValueError("kernel text needs 'U:' and \"k':\" header lines")
        U = frozenset(int(tok) for tok in lines[0][2:].split())
        k_prime = int(lines[1][3:])
        g = parse_graph("\n".join(lines[2:]))
        return cls(U, g, k_prime, frozenset())


def alg3_budget(n: int, k: int, multiplier: float = 192) -> int:
    return math.ceil(multiplier * k * math.sqrt((k + 1) * n))


def _only_edgeless(oracle: MatrixOracle, rng) -> bool:
    # k = 0: a single emptiness test over every pair.
    g = oracle.simulation_view

    def test(e: Edge) -> int:
        return oracle.query_pair(e[0], e[1], ALG1_LABEL)

    space = SearchSpace(num_pairs(g.n), g.edge_list, test, oracle.ledger, ALG1_LABEL)
    return grover_find_or_empty(space, 1 / 6, rng) is None


def kernelize(oracle: MatrixOracle, k: int, rng, budget_multiplier: float = 192,
              alg1_multiplier: float = 96) -> Kernel | None:
    """Reduce (G, k) to an equivalent instance with at most 2k^2 edges.

    Returns None when the maximal matching has more than k edges, which
    certifies that no cover of size k exists.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    n = oracle.n
    if k == 0:
        if _only_edgeless(oracle, rng):
            return Kernel(frozenset(), Graph(n), 0, frozenset())
        return None

    M = quantum_threshold_maximal_matching(oracle, k, rng, budget_multiplier=alg1_multiplier)
    if len(M) > k:
        return None
    VM = matched_vertices(M)
    ledger = oracle.ledger

    U: set[int] = set()
    found: set[Edge] = set()
    d = dict.fromkeys(VM, 0)
    budget = alg3_budget(n, k, budget_multiplier)
    start = ledger.spent(ALG3_LABEL)
    ledger.set_budget(ALG3_LABEL, start + budget)

    def test(e: Edge) -> int:
        return oracle.query_pair(e[0], e[1], ALG3_CHECK_LABEL)

    # true edges still to be found: at an active matched vertex, other end outside U
    pending = {e for e in oracle.simulation_view.edge_list if e[0] in d or e[1] in d}
    live_found = 0
    while True:
        left = budget - (ledger.spent(ALG3_LABEL) - start)
        if left <= 0:
            break
        n_active = len(VM) - len(U)
        if not n_active:
            break
        # each unordered pair counted once, even when both ends are active
        size = n_active * (n - len(U) - 1) - num_pairs(n_active) - live_found
        space = SearchSpace(size, sorted(pending), test, ledger, ALG3_LABEL, ALG3_CHECK_LABEL)
        out = grover_lasvegas(space, rng, iteration_cap=left)
        if out.found is None:
            break
        e = out.found
        found.add(e)
        pending.discard(e)
        live_found += 1
        for x in e:
            if x in d:
                d[x] += 1
                if d[x] > k:
                    U.add(x)
                    pending = {p for p in pending if x not in p}
                    live_found = sum(1 for f in found if f[0] not in U and f[1] not in U)

    kept = frozenset(e for e in found if e[0] not in U and e[1] not in U)
    return Kernel(frozenset(U), Graph(n, kept), k - len(U), M)


def classical_fpt_vc(g: Graph, k: int) -> frozenset | None:
    """Exact k-vertex cover by branching on an uncovered edge (2^k leaves)."""
    edges = g.edge_list
    if k < 0:
        return None
    chosen: set[int] = set()

    def branch(budget: int) -> bool:
        for u, v in edges:
            if u not in chosen and v not in chosen:
                break
        else:
            return True
        if budget == 0:
            return False
        for x in (u, v):
            chosen.add(x)
            if branch(budget - 1):
                return True
            chosen.discard(x)
        return False

    return frozenset(chosen) if branch(k) else None


def solve_kernel(kernel: Kernel | None) -> frozenset | None:
    if kernel is None:
        return None
    S = classical_fpt_vc(kernel.g_prime, kernel.k_prime)
    return None if S is None else S | kernel.U


def quantum_vertex_cover(oracle: MatrixOracle, k: int, rng) -> frozenset | None:
    """A vertex cover of size at most k, or None when the kernel says there is none."""
    return solve_kernel(kernelize(oracle, k, rng))


def kernel_violations(kernel: Kernel, k: int) -> list[str]:
    """Structural invariants every returned kernel must satisfy."""
    problems = []
    g = kernel.g_prime
    if g.m > 2 * k * k:
        problems.append(f"{g.m} edges > 2k^2 = {2 * k * k}")
    if any(e[0] in kernel.U or e[1] in kernel.U for e in g.edges):
        problems.append("an edge of g' touches U")
    rest = matched_vertices(kernel.source_matching) - kernel.U
    if any(e[0] not in rest and e[1] not in rest for e in g.edges):
        problems.append("an edge of g' misses V(M) minus U")
    for v in rest:
        if g.degree(v) > k:
            problems.append(f"matched vertex {v} has degree {g.degree(v)} > k")
    if kernel.k_prime != k - len(kernel.U):
        problems.append("k' != k - |U|")
    return problems


def kernel_conditions(g: Graph, kernel: Kernel, k: int) -> tuple[bool, bool, bool]:
    """Post-hoc checks against the true graph: (maximal M, property i, property ii).

    (i): every matched vertex of true degree > k is in U.
    (ii): every true edge at a matched vertex outside U, whose other end is
    outside U too, was found.
    """
    M = kernel.source_matching
    VM = matched_vertices(M)
    maximal = all(u in VM or v in VM for u, v in g.edges)
    prop_i = all(v in kernel.U for v in VM if g.degree(v) > k)
    U = kernel.U
    prop_ii = all(e in kernel.g_prime.edges for e in g.edges
                  if e[0] not in U and e[1] not in U and (e[0] in VM or e[1] in VM))
    return maximal, prop_i, prop_ii


# -- adjacency-list model ------------------------------------------------------


def list_model_kernelize(oracle: ListOracle, k: int, rng=None, c: float = 1.0) -> Kernel | None:
    """Kernel from list queries: modeled matching cost, then k+1 reads per matched row.

    ``rng`` is unused; the list-model procedure is deterministic given the
    neighbor order.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    g = oracle.simulation_view
    # The scan runs on a private ledger; its quantum cost enters only as a model.
    M, stats = run_list_scan_matching(oracle.fork(QueryLedger()), k)
    modeled_quantum_cost(stats.depth_bound, stats.mistake_bound, c, oracle.ledger,
                         LISTVC_MODELED_LABEL)
    if len(M) > k:
        return None

    U: set[int] = set()
    k_left = k
    found: set[Edge] = set()
    for v in sorted(matched_vertices(M)):
        nbrs = []
        for i in range(1, min(k + 1, g.n - 1) + 1):
            w = oracle.query_list(v, i, LISTVC_LABEL)
            if w is None:
                break
            if w not in U:
                nbrs.append(w)
        if len(nbrs) > k_left:
            U.add(v)
            k_left -= 1
        else:
            found.update(canon(v, w) for w in nbrs)
    kept = frozenset(e for e in found if e[0] not in U and e[1] not in U)
    return Kernel(frozenset(U), Graph(g.n, kept), k - len(U), M)


def list_model_vertex_cover(oracle: ListOracle, k: int, rng=None) -> frozenset | None:
    return solve_kernel(list_model_kernelize(oracle, k, rng))
