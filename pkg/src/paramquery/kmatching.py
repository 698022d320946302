"""k-matching: extend a maximal matching by augmenting paths found through
candidate paths inside G[V(M)].

Each matched vertex carries a knowledge state about its neighbors outside
V(M): type 0 (none), type 1 (exactly one, remembered in ``memo``), or
type 2 (unknown). A candidate path is an alternating path of G[V(M)] that
starts and ends with matching edges and could still extend to an augmenting
path given those states. Each extension attempt either augments M or
settles one type-2 vertex, so ``k - |M| + #type2`` falls by one per call.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .decision_tree import modeled_quantum_cost, run_classical_maximal_matching
from .graph import Edge, Graph, canon, check_matching_properties, matched_vertices
from .grover import SearchSpace, grover_find_or_empty
from .oracle import MatrixOracle, QueryLedger
from .threshold import quantum_threshold_maximal_matching

ALG5_LABEL = "alg5.grover"
ALG5_F_LABEL = "alg5.classicalF"
MAXMATCHING_MODELED_LABEL = "maxmatching.modeled"

TYPE0, TYPE1, TYPE2 = 0, 1, 2


@dataclass
class TypeState:
    type: dict[int, int] = field(default_factory=dict)
    memo: dict[int, int] = field(default_factory=dict)

    def set(self, v: int, t: int, memo: int | None = None) -> None:
        self.type[v] = t
        if t == TYPE1:
            if memo is None:
                raise ValueError("a type-1 vertex needs its outside neighbor")
            self.memo[v] = memo
        else:
            self.memo.pop(v, None)

    def count(self, t: int) -> int:
        return sum(1 for x in self.type.values() if x == t)


@dataclass(frozen=True)
class TypeUpdated:
    vertex: int
    new_type: int
    memo: int | None = None


def potential(M, ts: TypeState, k: int) -> int:
    return k - len(M) + ts.count(TYPE2)


def _mates(M) -> dict[int, int]:
    mate = {}
    for u, v in M:
        mate[u] = v
        mate[v] = u
    return mate


def candidate_path_violations(path, M, F, ts: TypeState) -> list[str]:
    """Reasons ``path`` fails to be a candidate path (empty when it is one)."""
    path = tuple(path)
    l = len(path)
    if l < 2 or l % 2:
        return [f"length {l} is not a positive even number"]
    problems = []
    mate = _mates(M)
    if len(set(path)) != l:
        problems.append("repeated vertex")
    if any(v not in mate for v in path):
        return problems + ["vertex outside V(M)"]
    for i in range(l - 1):
        a, b = path[i], path[i + 1]
        if i % 2 == 0:
            if mate[a] != b:
                problems.append(f"({a}, {b}) should be a matching edge")
        elif mate[a] == b or canon(a, b) not in F:
            problems.append(f"({a}, {b}) should be a non-matching edge of F")
    t1, tl = ts.type.get(path[0]), ts.type.get(path[-1])
    if TYPE0 in (t1, tl):
        problems.append("endpoint of type 0")
    if t1 == TYPE1 and tl == TYPE1 and ts.memo[path[0]] == ts.memo[path[-1]]:
        problems.append("both endpoints remember the same outside vertex")
    return problems


def find_candidate_path(F, M, ts: TypeState) -> tuple[int, ...] | None:
    """Shortest candidate path, lexicographically least among the shortest.

    Exhaustive iterative-deepening search over simple alternating paths; the
    cost is exponential in |M| in the worst case.
    """
    mate = _mates(M)
    verts = sorted(mate)
    nbrs = {v: [] for v in verts}
    for a, b in sorted(F):
        if a in mate and b in mate and mate[a] != b:
            nbrs[a].append(b)
            nbrs[b].append(a)
    for v in verts:
        nbrs[v].sort()
    starts = [v for v in verts if ts.type[v] != TYPE0]

    def closes(first: int, last: int) -> bool:
        tl = ts.type[last]
        if tl == TYPE0:
            return False
        return not (ts.type[first] == TYPE1 and tl == TYPE1 and ts.memo[first] == ts.memo[last])

    def dfs(path: list[int], on: set[int], edges_left: int) -> tuple[int, ...] | None:
        # path ends right after a matching edge
        if edges_left == 0:
            return tuple(path) if closes(path[0], path[-1]) else None
        for w in nbrs[path[-1]]:
            x = mate[w]
            if w in on or x in on:
                continue
            path += (w, x)
            on.update((w, x))
            hit = dfs(path, on, edges_left - 1)
            if hit:
                return hit
            del path[-2:]
            on.difference_update((w, x))
        return None

    for length in range(1, len(M) + 1):
        for v in starts:
            hit = dfs([v, mate[v]], {v, mate[v]}, length - 1)
            if hit:
                return hit
    return None


@dataclass
class KMatchingTrace:
    """Post-hoc record of one run, checked against the true graph."""

    phi_at_heads: list[int] = field(default_factory=list)
    maximal_at_heads: list[bool] = field(default_factory=list)
    types_ok_at_heads: list[bool] = field(default_factory=list)
    f_ok_at_heads: list[bool] = field(default_factory=list)
    phi_drops: list[int] = field(default_factory=list)
    extend_calls: int = 0
    search_errors: int = 0
    f_queries: int = 0
    augmentations: list[tuple[int, ...]] = field(default_factory=list)
    bad_augmentations: int = 0

    @property
    def failed(self) -> bool:
        """Whether any event the error analysis allows for actually happened."""
        return (self.search_errors > 0 or not all(self.maximal_at_heads)
                or not all(self.types_ok_at_heads))


def types_consistent(g: Graph, M, ts: TypeState) -> bool:
    VM = matched_vertices(M)
    for v, t in ts.type.items():
        outside = g.adj[v] - VM
        if t == TYPE0 and outside:
            return False
        if t == TYPE1 and outside != {ts.memo[v]}:
            return False
    return True


def _find_outside(oracle: MatrixOracle, v: int, outside: list[int], epsilon: float, rng,
                  trace: KMatchingTrace | None) -> int | None:
    adj = oracle.simulation_view.adj[v]
    marked = [u for u in outside if u in adj]

    def test(u: int) -> int:
        return oracle.query_pair(v, u, ALG5_LABEL)

    space = SearchSpace(len(outside), marked, test, oracle.ledger, ALG5_LABEL)
    hit = grover_find_or_empty(space, epsilon, rng)
    if hit is None and marked and trace is not None:
        trace.search_errors += 1
    return hit


def extend_candidate_path(oracle: MatrixOracle, epsilon: float, M, Q, ts: TypeState, rng,
                          F=None, trace: KMatchingTrace | None = None
                          ) -> tuple[int, ...] | TypeUpdated:
    """Turn Q into an augmenting path, or learn the type of one type-2 endpoint.

    Does not modify ``ts``; a :class:`TypeUpdated` says what to record.
    With ``F`` given, Q is validated as a candidate path first.
    """
    Q = tuple(Q)
    if F is not None:
        bad = candidate_path_violations(Q, M, F, ts)
        if bad:
            raise ValueError("not a candidate path: " + "; ".join(bad))
    t_first, t_last = ts.type[Q[0]], ts.type[Q[-1]]
    if t_first == TYPE1 and t_last == TYPE1:
        return (ts.memo[Q[0]], *Q, ts.memo[Q[-1]])

    VM = matched_vertices(M)
    outside = [u for u in range(oracle.n) if u not in VM]
    if t_first == TYPE2 and t_last == TYPE2:
        s = _find_outside(oracle, Q[0], outside, epsilon, rng, trace)
        if s is None:
            return TypeUpdated(Q[0], TYPE0)
    else:
        if t_first != TYPE1:
            Q = Q[::-1]
        s = ts.memo[Q[0]]
    v_l = Q[-1]
    t = _find_outside(oracle, v_l, [u for u in outside if u != s], epsilon, rng, trace)
    if t is not None:
        return (s, *Q, t)
    if oracle.query_pair(v_l, s, ALG5_LABEL):
        return TypeUpdated(v_l, TYPE1, s)
    return TypeUpdated(v_l, TYPE0)


def _query_pairs(oracle: MatrixOracle, pairs, F: set[Edge], trace: KMatchingTrace | None) -> None:
    for u, v in pairs:
        if oracle.query_pair(u, v, ALG5_F_LABEL):
            F.add(canon(u, v))
        if trace is not None:
            trace.f_queries += 1


def augmenting_path_ok(g: Graph, M, path) -> bool:
    """Ends unmatched, edges real and alternating, and M xor E(P) one larger."""
    VM = matched_vertices(M)
    if len(path) < 2 or path[0] in VM or path[-1] in VM or len(set(path)) != len(path):
        return False
    pedges = [canon(path[i], path[i + 1]) for i in range(len(path) - 1)]
    if any(e not in g.edges for e in pedges):
        return False
    if any((e in M) != (i % 2 == 1) for i, e in enumerate(pedges)):
        return False
    new = set(M) ^ set(pedges)
    ok, _ = check_matching_properties(g, new)
    return ok and len(new) == len(M) + 1


def run_k_matching(oracle: MatrixOracle, k: int, rng,
                   trace: KMatchingTrace | None = None) -> tuple[bool, frozenset]:
    """Return ``(has k-matching, final M)``; M is maximum whenever the answer is no."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return True, frozenset()
    g = oracle.simulation_view
    M = set(quantum_threshold_maximal_matching(oracle, k - 1, rng))
    if len(M) >= k:
        return True, frozenset(M)
    F: set[Edge] = set()
    VM = sorted(matched_vertices(M))
    _query_pairs(oracle, ((VM[i], VM[j]) for i in range(len(VM))
                          for j in range(i + 1, len(VM))), F, trace)
    ts = TypeState({v: TYPE2 for v in VM})
    epsilon = 1 / (12 * k)

    while len(M) < k:
        if trace is not None:
            trace.phi_at_heads.append(potential(M, ts, k))
            trace.maximal_at_heads.append(check_matching_properties(g, M)[1])
            trace.types_ok_at_heads.append(types_consistent(g, M, ts))
            trace.f_ok_at_heads.append(F == set(g.induced_edges(matched_vertices(M))))
        Q = find_candidate_path(F, M, ts)
        if Q is None:
            return False, frozenset(M)
        before = potential(M, ts, k)
        P = extend_candidate_path(oracle, epsilon, M, Q, ts, rng, trace=trace)
        if trace is not None:
            trace.extend_calls += 1
        if isinstance(P, TypeUpdated):
            ts.set(P.vertex, P.new_type, P.memo)
        else:
            if trace is not None:
                trace.augmentations.append(P)
                if not augmenting_path_ok(g, M, P):
                    trace.bad_augmentations += 1
            old = matched_vertices(M)
            M ^= {canon(P[i], P[i + 1]) for i in range(len(P) - 1)}
            s, t = P[0], P[-1]
            ts.set(s, TYPE0)
            ts.set(t, TYPE0)
            pairs = [(x, u) for x in (s, t) for u in sorted(old)]
            pairs.append((s, t))
            _query_pairs(oracle, pairs, F, trace)
            for v in [v for v, x in ts.type.items() if x == TYPE1]:
                if ts.memo[v] in (s, t):
                    ts.set(v, TYPE0)
        if trace is not None:
            trace.phi_drops.append(before - potential(M, ts, k))
    return True, frozenset(M)


def quantum_k_matching(oracle: MatrixOracle, k: int, rng,
                       trace: KMatchingTrace | None = None) -> frozenset | None:
    """A matching of size at least k, or None when there is none."""
    found, M = run_k_matching(oracle, k, rng, trace)
    return M if found else None


def quantum_maximum_matching(oracle: MatrixOracle, rng, c: float = 1.0,
                             trace: KMatchingTrace | None = None) -> frozenset:
    """Maximum matching: size a maximal matching p, then ask for a 2p-matching.

    The first maximal matching comes from the classical greedy scan run on a
    private ledger; its quantum cost is recorded as a model only.
    """
    M0, stats = run_classical_maximal_matching(oracle.fork(QueryLedger()))
    modeled_quantum_cost(stats.depth_bound, stats.mistake_bound, c, oracle.ledger,
                         MAXMATCHING_MODELED_LABEL)
    _, M = run_k_matching(oracle, 2 * len(M0), rng, trace)
    return M


def f_query_bound(k: int) -> int:
    return 4 * k * k + 8 * k

