"""Undirected simple graphs, instance generators and brute-force ground truth.

Vertices are the integers ``0..n-1``. An edge is stored as the canonical
pair ``(min, max)``. Everything in this module sees the whole graph; the
quantum algorithms only ever see a graph through an oracle.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

Edge = tuple[int, int]
Matching = frozenset  # frozenset[Edge]


def canon(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def num_pairs(n: int) -> int:
    return n * (n - 1) // 2


def pair_rank(u: int, v: int, n: int) -> int:
    """Lexicographic rank of the unordered pair {u, v} among all pairs of [n]."""
    if u == v:
        raise ValueError("a pair needs two distinct vertices")
    if u > v:
        u, v = v, u
    if u < 0 or v >= n:
        raise ValueError(f"pair ({u}, {v}) out of range for n={n}")
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


def pair_unrank(r: int, n: int) -> Edge:
    if not 0 <= r < num_pairs(n):
        raise ValueError(f"rank {r} out of range for n={n}")
    u = 0
    row = n - 1
    while r >= row:
        r -= row
        u += 1
        row -= 1
    return (u, u + 1 + r)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        clean = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {e} has an endpoint outside 0..{self.n - 1}")
            clean.add(canon(u, v))
        if len(clean) != len(self.edges):
            raise ValueError("duplicate edges")
        object.__setattr__(self, "edges", frozenset(clean))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> Graph:
        edges = list(edges)
        return cls(n, frozenset(edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_list(self) -> tuple[Edge, ...]:
        """Edges in sorted order; iteration order that does not depend on hashing."""
        return tuple(sorted(self.edges))

    @cached_property
    def adj(self) -> tuple[frozenset, ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def induced_edges(self, vertices: Iterable[int]) -> frozenset:
        vs = set(vertices)
        return frozenset(e for e in self.edges if e[0] in vs and e[1] in vs)


def matched_vertices(matching: Iterable[Edge]) -> set[int]:
    out: set[int] = set()
    for u, v in matching:
        out.add(u)
        out.add(v)
    return out


def is_matching(edges: Iterable[Edge]) -> bool:
    seen: set[int] = set()
    for u, v in edges:
        if u in seen or v in seen or u == v:
            return False
        seen.add(u)
        seen.add(v)
    return True


def is_vertex_cover(g: Graph, cover: Iterable[int]) -> bool:
    c = set(cover)
    return all(u in c or v in c for u, v in g.edges)


# -- text format -------------------------------------------------------------


def parse_graph(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v``."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 2:
        raise ValueError("header line must be 'n m'")
    try:
        n, m = int(lines[0][0]), int(lines[0][1])
    except ValueError as exc:
        raise ValueError("header line must hold two integers") from exc
    body = lines[1:]
    if len(body) != m:
        raise ValueError(f"header announces {m} edges, found {len(body)}")
    edges: set[Edge] = set()
    for row in body:
        if len(row) != 2:
            raise ValueError(f"malformed edge line: {' '.join(row)!r}")
        u, v = int(row[0]), int(row[1])
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        e = canon(u, v)
        if e in edges:
            raise ValueError(f"duplicate edge {e}")
        edges.add(e)
    return Graph(n, frozenset(edges))


def format_graph(g: Graph) -> str:
    rows = [f"{g.n} {g.m}"]
    rows.extend(f"{u} {v}" for u, v in g.edge_list)
    return "\n".join(rows) + "\n"


# -- generators --------------------------------------------------------------


def gen_random_graph(n: int, m: int, seed: int) -> Graph:
    """Uniform simple graph on ``n`` vertices with exactly ``m`` edges."""
    total = num_pairs(n)
    if not 0 <= m <= total:
        raise ValueError(f"m={m} outside 0..{total}")
    ranks = random.Random(seed).sample(range(total), m)
    return Graph(n, frozenset(pair_unrank(r, n) for r in ranks))


def gen_disjoint_edges(n: int, j: int, placement_seed: int) -> Graph:
    if j < 0 or 2 * j > n:
        raise ValueError(f"{j} disjoint edges do not fit on {n} vertices")
    verts = random.Random(placement_seed).sample(range(n), 2 * j)
    return Graph(n, frozenset(canon(verts[2 * i], verts[2 * i + 1]) for i in range(j)))


def gen_disjoint_cliques(n: int, c: int, t: int, placement_seed: int) -> Graph:
    if t < 2:
        raise ValueError("cliques need at least 2 vertices")
    if c < 0 or c * t > n:
        raise ValueError(f"{c} cliques of size {t} do not fit on {n} vertices")
    verts = random.Random(placement_seed).sample(range(n), c * t)
    edges = set()
    for i in range(c):
        block = verts[i * t:(i + 1) * t]
        edges.update(canon(a, b) for a, b in itertools.combinations(block, 2))
    return Graph(n, frozenset(edges))


def gen_cycle_instance(n: int, lengths: Iterable[int], placement_seed: int) -> Graph:
    lengths = list(lengths)
    if any(L < 3 for L in lengths) or sum(lengths) > n:
        raise ValueError(f"cycles of lengths {lengths} do not fit on {n} vertices")
    verts = random.Random(placement_seed).sample(range(n), sum(lengths))
    edges = set()
    pos = 0
    for L in lengths:
        ring = verts[pos:pos + L]
        pos += L
        edges.update(canon(ring[i], ring[(i + 1) % L]) for i in range(L))
    return Graph(n, frozenset(edges))


def all_labeled_graphs(n: int) -> Iterator[Graph]:
    """Every labeled simple graph on ``n`` vertices (2^(n choose 2) of them)."""
    pairs = [pair_unrank(r, n) for r in range(num_pairs(n))]
    for mask in range(1 << len(pairs)):
        yield Graph(n, frozenset(p for i, p in enumerate(pairs) if mask >> i & 1))


# -- ground truth ------------------------------------------------------------


def _cover_within(adj: list[set[int]], budget: int) -> list[int] | None:
    # Branch on a maximum-degree vertex v: either v is in the cover, or all
    # of N(v) is.
    v = max(range(len(adj)), key=lambda x: len(adj[x]), default=None)
    if v is None or not adj[v]:
        return []
    if budget <= 0:
        return None
    if len(adj[v]) == 1:
        # Max degree 1: the remaining graph is a matching.
        need = [x for x in range(len(adj)) if adj[x] and x < next(iter(adj[x]))]
        return need if len(need) <= budget else None

    def without(removed: set[int]) -> list[set[int]]:
        return [set() if x in removed else adj[x] - removed for x in range(len(adj))]

    sub = _cover_within(without({v}), budget - 1)
    if sub is not None:
        return [v] + sub
    nb = adj[v]
    if len(nb) <= budget:
        sub = _cover_within(without(set(nb)), budget - len(nb))
        if sub is not None:
            return sorted(nb) + sub
    return None


def brute_min_vertex_cover(g: Graph) -> tuple[int, frozenset]:
    """Minimum vertex cover by iterative deepening over degree branching."""
    adj = [set(s) for s in g.adj]
    for budget in range(g.n + 1):
        cover = _cover_within(adj, budget)
        if cover is not None:
            return len(cover), frozenset(cover)
    raise AssertionError("unreachable: V(G) is always a cover")


def enumerate_min_vertex_cover(g: Graph) -> tuple[int, frozenset]:
    """Minimum vertex cover by scanning all subsets in size order (small n only)."""
    for size in range(g.n + 1):
        for subset in itertools.combinations(range(g.n), size):
            if is_vertex_cover(g, subset):
                return size, frozenset(subset)
    raise AssertionError("unreachable")


def _augment(adj: tuple[frozenset, ...], mate: dict[int, int]) -> list[int] | None:
    n = len(adj)

    def extend(path: list[int], on_path: set[int]) -> list[int] | None:
        # path ends at a vertex reached by a matched edge (or the free root)
        tip = path[-1]
        for u in sorted(adj[tip]):
            if u in on_path or mate.get(tip) == u:
                continue
            if u not in mate:
                return path + [u]
            w = mate[u]
            if w in on_path:
                continue
            on_path.update((u, w))
            found = extend(path + [u, w], on_path)
            if found:
                return found
            on_path.difference_update((u, w))
        return None

    for root in range(n):
        if root in mate or not adj[root]:
            continue
        found = extend([root], {root})
        if found:
            return found
    return None


def brute_max_matching(g: Graph) -> tuple[int, frozenset]:
    """Maximum matching by exhaustive augmenting-path search over simple paths."""
    mate: dict[int, int] = {}
    while True:
        path = _augment(g.adj, mate)
        if path is None:
            break
        for i in range(0, len(path), 2):
            a, b = path[i], path[i + 1]
            mate[a] = b
            mate[b] = a
    pairs = frozenset(canon(a, b) for a, b in mate.items() if a < b)
    return len(pairs), pairs


def check_matching_properties(g: Graph, matching: Iterable[Edge]) -> tuple[bool, bool]:
    """Return ``(is_matching, is_maximal)`` for a proposed matching of ``g``."""
    edges = [canon(u, v) for u, v in matching]
    if not all(e in g.edges for e in edges) or not is_matching(edges):
        return False, False
    covered = matched_vertices(edges)
    maximal = all(u in covered or v in covered for u, v in g.edges)
    return True, maximal


def greedy_maximal_matching(g: Graph) -> frozenset:
    """Scan pairs in lexicographic order, keeping every edge between free vertices."""
    used: set[int] = set()
    out = []
    for u, v in g.edge_list:
        if u not in used and v not in used:
            out.append((u, v))
            used.update((u, v))
    return frozenset(out)
