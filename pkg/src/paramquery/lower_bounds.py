"""Adversary-method quantities for explicit hard-instance families.

An input is the bit string of the n(n-1)/2 pair positions, indexed by
:func:`~paramquery.graph.pair_rank`. Given yes-inputs X, no-inputs Y and a
relation R between them, the bound is sqrt(m m' / l_max) with

* m: fewest related y over any x (m' symmetric),
* l_{x,i}: related y that differ from x at position i (l'_{y,i} symmetric),
* l_max: largest l_{x,i} l'_{y,i} over related (x, y) differing at i.

Everything is enumerated over labeled graphs, so the families are kept small.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .graph import Graph, canon, pair_rank

#: Largest family the builders will enumerate.
MAX_FAMILY = 200_000


@dataclass
class AdversaryInstance:
    n: int
    X: list[Graph]
    Y: list[Graph]
    pairs: list[tuple[int, int]]
    _pair_set: set = field(default=None, repr=False)

    def __post_init__(self) -> None:
        xs = {g.edges for g in self.X}
        if any(g.edges in xs for g in self.Y):
            raise ValueError("X and Y share an input")
        for i, j in self.pairs:
            if not (0 <= i < len(self.X) and 0 <= j < len(self.Y)):
                raise ValueError(f"relation pair ({i}, {j}) out of range")
        self._pair_set = set(self.pairs)

    def related(self, i: int, j: int) -> bool:
        return (i, j) in self._pair_set


@dataclass(frozen=True)
class AdversaryQuantities:
    m: int
    m_prime: int
    l_max: int
    max_lx: int
    max_ly: int
    v: Fraction

    @property
    def bound_squared(self) -> Fraction:
        return Fraction(self.m * self.m_prime, self.l_max)

    @property
    def bound(self) -> float:
        return math.sqrt(self.bound_squared)


def _ranks(g: Graph) -> frozenset:
    return frozenset(pair_rank(u, v, g.n) for u, v in g.edges)


def adversary_quantities(a: AdversaryInstance) -> AdversaryQuantities:
    if not a.pairs:
        raise ValueError("the relation is empty")
    xr = [_ranks(g) for g in a.X]
    yr = [_ranks(g) for g in a.Y]
    deg_x = Counter(i for i, _ in a.pairs)
    deg_y = Counter(j for _, j in a.pairs)
    m = min(deg_x.get(i, 0) for i in range(len(a.X)))
    m_prime = min(deg_y.get(j, 0) for j in range(len(a.Y)))
    if m == 0 or m_prime == 0:
        raise ValueError("some input has no related partner, so m or m' is zero")
    diffs = {(i, j): xr[i] ^ yr[j] for i, j in a.pairs}
    lx: Counter = Counter()
    ly: Counter = Counter()
    for (i, j), d in diffs.items():
        for pos in d:
            lx[i, pos] += 1
            ly[j, pos] += 1
    l_max = 0
    v = Fraction(0)
    for (i, j), d in diffs.items():
        for pos in d:
            a_, b_ = lx[i, pos], ly[j, pos]
            l_max = max(l_max, a_ * b_)
            v = max(v, min(Fraction(a_, m), Fraction(b_, m_prime)))
    return AdversaryQuantities(m, m_prime, l_max, max(lx.values()), max(ly.values()), v)


def randomized_quantity_v(a: AdversaryInstance) -> Fraction:
    return adversary_quantities(a).v


# -- enumeration -----------------------------------------------------------------


def _matchings(vertices: tuple[int, ...], size: int) -> Iterator[frozenset]:
    if size == 0:
        yield frozenset()
        return
    if len(vertices) < 2 * size:
        return
    first, rest = vertices[0], vertices[1:]
    # either the smallest vertex is unmatched ...
    yield from _matchings(rest, size)
    # ... or matched to some later vertex
    for idx, w in enumerate(rest):
        remaining = rest[:idx] + rest[idx + 1:]
        for sub in _matchings(remaining, size - 1):
            yield sub | {(first, w)}


def _clique_unions(vertices: tuple[int, ...], count: int, t: int) -> Iterator[frozenset]:
    # unordered collections of ``count`` disjoint t-subsets; the smallest
    # chosen vertex always opens a clique
    if count == 0:
        yield frozenset()
        return
    for idx, first in enumerate(vertices):
        later = vertices[idx + 1:]
        if len(later) + 1 < count * t:
            return
        for others in itertools.combinations(later, t - 1):
            block = (first, *others)
            edges = frozenset(itertools.combinations(block, 2))
            rest = tuple(x for x in later if x not in others)
            for sub in _clique_unions(rest, count - 1, t):
                yield edges | sub


def _cycles_on(vertices: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    # each undirected cycle once: start at the smallest vertex, second < last
    first, rest = vertices[0], vertices[1:]
    for perm in itertools.permutations(rest):
        if perm[0] < perm[-1]:
            yield (first, *perm)


def _cycle_edges(cycle: tuple[int, ...]) -> frozenset:
    L = len(cycle)
    return frozenset(canon(cycle[i], cycle[(i + 1) % L]) for i in range(L))


def _count_cycles(n: int, L: int) -> int:
    return math.comb(n, L) * math.factorial(L - 1) // 2


def _check_size(count: int, what: str) -> None:
    if count > MAX_FAMILY:
        raise ValueError(f"{what} has {count} members; enumeration limit is {MAX_FAMILY}")


def _count_matchings(n: int, size: int) -> int:
    return math.comb(n, 2 * size) * math.prod(range(2 * size - 1, 0, -2))


def _components(edges: frozenset) -> list[frozenset]:
    """Edge sets of the connected components."""
    comp: dict[int, set] = {}
    for u, v in sorted(edges):
        a, b = comp.get(u), comp.get(v)
        if a is None and b is None:
            a = {u, v}
        elif a is None or b is None or a is b:
            a = a if a is not None else b
            a.update((u, v))
        else:
            a |= b
        for x in a:
            comp[x] = a
    groups = {id(c): c for c in comp.values()}
    return [frozenset(e for e in edges if e[0] in c) for c in groups.values()]


def _containment(n: int, X: list[frozenset], Y: list[frozenset]) -> AdversaryInstance:
    # x < y exactly when x is y minus one of y's components (the families
    # are disjoint unions of identical blocks)
    index = {x: i for i, x in enumerate(X)}
    pairs = []
    for j, y in enumerate(Y):
        for block in _components(y):
            i = index.get(y - block)
            if i is not None:
                pairs.append((i, j))
    pairs.sort()
    return AdversaryInstance(n, [Graph(n, x) for x in X], [Graph(n, y) for y in Y], pairs)


def _matching_family(n: int, small: int) -> AdversaryInstance:
    if small < 0 or 2 * (small + 1) > n:
        raise ValueError(f"{small + 1} disjoint edges do not fit on {n} vertices")
    _check_size(_count_matchings(n, small + 1), "the larger matching family")
    verts = tuple(range(n))
    X = sorted(_matchings(verts, small), key=sorted)
    Y = sorted(_matchings(verts, small + 1), key=sorted)
    return _containment(n, X, Y)


def build_matching_family_vc(n: int, k: int) -> AdversaryInstance:
    """k-edge matchings (cover of size k exists) against (k+1)-edge ones."""
    return _matching_family(n, k)


def build_matching_family_km(n: int, k: int) -> AdversaryInstance:
    """(k-1)-edge matchings (no k-matching) against k-edge ones."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return _matching_family(n, k - 1)


def build_clique_family(n: int, k: int, t: int) -> AdversaryInstance:
    """c disjoint t-cliques against c+1 of them, with c = floor(k / (t-1))."""
    if t < 2:
        raise ValueError("cliques need t >= 2")
    c = k // (t - 1)
    if (c + 1) * t > n:
        raise ValueError(f"{c + 1} disjoint {t}-cliques do not fit on {n} vertices")
    count = math.comb(n, (c + 1) * t) * math.factorial((c + 1) * t) // (
        math.factorial(t) ** (c + 1) * math.factorial(c + 1))
    _check_size(count, "the clique family")
    verts = tuple(range(n))
    X = sorted(_clique_unions(verts, c, t), key=sorted)
    Y = sorted(_clique_unions(verts, c + 1, t), key=sorted)
    return _containment(n, X, Y)


def cycle_split_lengths(k: int) -> list[tuple[int, int]]:
    """Allowed (|C1|, |C2|): sum 2k, both at least k/2 and 3, |C1| odd."""
    out = []
    for a in range(3, 2 * k - 2):
        b = 2 * k - a
        if a % 2 == 1 and a <= b and 2 * a >= k and 2 * b >= k and b >= 3:
            out.append((a, b))
    return out


def build_cycle_family(n: int, k: int) -> AdversaryInstance:
    """2k-cycles against two disjoint odd cycles, related by a 2-swap.

    Swapping edges (a, b), (c, d) of the long cycle for (a, c), (b, d)
    splits it in two. Every swap is tried; those landing in Y are kept.
    """
    L = 2 * k
    if k < 3 or L > n:
        raise ValueError(f"need 3 <= k and 2k <= n, got n={n}, k={k}")
    splits = cycle_split_lengths(k)
    x_count = _count_cycles(n, L)
    y_count = sum(_count_cycles(n, a) * _count_cycles(n - a, b) // (2 if a == b else 1)
                  for a, b in splits)
    _check_size(x_count + y_count, "the cycle family")

    X = []
    for subset in itertools.combinations(range(n), L):
        X.extend(_cycle_edges(c) for c in _cycles_on(subset))
    Y = []
    for a, b in splits:
        for s1 in itertools.combinations(range(n), a):
            rest = [v for v in range(n) if v not in s1]
            for s2 in itertools.combinations(rest, b):
                if a == b and s2 < s1:
                    continue
                for c1 in _cycles_on(s1):
                    e1 = _cycle_edges(c1)
                    Y.extend(e1 | _cycle_edges(c2) for c2 in _cycles_on(s2))
    X.sort(key=sorted)
    Y.sort(key=sorted)
    y_index = {y: j for j, y in enumerate(Y)}

    pairs = set()
    for i, x in enumerate(X):
        for (a, b), (c, d) in itertools.combinations(sorted(x), 2):
            if len({a, b, c, d}) < 4:
                continue
            for p, q, r, s in ((a, b, c, d), (a, b, d, c), (b, a, c, d), (b, a, d, c)):
                # remove (p, q), (r, s); add (p, r), (q, s)
                new = (x - {(a, b), (c, d)}) | {canon(p, r), canon(q, s)}
                j = y_index.get(new)
                if j is not None and len(new) == L:
                    pairs.add((i, j))
    return AdversaryInstance(n, [Graph(n, x) for x in X], [Graph(n, y) for y in Y],
                             sorted(pairs))


FAMILIES = ("vc-matchings", "cliques", "km-matchings", "cycles")


def build_family(family: str, n: int, k: int, t: int | None = None) -> AdversaryInstance:
    if family == "vc-matchings":
        return build_matching_family_vc(n, k)
    if family == "km-matchings":
        return build_matching_family_km(n, k)
    if family == "cycles":
        return build_cycle_family(n, k)
    if family == "cliques":
        if t is None:
            raise ValueError("the clique family needs t")
        return build_clique_family(n, k, t)
    raise ValueError(f"unknown family {family!r}")


LOWERBOUND_COLUMNS = ("schema_version", "family", "n", "k", "t", "X", "Y", "m", "m_prime",
                      "l_max", "bound", "v")


def lowerbound_row(family: str, n: int, k: int, t: int | None = None) -> dict:
    a = build_family(family, n, k, t)
    q = adversary_quantities(a)
    return {
        "schema_version": 1, "family": family, "n": n, "k": k,
        "t": "" if t is None else t, "X": len(a.X), "Y": len(a.Y),
        "m": q.m, "m_prime": q.m_prime, "l_max": q.l_max,
        "bound": repr(q.bound), "v": str(q.v),
    }
