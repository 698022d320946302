"""Query oracles over a hidden graph, with per-label query accounting."""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass

from .graph import Graph

CLASSICAL = "classical"
GROVER = "grover_iterations"
MODELED = "modeled"
CATEGORIES = (CLASSICAL, GROVER, MODELED)


class BudgetExhausted(RuntimeError):
    """Raised when a charge would push a label past its configured budget."""


@dataclass
class _Budget:
    limit: int
    include_classical: bool


class QueryLedger:
    """Counts oracle queries by label and category.

    A label names an algorithm line (``alg1.grover``, ``alg5.classicalF``...).
    Each label carries three counters: classical queries, Grover iterations
    and modeled (not simulated) queries. Counters only ever grow.
    """

    def __init__(self) -> None:
        self._counts: dict[str, list[int]] = {}
        self._budgets: dict[str, _Budget] = {}
        self._deferred: dict[str, list] = {}

    def defer_classical(self, label: str, source) -> None:
        """Add ``source.value`` classical queries to ``label`` when first read.

        Used for counts that are exact but costly to draw and rarely looked at.
        """
        if label not in self._counts:
            self._counts[label] = [0, 0, 0]
        self._deferred.setdefault(label, []).append(source)

    def _settle(self) -> None:
        for label, sources in self._deferred.items():
            self._counts[label][0] += sum(src.value for src in sources)
        self._deferred.clear()

    def set_budget(self, label: str, limit: int, include_classical: bool = False) -> None:
        self._budgets[label] = _Budget(int(limit), include_classical)

    def charge(self, label: str, classical: int = 0, grover: int = 0, modeled: int = 0) -> None:
        if classical < 0 or grover < 0 or modeled < 0:
            raise ValueError("query counts are non-decreasing")
        row = self._counts.get(label)
        if row is None:
            row = self._counts[label] = [0, 0, 0]
        budget = self._budgets.get(label) if self._budgets else None
        if budget is not None:
            if budget.include_classical and self._deferred:
                self._settle()
            spent = row[1] + grover
            if budget.include_classical:
                spent += row[0] + classical
            if spent > budget.limit:
                raise BudgetExhausted(f"{label}: {spent} > budget {budget.limit}")
        row[0] += classical
        row[1] += grover
        row[2] += modeled

    def spent(self, label: str, include_classical: bool = False) -> int:
        if include_classical and self._deferred:
            self._settle()
        row = self._counts.get(label)
        if row is None:
            return 0
        return row[1] + (row[0] if include_classical else 0)

    def get(self, label: str, category: str) -> int:
        if self._deferred:
            self._settle()
        row = self._counts.get(label)
        return 0 if row is None else row[CATEGORIES.index(category)]

    @property
    def labels(self) -> list[str]:
        return sorted(self._counts)

    def totals(self) -> dict[str, int]:
        if self._deferred:
            self._settle()
        out = dict.fromkeys(CATEGORIES, 0)
        for row in self._counts.values():
            for cat, val in zip(CATEGORIES, row):
                out[cat] += val
        return out

    def snapshot(self) -> dict[str, dict[str, int]]:
        """Copy of all counters keyed by label, plus a ``total`` row."""
        self._settle()
        snap = {label: dict(zip(CATEGORIES, self._counts[label])) for label in self.labels}
        snap["total"] = self.totals()
        return snap

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["label", *CATEGORIES])
        for label, row in self.snapshot().items():
            writer.writerow([label, *(row[c] for c in CATEGORIES)])
        return buf.getvalue()


def ledger_snapshot(ledger: QueryLedger) -> dict[str, dict[str, int]]:
    return ledger.snapshot()


class MatrixOracle:
    """Adjacency-matrix access: ``query_pair(u, v)`` answers whether uv is an edge."""

    __slots__ = ("_graph", "_adj", "ledger")

    def __init__(self, graph: Graph, ledger: QueryLedger | None = None) -> None:
        self._graph = graph
        self._adj = graph.adj
        self.ledger = ledger if ledger is not None else QueryLedger()

    @property
    def n(self) -> int:
        return self._graph.n

    @property
    def simulation_view(self) -> Graph:
        """The hidden graph, for exact amplitude bookkeeping and post-hoc checks.

        Algorithms must not branch on it; every decision they make goes
        through a charged query.
        """
        return self._graph

    def fork(self, ledger: QueryLedger) -> MatrixOracle:
        """Same hidden graph, separate accounting."""
        return MatrixOracle(self._graph, ledger)

    def query_pair(self, u: int, v: int, label: str) -> int:
        n = self._graph.n
        if u == v or not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"invalid pair query ({u}, {v}) for n={n}")
        self.ledger.charge(label, classical=1)
        return 1 if v in self._adj[u] else 0


class ListOracle:
    """Adjacency-list access: ``query_list(v, i)`` is the i-th neighbor of v or None."""

    def __init__(self, graph: Graph, ledger: QueryLedger | None = None,
                 order_seed: int | None = None) -> None:
        self._graph = graph
        self.ledger = ledger if ledger is not None else QueryLedger()
        rows = []
        rng = random.Random(order_seed) if order_seed is not None else None
        for v in range(graph.n):
            row = sorted(graph.adj[v])
            if rng is not None:
                rng.shuffle(row)
            rows.append(tuple(row))
        self.neighbor_order: tuple[tuple[int, ...], ...] = tuple(rows)

    @property
    def n(self) -> int:
        return self._graph.n

    @property
    def simulation_view(self) -> Graph:
        return self._graph

    def fork(self, ledger: QueryLedger) -> ListOracle:
        """Same graph and neighbor order, separate accounting."""
        twin = ListOracle.__new__(ListOracle)
        twin._graph = self._graph
        twin.ledger = ledger
        twin.neighbor_order = self.neighbor_order
        return twin

    def query_list(self, v: int, i: int, label: str) -> int | None:
        n = self._graph.n
        if not 0 <= v < n:
            raise ValueError(f"vertex {v} out of range for n={n}")
        if not 1 <= i <= n - 1:
            raise ValueError(f"list position {i} outside 1..{n - 1}")
        self.ledger.charge(label, classical=1)
        row = self.neighbor_order[v]
        return row[i - 1] if i <= len(row) else None
