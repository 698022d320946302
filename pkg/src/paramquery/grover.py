"""Exact simulation of Grover search restricted to its two-dimensional subspace.

A Grover run with ``j`` iterations over ``N`` items of which ``K`` are marked
measures a marked item with probability ``sin^2((2j+1)θ)``, ``sin^2 θ = K/N``,
and conditional on that the item is uniform over the marked set. Nothing
larger than a handful of floats is ever tracked.

The marked set of a :class:`SearchSpace` is read from the hidden graph for
this bookkeeping only. What an algorithm learns comes from verification
queries, each charged to the ledger.
"""

from __future__ import annotations

import functools
import math
import random
from typing import Any, Callable, Hashable, Sequence

from .oracle import QueryLedger

#: Growth factor of the iteration range between rounds of the Las-Vegas search.
LAMBDA = 6 / 5
#: Per-repetition cutoff of the emptiness test, as a multiple of sqrt(N).
EMPTINESS_CUTOFF = 24


class NonTerminatingSearch(RuntimeError):
    """Las-Vegas search over an empty marked set with no iteration cap."""


def success_probability(N: int, K: int, j: int) -> float:
    if N < 1:
        raise ValueError("search space must be non-empty")
    if not 0 <= K <= N:
        raise ValueError(f"K={K} outside 0..{N}")
    if j < 0:
        raise ValueError("iteration count must be non-negative")
    if K == 0:
        return 0.0
    if K == N:
        return 1.0
    theta = math.asin(math.sqrt(K / N))
    return math.sin((2 * j + 1) * theta) ** 2


class SearchSpace:
    """``size`` candidate items, the exactly-known ``marked`` ones, and a
    one-query membership ``test`` used to verify measurements.

    Failed measurements land on unmarked items; their verification is charged
    as one classical query without materializing the item.
    """

    __slots__ = ("size", "marked", "test", "ledger", "label", "check_label")

    def __init__(self, size: int, marked: Sequence[Hashable], test: Callable[[Any], int],
                 ledger: QueryLedger, label: str, check_label: str | None = None) -> None:
        if len(marked) > size:
            raise ValueError("more marked items than the space holds")
        self.size = size
        self.marked = marked
        self.test = test
        self.ledger = ledger
        self.label = label
        # verification queries of failed rounds go here; ``test`` charges its own
        self.check_label = label if check_label is None else check_label

    @classmethod
    def over_indices(cls, N: int, marked: Sequence[int], ledger: QueryLedger,
                     label: str = "search") -> SearchSpace:
        """A space over ``range(N)`` whose predicate is a charged set lookup."""
        marked = sorted(set(marked))
        if marked and not (0 <= marked[0] and marked[-1] < N):
            raise ValueError("marked index out of range")
        lookup = frozenset(marked)

        def test(i: int) -> int:
            ledger.charge(label, classical=1)
            return 1 if i in lookup else 0

        return cls(N, marked, test, ledger, label)


class GroverOutcome:
    """Result of one search: the verified item (or None) and what it cost."""

    __slots__ = ("found", "iterations_used", "_checks")

    def __init__(self, found: Any | None, iterations_used: int, checks) -> None:
        self.found = found
        self.iterations_used = iterations_used
        self._checks = checks

    @property
    def verification_queries(self) -> int:
        c = self._checks
        return c if isinstance(c, int) else c.value

    def __repr__(self) -> str:
        return (f"GroverOutcome(found={self.found!r}, iterations_used={self.iterations_used}, "
                f"verification_queries={self.verification_queries})")


class DeferredRounds:
    """Verification count of an exhausted search, drawn on first use.

    With no verification cost in the cap, an empty search always spends
    exactly ``cap`` iterations; only its number of rounds is random. That
    number comes from a private stream seeded at search time, so it is
    reproducible and costs nothing unless someone reads it.
    """

    __slots__ = ("N", "cap", "seed", "_value")

    def __init__(self, N: int, cap: int, seed: int) -> None:
        self.N, self.cap, self.seed = N, cap, seed
        self._value: int | None = None

    @property
    def value(self) -> int:
        if self._value is None:
            self._value = _exhaust(self.N, self.cap, 0, random.Random(self.seed))[1]
        return self._value


def _measure_marked(space: SearchSpace, rng) -> Any | None:
    marked = space.marked
    item = marked[int(rng.random() * len(marked))]
    return item if space.test(item) else None


def grover_run(space: SearchSpace, j: int, rng) -> GroverOutcome:
    """``j`` Grover iterations, one measurement, one verification query."""
    if j < 0:
        raise ValueError("iteration count must be non-negative")
    p = success_probability(space.size, len(space.marked), j)
    space.ledger.charge(space.label, grover=j)
    if space.marked and rng.random() < p:
        return GroverOutcome(_measure_marked(space, rng), j, 1)
    space.ledger.charge(space.check_label, classical=1)
    return GroverOutcome(None, j, 1)


class _FieldBlock:
    """``c`` i.i.d. ``w``-bit fields held as ``w`` bit planes of one integer each.

    Field ``i`` is bit ``i`` of every plane. Fields with value >= M are
    rejected, so the accepted fields, read in order, are i.i.d. uniform on
    ``{0..M-1}``. Prefix sums over the accepted fields cost a few big-integer
    operations instead of a loop over fields.
    """

    __slots__ = ("planes", "accept", "cost")

    def __init__(self, rng, M: int, c: int, cost: int) -> None:
        w = (M - 1).bit_length()
        self.planes = [rng.getrandbits(c) for _ in range(w)]
        self.cost = cost
        full = (1 << c) - 1
        if M == 1 << w:
            self.accept = full
            return
        lt, eq = 0, full
        for b in reversed(range(w)):
            p = self.planes[b]
            if M >> b & 1:
                lt |= eq & ~p
                eq &= p
            else:
                eq &= ~p
        self.accept = lt

    def prefix(self, t: int) -> tuple[int, int]:
        """(accepted fields, sum of their values) among the first ``t`` fields."""
        a = self.accept & ((1 << t) - 1)
        total = 0
        for b, p in enumerate(self.planes):
            total += (p & a).bit_count() << b
        return a.bit_count(), total

    def units(self, t: int) -> int:
        cnt, total = self.prefix(t)
        return total + self.cost * cnt

    def value(self, i: int) -> int:
        return sum((p >> i & 1) << b for b, p in enumerate(self.planes))


def _saturated(M: int, rem: int, check_cost: int, rng) -> tuple[int, int]:
    # i.i.d. rounds of U{0..M-1} iterations each, until ``rem`` units run out
    iters = rounds = 0
    w = (M - 1).bit_length()
    per_field = ((M - 1) / 2 + check_cost) * M / (1 << w)
    while True:
        c = int(rem / per_field * 1.05) + 64
        block = _FieldBlock(rng, M, c, check_cost)
        at_hi = block.units(c)
        if at_hi <= rem:  # rare: the whole block fits
            cnt, total = block.prefix(c)
            rem -= total + check_cost * cnt
            iters += total
            rounds += cnt
            continue
        # Find the last prefix that fits. Prefix sums grow almost linearly,
        # so interpolating between the bracket ends lands close; halving
        # steps keep the worst case logarithmic.
        lo, hi, at_lo = 0, c, 0
        bisect = False
        while hi - lo > 1:
            if bisect:
                mid = (lo + hi) // 2
            else:
                mid = lo + int((rem - at_lo) * (hi - lo) / (at_hi - at_lo))
                mid = min(max(mid, lo + 1), hi - 1)
            u = block.units(mid)
            width = hi - lo
            if u <= rem:
                lo, at_lo = mid, u
            else:
                hi, at_hi = mid, u
            bisect = not bisect and 2 * (hi - lo) > width
        cnt, total = block.prefix(lo)
        rem -= total + check_cost * cnt
        # field ``lo`` is accepted and is the round cut by the cap
        return iters + total + min(block.value(lo), rem), rounds + cnt


def _exhaust(N: int, cap: int, check_cost: int, rng) -> tuple[int, int]:
    """Schedule of a search with nothing marked, cut at ``cap``.

    Returns ``(iterations, completed_rounds)``. Every round fails, so only the
    drawn iteration counts matter; once the range saturates at sqrt(N) they
    are i.i.d. and are drawn in bulk.
    """
    sqrt_n = math.sqrt(N)
    m = 1.0
    used = iters = rounds = 0
    while used < cap and m < sqrt_n:
        j = int(rng.random() * math.ceil(m))
        if used + j + check_cost > cap:
            return iters + min(j, cap - used), rounds
        used += j + check_cost
        iters += j
        rounds += 1
        m = min(LAMBDA * m, sqrt_n)
    rem = cap - used
    if rem <= 0:
        return iters, rounds
    more_iters, more_rounds = _saturated(math.ceil(sqrt_n), rem, check_cost, rng)
    return iters + more_iters, rounds + more_rounds


def _charge(ledger: QueryLedger, label: str, check: str, iters: int, checks: int) -> None:
    if check == label:
        ledger.charge(label, grover=iters, classical=checks)
    else:
        ledger.charge(label, grover=iters)
        ledger.charge(check, classical=checks)


def grover_lasvegas(space: SearchSpace, rng, iteration_cap: int | None = None,
                    check_cost: int = 0) -> GroverOutcome:
    """Search without knowing K: rounds of ``j ~ U{0..ceil(m)-1}`` iterations,
    ``m`` growing by 6/5 per failed round up to sqrt(N).

    With ``iteration_cap`` the search stops once that many units are spent;
    a unit is one iteration, plus ``check_cost`` per verification query.
    A run that would overshoot the cap is cut mid-search. A one-item space is
    settled by its first verification.
    """
    N = space.size
    K = len(space.marked)
    ledger, label, check = space.ledger, space.label, space.check_label
    cap = math.inf if iteration_cap is None else iteration_cap
    if N == 0 or cap <= 0:
        return GroverOutcome(None, 0, 0)
    if N == 1:
        if K:
            return GroverOutcome(_measure_marked(space, rng), 0, 1)
        ledger.charge(check, classical=1)
        return GroverOutcome(None, 0, 1)
    if K == 0:
        if iteration_cap is None:
            raise NonTerminatingSearch("nothing is marked and no cap was given")
        if check_cost:
            iters, rounds = _exhaust(N, iteration_cap, check_cost, rng)
            _charge(ledger, label, check, iters, rounds)
            return GroverOutcome(None, iters, rounds)
        rounds = DeferredRounds(N, iteration_cap, rng.getrandbits(64))
        ledger.charge(label, grover=iteration_cap)
        ledger.defer_classical(check, rounds)
        return GroverOutcome(None, iteration_cap, rounds)

    ranges = _schedule(N)
    last = len(ranges) - 1
    probs = _success_table(N, K)
    rand = rng.random
    used = iters = rounds = 0
    while used < cap:
        j = int(rand() * ranges[rounds if rounds < last else last])
        if used + j + check_cost > cap:
            iters += min(j, cap - used)
            break
        used += j + check_cost
        iters += j
        rounds += 1
        if rand() < probs[j]:
            _charge(ledger, label, check, iters, rounds - 1)
            return GroverOutcome(_measure_marked(space, rng), iters, rounds)
    _charge(ledger, label, check, iters, rounds)
    return GroverOutcome(None, iters, rounds)


@functools.lru_cache(maxsize=1024)
def _schedule(N: int) -> tuple[int, ...]:
    """``ceil(m)`` for rounds 0, 1, ...; the last entry repeats forever."""
    sqrt_n = math.sqrt(N)
    out = []
    m = 1.0
    while m < sqrt_n:
        out.append(math.ceil(m))
        m = min(LAMBDA * m, sqrt_n)
    out.append(math.ceil(sqrt_n))
    return tuple(out)


@functools.lru_cache(maxsize=8192)
def _success_table(N: int, K: int) -> tuple[float, ...]:
    """Success probability for every iteration count the schedule can draw."""
    return tuple(success_probability(N, K, j) for j in range(math.ceil(math.sqrt(N))))


def emptiness_repetitions(epsilon: float) -> int:
    """Smallest r with 3^-r <= epsilon."""
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    r = math.ceil(math.log(1 / epsilon, 3) - 1e-9)
    return max(r, 1)


def grover_find_or_empty(space: SearchSpace, epsilon: float, rng) -> Any | None:
    """A marked item, or None; never a false positive.

    ``ceil(log3(1/epsilon))`` Las-Vegas searches, each cut at 24 sqrt(N)
    iterations. Each misses an existing item with probability at most 1/3
    by Markov's inequality on the 8 sqrt(N/K) expectation.
    """
    reps = emptiness_repetitions(epsilon)
    cap = int(EMPTINESS_CUTOFF * math.sqrt(space.size))
    for _ in range(reps):
        out = grover_lasvegas(space, rng, iteration_cap=cap)
        if out.found is not None:
            return out.found
    return None
