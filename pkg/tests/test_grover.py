from __future__ import annotations

import math
import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paramquery.grover import (
    EMPTINESS_CUTOFF, LAMBDA, DeferredRounds, NonTerminatingSearch, SearchSpace, _exhaust,
    emptiness_repetitions, grover_find_or_empty, grover_lasvegas, grover_run,
    success_probability,
)
from paramquery.oracle import QueryLedger


def space(N, marked, label="s"):
    led = QueryLedger()
    return SearchSpace.over_indices(N, marked, led, label), led


def _amplitudes(N, K, j):
    # independent check: iterate the Grover operator on (marked, unmarked) amplitudes
    a = b = 1 / math.sqrt(N)
    for _ in range(j):
        # oracle flips marked; diffusion reflects about the uniform state
        a = -a
        mean = (K * a + (N - K) * b) / N
        a, b = 2 * mean - a, 2 * mean - b
    return K * a * a


@pytest.mark.parametrize("N,K,j", [(4, 1, 1), (16, 3, 2), (100, 1, 7), (64, 5, 0), (9, 9, 3)])
def test_success_probability_matches_operator_iteration(N, K, j):
    assert success_probability(N, K, j) == pytest.approx(_amplitudes(N, K, j), abs=1e-12)


def test_success_probability_examples():
    assert success_probability(4, 1, 1) == pytest.approx(1.0)
    assert success_probability(7, 7, 0) == 1.0
    assert success_probability(2, 1, 0) == pytest.approx(0.5)
    assert success_probability(5, 0, 3) == 0.0
    with pytest.raises(ValueError):
        success_probability(3, 4, 0)


def test_grover_run_accounting():
    s, led = space(10, [])
    out = grover_run(s, 5, random.Random(0))
    assert out.found is None and out.iterations_used == 5 and out.verification_queries == 1
    assert led.get("s", "grover_iterations") == 5 and led.get("s", "classical") == 1
    s, led = space(6, range(6))
    out = grover_run(s, 0, random.Random(0))
    assert out.found is not None and out.iterations_used == 0 and out.verification_queries == 1


def test_grover_run_forced_case():
    rng = random.Random(1)
    for _ in range(200):
        s, _ = space(4, [2])
        assert grover_run(s, 1, rng).found == 2


def test_grover_run_frequency_and_uniformity():
    rng = random.Random(5)
    N, K, j, trials = 50, 3, 2, 10_000
    p = success_probability(N, K, j)
    hits = Counter()
    for _ in range(trials):
        s, _ = space(N, [4, 9, 30])
        out = grover_run(s, j, rng)
        if out.found is not None:
            hits[out.found] += 1
    total = sum(hits.values())
    assert abs(total - trials * p) <= 3 * math.sqrt(trials * p * (1 - p))
    # chi-square with 2 degrees of freedom; 13.8 is the 0.1% tail
    chi2 = sum((hits[x] - total / 3) ** 2 / (total / 3) for x in (4, 9, 30))
    assert chi2 < 13.8


def test_lasvegas_empty_with_cap():
    s, led = space(100, [])
    out = grover_lasvegas(s, random.Random(0), iteration_cap=50)
    assert out.found is None and out.iterations_used == 50
    assert led.get("s", "grover_iterations") == 50
    assert led.get("s", "classical") == out.verification_queries >= 1


def test_lasvegas_empty_without_cap_raises():
    s, _ = space(10, [])
    with pytest.raises(NonTerminatingSearch):
        grover_lasvegas(s, random.Random(0))


def test_lasvegas_all_marked_first_round():
    s, led = space(30, range(30))
    out = grover_lasvegas(s, random.Random(0))
    assert out.found is not None and out.iterations_used == 0
    assert led.get("s", "classical") == 1


def test_lasvegas_mean_within_bound():
    rng = random.Random(2)
    vals = []
    for _ in range(10_000):
        s, _ = space(1024, range(16))
        vals.append(grover_lasvegas(s, rng).iterations_used)
    mean = sum(vals) / len(vals)
    sd = math.sqrt(sum((v - mean) ** 2 for v in vals) / (len(vals) - 1))
    assert mean <= 8 * math.sqrt(1024 / 16) + 3 * sd / math.sqrt(len(vals))


def test_lasvegas_ledger_delta_equals_iterations():
    rng = random.Random(3)
    s, led = space(500, [1, 2, 3])
    total = 0
    for _ in range(100):
        total += grover_lasvegas(s, rng, iteration_cap=40).iterations_used
    assert led.get("s", "grover_iterations") == total


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 400), st.integers(0, 5), st.integers(0, 300), st.integers(0, 2),
       st.integers(0, 2**32))
def test_lasvegas_cap_and_soundness(N, K, cap, check_cost, seed):
    K = min(K, N)
    marked = list(range(0, N, max(1, N // max(K, 1))))[:K]
    s, led = space(N, marked)
    out = grover_lasvegas(s, random.Random(seed), iteration_cap=cap, check_cost=check_cost)
    assert out.iterations_used + check_cost * out.verification_queries <= max(cap, 0) or N == 1
    assert out.found is None or out.found in marked
    assert led.get("s", "grover_iterations") == out.iterations_used


def _naive_exhaust(N, cap, check_cost, rng):
    # the plain round loop on an empty space
    used = iters = rounds = 0
    m = 1.0
    while used < cap:
        j = rng.randrange(math.ceil(m))
        if used + j + check_cost > cap:
            iters += min(j, cap - used)
            break
        used += j + check_cost
        iters += j
        rounds += 1
        m = min(LAMBDA * m, math.sqrt(N))
    return iters, rounds


@pytest.mark.parametrize("N,cap,check_cost", [(50, 300, 0), (400, 2000, 0), (30, 500, 1),
                                              (1000, 4000, 1)])
def test_exhaust_matches_naive_loop_in_distribution(N, cap, check_cost):
    fast = [_exhaust(N, cap, check_cost, random.Random(s)) for s in range(3000)]
    slow = [_naive_exhaust(N, cap, check_cost, random.Random(10**6 + s)) for s in range(3000)]
    for idx in (0, 1):
        a = [x[idx] for x in fast]
        b = [x[idx] for x in slow]
        ma, mb = sum(a) / len(a), sum(b) / len(b)
        va = sum((x - ma) ** 2 for x in a) / len(a)
        vb = sum((x - mb) ** 2 for x in b) / len(b)
        se = math.sqrt((va + vb) / len(a)) or 1e-9
        assert abs(ma - mb) <= 4 * se + 1e-9
    if check_cost == 0:
        assert all(it == cap for it, _ in fast)


def test_deferred_rounds_reproducible():
    a = DeferredRounds(200, 1000, seed=99)
    b = DeferredRounds(200, 1000, seed=99)
    assert a.value == b.value == a.value > 0


def test_emptiness_repetitions():
    assert emptiness_repetitions(1 / 3) == 1
    assert emptiness_repetitions(0.1) == 3
    assert emptiness_repetitions(1 / 9) == 2
    assert emptiness_repetitions(1 / 48) == 4
    with pytest.raises(ValueError):
        emptiness_repetitions(1.0)


def test_find_or_empty_examples():
    rng = random.Random(4)
    for _ in range(100):
        s, led = space(300, [])
        assert grover_find_or_empty(s, 0.1, rng) is None
        reps = emptiness_repetitions(0.1)
        assert led.get("s", "grover_iterations") <= EMPTINESS_CUTOFF * math.sqrt(300) * reps
    s, _ = space(12, range(12))
    assert grover_find_or_empty(s, 0.1, rng) is not None


def test_find_or_empty_miss_rate():
    rng = random.Random(6)
    trials = 10_000
    misses = sum(grover_find_or_empty(space(256, [17])[0], 1 / 3, rng) is None
                 for _ in range(trials))
    p = 1 / 3
    assert misses / trials <= p + 3 * math.sqrt(p * (1 - p) / trials)
