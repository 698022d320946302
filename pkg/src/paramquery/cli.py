"""Command-line harness: solve one instance, sweep families, tabulate lower bounds.

Exit status for ``solve``: 0 when the answer is yes, 1 when no, 2 on a usage
or input error. Every command is a deterministic function of its flags and
seed; the default seed comes from ``PARAMQUERY_SEED`` (0 when unset).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import os
import random
import sys
from pathlib import Path

from .graph import (
    Graph, brute_max_matching, brute_min_vertex_cover, check_matching_properties,
    gen_disjoint_cliques, gen_disjoint_edges, gen_random_graph, is_vertex_cover,
    matched_vertices, parse_graph,
)
from .kmatching import KMatchingTrace, quantum_maximum_matching, run_k_matching
from .lower_bounds import FAMILIES, LOWERBOUND_COLUMNS, lowerbound_row
from .oracle import ListOracle, MatrixOracle
from .vertex_cover import (
    NO_INSTANCE, kernel_conditions, kernel_violations, kernelize, list_model_kernelize,
    solve_kernel,
)

SEED_ENV = "PARAMQUERY_SEED"
SCHEMA_VERSION = 1
SWEEP_COLUMNS = (
    "schema_version", "problem", "family", "model", "n", "k", "trial", "seed", "m",
    "decision", "truth", "agrees", "grover_iterations", "classical", "modeled",
    "failure_events",
)


class UsageError(Exception):
    """Bad flags or unreadable input; reported with exit status 2."""


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV, "0")
    try:
        return int(raw)
    except ValueError as exc:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from exc


def derive_seed(master: int, *parts) -> int:
    """64-bit stream seed: blake2b of ``master`` and ``parts`` joined by ':'."""
    text = ":".join(str(p) for p in (master, *parts))
    return int.from_bytes(hashlib.blake2b(text.encode(), digest_size=8).digest(), "big")


def parse_range(text: str) -> list[int]:
    """``a:b:step`` (inclusive), ``a:b`` (step 1), ``a,b,c`` or a single integer."""
    try:
        if ":" in text:
            bits = [int(x) for x in text.split(":")]
            if len(bits) not in (2, 3):
                raise ValueError
            start, stop = bits[0], bits[1]
            step = bits[2] if len(bits) == 3 else 1
            if step <= 0 or stop < start:
                raise ValueError
            return list(range(start, stop + 1, step))
        return [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad range {text!r}") from exc


def read_graph(path: str) -> Graph:
    try:
        return parse_graph(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


# -- single runs -----------------------------------------------------------------------


def run_problem(problem: str, g: Graph, k: int | None, rng, model: str = "matrix"):
    """Run one algorithm; returns (decision, witness, ledger, failure events)."""
    events: list[str] = []
    if problem == "vc":
        if k is None or k < 0:
            raise UsageError("vc needs --k >= 0")
        if model == "list":
            oracle = ListOracle(g)
            kernel = list_model_kernelize(oracle, k)
        else:
            oracle = MatrixOracle(g)
            kernel = kernelize(oracle, k, rng)
        if kernel is not None:
            events += [f"kernel:{p}" for p in kernel_violations(kernel, k)]
            names = ("alg1-not-maximal", "prop-i", "prop-ii")
            events += [name for name, ok in zip(names, kernel_conditions(g, kernel, k)) if not ok]
        witness = solve_kernel(kernel)
        if witness is not None and not (len(witness) <= k and is_vertex_cover(g, witness)):
            events.append("bad-witness")
        return witness is not None, witness, oracle.ledger, events
    if model != "matrix":
        raise UsageError(f"{problem} runs in the matrix model only")
    oracle = MatrixOracle(g)
    trace = KMatchingTrace()
    if problem == "matching":
        if k is None or k < 0:
            raise UsageError("matching needs --k >= 0")
        found, M = run_k_matching(oracle, k, rng, trace)
        witness = M if found else None
    elif problem == "maxmatching":
        M = quantum_maximum_matching(oracle, rng, trace=trace)
        found, witness = True, M
    else:
        raise UsageError(f"unknown problem {problem!r}")
    if witness is not None:
        ok, _ = check_matching_properties(g, witness)
        if not ok or (problem == "matching" and len(witness) < k):
            events.append("bad-witness")
    if not all(trace.maximal_at_heads):
        events.append("alg1-not-maximal")
    if trace.search_errors:
        events.append("search-error")
    if not all(trace.types_ok_at_heads):
        events.append("type-state")
    if trace.bad_augmentations:
        events.append("bad-augmentation")
    return found, witness, oracle.ledger, events


def ground_truth(problem: str, g: Graph, k: int | None):
    if problem == "vc":
        return brute_min_vertex_cover(g)[0] <= k
    size = brute_max_matching(g)[0]
    return size >= k if problem == "matching" else size


def make_graph(family: str, n: int, k: int, seed: int, args) -> Graph:
    if family == "random":
        m = args.edges if args.edges is not None else 2 * k + 2
        return gen_random_graph(n, min(m, n * (n - 1) // 2), seed)
    if family == "disjoint-edges":
        blocks = args.blocks if args.blocks is not None else k + 1
        return gen_disjoint_edges(n, blocks, seed)
    if family == "cliques":
        blocks = args.blocks if args.blocks is not None else 1
        return gen_disjoint_cliques(n, blocks, args.clique_size, seed)
    raise UsageError(f"unknown family {family!r}")


def sweep_row(args, n: int, k: int, trial: int) -> dict:
    seed = derive_seed(args.seed, args.problem, args.family, n, k, trial)
    g = make_graph(args.family, n, k, derive_seed(seed, "graph"), args)
    rng = random.Random(derive_seed(seed, "run"))
    decision, witness, ledger, events = run_problem(args.problem, g, k, rng, args.model)
    if args.problem == "maxmatching":
        decision = len(witness)
    truth = agrees = ""
    if n <= args.truth_limit:
        truth = ground_truth(args.problem, g, k)
        agrees = int(truth == decision)
        truth = int(truth)
    totals = ledger.totals()
    return {
        "schema_version": SCHEMA_VERSION, "problem": args.problem, "family": args.family,
        "model": args.model, "n": n, "k": k, "trial": trial, "seed": seed, "m": g.m,
        "decision": int(decision), "truth": truth, "agrees": agrees,
        "grover_iterations": totals["grover_iterations"], "classical": totals["classical"],
        "modeled": totals["modeled"], "failure_events": ";".join(events),
    }


# -- commands ------------------------------------------------------------------------


def cmd_solve(args) -> int:
    g = read_graph(args.graph)
    rng = random.Random(derive_seed(args.seed, "solve"))
    found, witness, ledger, events = run_problem(args.problem, g, args.k, rng, args.model)
    print("YES" if found else "NO")
    if witness is not None:
        if args.problem == "vc":
            print("witness:", " ".join(str(v) for v in sorted(witness)))
        else:
            print("witness:", " ".join(f"{u}-{v}" for u, v in sorted(witness)))
    if events:
        print("events:", ";".join(events))
    sys.stdout.write(ledger.to_csv())
    return 0 if found else 1


def cmd_sweep(args) -> int:
    ns, ks = parse_range(args.n), parse_range(args.k)
    if args.trials < 0:
        raise UsageError("--trials must be non-negative")
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for n in ns:
        for k in ks:
            for trial in range(args.trials):
                try:
                    writer.writerow(sweep_row(args, n, k, trial))
                except ValueError as exc:
                    raise UsageError(f"n={n}, k={k}: {exc}") from exc
    write_text(args.out, buf.getvalue())
    return 0


def cmd_lowerbound(args) -> int:
    try:
        row = lowerbound_row(args.family, args.n, args.k, args.t)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=LOWERBOUND_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerow(row)
    write_text(args.out, buf.getvalue())
    return 0


def cmd_kernel(args) -> int:
    g = read_graph(args.graph)
    if args.k < 0:
        raise UsageError("--k must be non-negative")
    oracle = MatrixOracle(g)
    kernel = kernelize(oracle, args.k, random.Random(derive_seed(args.seed, "kernel")))
    if kernel is None:
        write_text(args.out, NO_INSTANCE + "\n")
        print(f"{NO_INSTANCE}: the maximal matching has more than {args.k} edges",
              file=sys.stderr if args.out in (None, "-") else sys.stdout)
        return 0
    write_text(args.out, kernel.to_text())
    limit = 2 * args.k * args.k
    report = (f"|E(G')| = {kernel.g_prime.m} (2k^2 = {limit}, "
              f"{'ok' if kernel.g_prime.m <= limit else 'VIOLATED'}); "
              f"|U| = {len(kernel.U)}; k' = {kernel.k_prime}; "
              f"|V(M)| = {len(matched_vertices(kernel.source_matching))}")
    print(report, file=sys.stderr if args.out in (None, "-") else sys.stdout)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="paramquery", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def seed_flag(p):
        p.add_argument("--seed", type=int, default=None,
                       help=f"master seed (default ${SEED_ENV} or 0)")

    p = sub.add_parser("solve", help="run one algorithm on a graph file")
    p.add_argument("problem", choices=("vc", "matching", "maxmatching"))
    p.add_argument("graph", help="graph file: 'n m' then one 'u v' line per edge")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--model", choices=("matrix", "list"), default="matrix")
    seed_flag(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sweep", help="CSV of seeded trials over an instance family")
    p.add_argument("problem", choices=("vc", "matching", "maxmatching"))
    p.add_argument("--family", choices=("random", "disjoint-edges", "cliques"), required=True)
    p.add_argument("--n", required=True, help="vertex counts, e.g. 40:240:40")
    p.add_argument("--k", required=True, help="parameters, e.g. 4 or 1:3")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--model", choices=("matrix", "list"), default="matrix")
    p.add_argument("--edges", type=int, default=None,
                   help="edge count of the random family (default 2k+2)")
    p.add_argument("--blocks", type=int, default=None,
                   help="disjoint edges (default k+1) or cliques (default 1)")
    p.add_argument("--clique-size", type=int, default=3)
    p.add_argument("--truth-limit", type=int, default=64,
                   help="largest n compared against brute force")
    p.add_argument("--out", default=None, help="output CSV (default stdout)")
    seed_flag(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("lowerbound", help="adversary quantities of a hard family")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=int, default=None, help="clique size (cliques family)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_lowerbound)

    p = sub.add_parser("kernel", help="write the vertex-cover kernel of a graph")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", default=None)
    seed_flag(p)
    p.set_defaults(func=cmd_kernel)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = default_seed()
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
