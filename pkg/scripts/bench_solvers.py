"""Timing sweep across solvers and instance sizes.

Generates seeded instances, runs every applicable solver on each, and prints
one summary row per (size, algorithm) with run counts, wall-clock times, and
search effort.  Pass --csv to also capture the raw per-run rows for plotting.

Example:
    python3 scripts/bench_solvers.py --sizes 8,10,12 --per-size 20 --csv runs.csv
"""

from __future__ import annotations

import argparse
import csv
import statistics
import sys
import time

from grouppb import (
    GenParams,
    GroupPBError,
    gen_random,
    is_hierarchical,
    normalize,
    solve_bruteforce,
    solve_dimdp,
    solve_fptas_g,
    solve_hier,
    solve_lp_round,
    solve_types_max,
    table_cells,
)

BRUTEFORCE_LIMIT = 20  # 2^m subsets; keep the oracle column honest but quick


def applicable_algorithms(inst, cell_cap):
    """Name -> zero-argument runner, for the solvers this instance admits."""
    algos = {
        "types": lambda: solve_types_max(inst),
        "lp-round": lambda: solve_lp_round(inst),
        "fptas-g-0.5": lambda: solve_fptas_g(inst, epsilon=0.5),
    }
    if len(inst.projects) <= BRUTEFORCE_LIMIT:
        algos["bruteforce"] = lambda: solve_bruteforce(inst).to_outcome()
    if is_hierarchical(inst.groups):
        algos["hier"] = lambda: solve_hier(inst)
    if table_cells(inst) <= cell_cap:
        algos["dimdp"] = lambda: solve_dimdp(inst, cell_cap=cell_cap)
    return algos


def run_sweep(sizes, per_size, shape, groups, voters, seed0, cell_cap, writer):
    summary_rows = []
    for m in sizes:
        by_algo: dict[str, list[tuple[float, int, int]]] = {}
        skipped: dict[str, int] = {}
        for i in range(per_size):
            params = GenParams(m=m, n=voters, g=groups, seed=seed0 + 1000 * m + i, family_shape=shape)
            inst, _ = normalize(gen_random(params))
            algos = applicable_algorithms(inst, cell_cap)
            for name in ("bruteforce", "hier", "types", "dimdp", "lp-round", "fptas-g-0.5"):
                runner = algos.get(name)
                if runner is None:
                    skipped[name] = skipped.get(name, 0) + 1
                    continue
                start = time.perf_counter()
                try:
                    out = runner()
                except GroupPBError as exc:
                    print(f"  m={m} seed={params.seed} {name}: gave up ({exc})", file=sys.stderr)
                    skipped[name] = skipped.get(name, 0) + 1
                    continue
                elapsed = time.perf_counter() - start
                by_algo.setdefault(name, []).append((elapsed, out.stats.nodes, out.stats.cells))
                if writer:
                    writer.writerow(
                        [name, m, groups, shape, params.seed, f"{elapsed:.6f}", out.utility, out.stats.nodes, out.stats.cells]
                    )
        for name, runs in sorted(by_algo.items()):
            times = [t for t, _, _ in runs]
            summary_rows.append(
                (
                    name,
                    m,
                    len(runs),
                    skipped.get(name, 0),
                    statistics.mean(times),
                    max(times),
                    statistics.mean(n for _, n, _ in runs),
                    statistics.mean(c for _, _, c in runs),
                )
            )
    return summary_rows


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="8,10,12", help="comma-separated project counts")
    parser.add_argument("--per-size", type=int, default=20, help="instances per size")
    parser.add_argument("--groups", type=int, default=4)
    parser.add_argument("--voters", type=int, default=3)
    parser.add_argument("--shape", default="random-subsets", choices=["random-subsets", "laminar", "partition"])
    parser.add_argument("--seed0", type=int, default=0)
    parser.add_argument("--cell-cap", type=int, default=2_000_000, help="dimdp table-size gate")
    parser.add_argument("--csv", help="also write raw per-run rows to this file")
    args = parser.parse_args(argv)

    sizes = [int(s) for s in args.sizes.split(",") if s]
    csv_file = open(args.csv, "w", newline="") if args.csv else None
    writer = None
    if csv_file:
        writer = csv.writer(csv_file)
        writer.writerow(["algorithm", "m", "g", "shape", "seed", "seconds", "utility", "nodes", "cells"])

    rows = run_sweep(sizes, args.per_size, args.shape, args.groups, args.voters, args.seed0, args.cell_cap, writer)
    if csv_file:
        csv_file.close()

    header = f"{'algorithm':<14}{'m':>4}{'runs':>6}{'skip':>6}{'mean ms':>10}{'max ms':>10}{'nodes':>12}{'cells':>12}"
    print(header)
    print("-" * len(header))
    for name, m, runs, skip, mean_t, max_t, nodes, cells in rows:
        print(
            f"{name:<14}{m:>4}{runs:>6}{skip:>6}{mean_t * 1000:>10.2f}{max_t * 1000:>10.2f}{nodes:>12.0f}{cells:>12.0f}"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
