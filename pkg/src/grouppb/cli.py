"""Command line entry points.

Exit codes: 0 success, 2 invalid input or usage, 3 negative answer (an
infeasible bundle, or an unattainable decision target), 4 a resource cap was
hit.  All JSON output is canonical (sorted keys, two-space indent); the only
nondeterministic field is stats.wall_time_s.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from .approx import solve_fptas_g, solve_lp_round
from .core import (
    Bundle,
    Instance,
    check_bundle,
    derived_stats,
    normalize,
    preference_key,
)
from .dimsolve import DEFAULT_CELL_CAP, solve_dimdp, table_cells
from .distsolve import (
    DEFAULT_DEPTH_CAP,
    DEFAULT_NODE_CAP,
    min_group_deletion_set,
    min_project_deletion_set,
    solve_group_deletion,
    solve_project_deletion,
)
from .errors import (
    GroupPBError,
    SearchBudgetExceeded,
    TableTooLarge,
    TooLarge,
)
from .fileformat import parse_instance, serialize_instance
from .generators import (
    GenParams,
    gen_from_graph_is,
    gen_from_partition,
    gen_random,
    make_graph,
)
from .hiersolve import solve_hier
from .layers import (
    conflict_graph,
    exact_layerwidth,
    greedy_layers,
    is_hierarchical,
    ordered_hier_layers,
    two_layer_decomposition,
)
from .milp import build_milp, export_lp_format
from .oracle import solve_bruteforce
from .typesolve import solve_types_decision, solve_types_max, type_index
from . import __version__

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NEGATIVE = 3
EXIT_RESOURCE = 4

# Auto policy only commits to a deletion-based solve when the funded-subset
# enumeration is this small; beyond that the table solvers take over.
AUTO_ENUM_CAP = 1024

ALGOS = (
    "auto",
    "bruteforce",
    "hier",
    "group-del",
    "proj-del",
    "types",
    "dimdp",
    "lp-round",
    "fptas-g",
)

USAGE_ERRORS = (GroupPBError,)
RESOURCE_ERRORS = (TooLarge, TableTooLarge, SearchBudgetExceeded)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_text(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit_json(payload: dict, out: str | None) -> None:
    _write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", out)


def _note(message: str) -> None:
    print(f"note: {message}", file=sys.stderr)


def _bundle_json(bundle: Bundle) -> dict:
    return {"ids": list(bundle.ids), "cost": bundle.cost, "utility": bundle.utility}


def _outcome_json(outcome, threads: int, include_profile: bool) -> dict:
    payload = {
        "algorithm": outcome.algorithm,
        "bundle": _bundle_json(outcome.bundle),
        "exact": outcome.exact,
        "guarantee": None if outcome.guarantee is None else str(outcome.guarantee),
        "stats": {
            "nodes": outcome.stats.nodes,
            "cells": outcome.stats.cells,
            "wall_time_s": outcome.stats.wall_time_s,
        },
        "threads": threads,
        "utility": outcome.utility,
    }
    if include_profile:
        if outcome.profile is None:
            payload["profile"] = None
        else:
            payload["profile"] = [
                {"utility": z, "cost": e.cost, "ids": list(e.ids)}
                for z, e in enumerate(outcome.profile.entries)
                if e is not None
            ]
    return payload


def _threads(args) -> int:
    if args.threads is not None:
        value = args.threads
    else:
        value = int(os.environ.get("GROUPPB_THREADS", "1"))
    if value < 1:
        raise ValueError("thread count must be at least 1")
    return value


def _load_instance(path: str) -> Instance:
    return parse_instance(_read_text(path))


def _has_floors(inst: Instance) -> bool:
    return any(f.min_utility > 0 for f in inst.groups)


def _deletion_pool_size(inst: Instance, deleted_group_ids) -> int:
    by_id = inst.group_map()
    pool = set()
    for gid in deleted_group_ids:
        pool |= set(by_id[gid].members)
    return len(pool)


def _choose_auto(inst: Instance, args) -> tuple[str, dict]:
    """Deterministic algorithm selection; returns (algo, extra-info)."""
    if _has_floors(inst):
        return "bruteforce", {"reason": "utility floors present"}
    if is_hierarchical(inst.groups):
        return "hier", {"reason": "family is hierarchical"}

    options = []
    ganal = min_group_deletion_set(inst.groups, args.depth_cap)
    if ganal.deleted is not None:
        pool = _deletion_pool_size(inst, ganal.deleted)
        if 2**pool <= AUTO_ENUM_CAP:
            options.append((2**pool, 0, "group-del", ganal))
    panal = min_project_deletion_set(inst.groups, args.depth_cap)
    if panal.deleted is not None and 2 ** len(panal.deleted) <= AUTO_ENUM_CAP:
        options.append((2 ** len(panal.deleted), 1, "proj-del", panal))
    if options:
        options.sort(key=lambda o: (o[0], o[1]))
        _, _, algo, analysis = options[0]
        return algo, {"analysis": analysis, "reason": "small deletion distance"}

    if table_cells(inst) <= args.cell_cap:
        return "dimdp", {"reason": "spending table fits the cell cap"}
    return "types", {"reason": "fallback to type enumeration"}


def _run_solver(inst: Instance, algo: str, args, extra: dict):
    """Dispatch to one solver; returns (outcome, deletion-info or None)."""
    if algo == "bruteforce":
        return solve_bruteforce(inst).to_outcome(), None
    if algo == "hier":
        return solve_hier(inst), None
    if algo in ("group-del", "proj-del"):
        if args.delete is not None:
            deleted = tuple(args.delete.split(","))
            info = {"deleted": sorted(set(deleted)), "search_nodes": None}
        else:
            analysis = extra.get("analysis")
            if analysis is None:
                finder = (
                    min_group_deletion_set if algo == "group-del" else min_project_deletion_set
                )
                analysis = finder(inst.groups, args.depth_cap)
            if analysis.deleted is None:
                raise SearchBudgetExceeded(
                    f"no deletion set of size at most {analysis.depth_cap} exists"
                )
            deleted = analysis.deleted
            info = {"deleted": list(deleted), "search_nodes": analysis.nodes}
        info["kind"] = "group" if algo == "group-del" else "project"
        solver = solve_group_deletion if algo == "group-del" else solve_project_deletion
        return solver(inst, deleted, node_cap=args.node_cap), info
    if algo == "types":
        return solve_types_max(inst, node_cap=args.node_cap), None
    if algo == "dimdp":
        return solve_dimdp(inst, cell_cap=args.cell_cap), None
    if algo == "lp-round":
        return solve_lp_round(inst), None
    if algo == "fptas-g":
        return solve_fptas_g(inst, args.epsilon, node_cap=args.node_cap), None
    raise AssertionError(f"unhandled algorithm {algo}")


def _decision_bundle(inst: Instance, algo: str, target: int, args) -> Bundle | None:
    """A feasible bundle with utility at least target, or None."""
    if algo == "bruteforce":
        profile = solve_bruteforce(inst).profile
        candidates = [
            Bundle(ids=e.ids, cost=e.cost, utility=z)
            for z, e in enumerate(profile.entries)
            if e is not None and z >= target
        ]
        return min(candidates, key=preference_key) if candidates else None
    if algo == "hier":
        outcome = solve_hier(inst, u_cap=target)
        return outcome.bundle if outcome.utility >= target else None
    if algo == "types":
        return solve_types_decision(inst, target, node_cap=args.node_cap)
    raise AssertionError(f"unhandled decision algorithm {algo}")


def cmd_solve(args) -> int:
    threads = _threads(args)
    inst = _load_instance(args.instance)
    inst, notes = normalize(inst)
    for note in notes:
        _note(note)

    algo = args.algo
    extra: dict = {}
    if args.decision_u is not None:
        if algo == "auto":
            if _has_floors(inst):
                algo = "bruteforce"
            elif is_hierarchical(inst.groups):
                algo = "hier"
            else:
                algo = "types"
        if algo not in ("bruteforce", "hier", "types"):
            print(
                f"error: decision queries support only bruteforce, hier, or types, not {algo}",
                file=sys.stderr,
            )
            return EXIT_USAGE
        start = time.perf_counter()
        witness = _decision_bundle(inst, algo, args.decision_u, args)
        elapsed = time.perf_counter() - start
        payload = {
            "algorithm": algo,
            "decision": {
                "satisfiable": witness is not None,
                "target": args.decision_u,
            },
            "bundle": None if witness is None else _bundle_json(witness),
            "stats": {"wall_time_s": elapsed},
            "threads": threads,
        }
        _emit_json(payload, args.output)
        return EXIT_OK if witness is not None else EXIT_NEGATIVE

    if algo == "auto":
        algo, extra = _choose_auto(inst, args)
        if "reason" in extra:
            _note(f"auto selected {algo}: {extra['reason']}")
    if algo in ("lp-round", "fptas-g") and args.algo == "auto":
        _note("result is approximate, not exact")

    start = time.perf_counter()
    try:
        outcome, deletion_info = _run_solver(inst, algo, args, extra)
    except RESOURCE_ERRORS:
        if args.algo != "auto":
            raise
        # Last resorts for auto: exhaustive search when small, else rounding.
        if derived_stats(inst).m <= 24:
            _note("auto fell back to bruteforce")
            outcome, deletion_info = _run_solver(inst, "bruteforce", args, {})
        else:
            _note("auto fell back to lp-round; result is approximate, not exact")
            outcome, deletion_info = _run_solver(inst, "lp-round", args, {})
    outcome.stats.wall_time_s = time.perf_counter() - start

    payload = _outcome_json(outcome, threads, args.profile)
    if deletion_info is not None:
        payload["deletion"] = deletion_info
    _emit_json(payload, args.output)
    return EXIT_OK


def cmd_check(args) -> int:
    inst = _load_instance(args.instance)
    raw = json.loads(_read_text(args.bundle))
    if isinstance(raw, dict) and "ids" in raw:
        raw = raw["ids"]
    if not isinstance(raw, list) or not all(isinstance(x, str) for x in raw):
        print("error: bundle file must hold a JSON array of project ids", file=sys.stderr)
        return EXIT_USAGE
    report = check_bundle(inst, raw)
    payload = {
        "cost": report.cost,
        "feasible": report.feasible,
        "utility": report.utility,
        "violations": [
            {"kind": v.kind, "scope": v.scope, "limit": v.limit, "actual": v.actual}
            for v in report.violations
        ],
    }
    _emit_json(payload, args.output)
    return EXIT_OK if report.feasible else EXIT_NEGATIVE


def cmd_analyze(args) -> int:
    inst = _load_instance(args.instance)
    stats = derived_stats(inst)
    universe = frozenset(p.id for p in inst.projects)
    graph = conflict_graph(inst.groups)
    hier = is_hierarchical(inst.groups)
    notes: list[str] = []

    two = two_layer_decomposition(inst.groups)
    greedy = greedy_layers(inst.groups)
    exact_width = None
    if stats.g <= args.exact_width_cap:
        exact_width = exact_layerwidth(inst.groups)
    else:
        notes.append("exact layerwidth skipped: too many groups")

    ordered = None
    if hier:
        layers = ordered_hier_layers(inst.groups, universe)
        ordered = {
            "layers": [list(layer) for layer in layers.layers],
            "root_virtual": layers.root_virtual,
            "width": layers.width,
        }

    ganal = min_group_deletion_set(inst.groups, args.depth_cap)
    panal = min_project_deletion_set(inst.groups, args.depth_cap)

    payload = {
        "conflict_edges": len(graph.edges),
        "dim_table_cells": table_cells(inst),
        "exact_layerwidth": exact_width,
        "greedy_width": greedy.width,
        "group_deletion": {
            "deleted": None if ganal.deleted is None else list(ganal.deleted),
            "depth_cap": ganal.depth_cap,
            "search_budget_hit": ganal.search_budget_hit,
        },
        "hierarchical": hier,
        "notes": notes,
        "ordered_layers": ordered,
        "project_deletion": {
            "deleted": None if panal.deleted is None else list(panal.deleted),
            "depth_cap": panal.depth_cap,
            "search_budget_hit": panal.search_budget_hit,
        },
        "stats": {
            "g": stats.g,
            "m": stats.m,
            "n": stats.n,
            "total_score": stats.total_score,
        },
        "two_layer": None if two is None else [list(layer) for layer in two.layers],
        "type_count": len(type_index(inst).types),
    }
    _emit_json(payload, args.output)
    return EXIT_OK


def _parse_csv(text: str) -> list[str]:
    return [part for part in text.split(",") if part]


def cmd_gen(args) -> int:
    if args.kind == "random":
        try:
            params = GenParams(
                m=args.m,
                n=args.n,
                g=args.g,
                seed=args.seed,
                cost_lo=args.cost_lo,
                cost_hi=args.cost_hi,
                approvals_lo=args.approvals_lo,
                approvals_hi=args.approvals_hi,
                family_shape=args.shape,
                budget_fraction=Fraction(args.budget_fraction),
            )
        except (ValueError, ZeroDivisionError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        inst = gen_random(params)
    elif args.kind == "graph-is":
        edges = []
        for token in _parse_csv(args.edges):
            ends = token.split("-")
            if len(ends) != 2:
                print(f"error: bad edge {token!r}, expected 'u-v'", file=sys.stderr)
                return EXIT_USAGE
            edges.append((ends[0], ends[1]))
        graph = make_graph(_parse_csv(args.vertices), edges)
        inst = gen_from_graph_is(graph, args.k, variant=args.variant)
    else:
        values = []
        for token in _parse_csv(args.values):
            try:
                values.append(int(token))
            except ValueError:
                print(f"error: bad number {token!r}", file=sys.stderr)
                return EXIT_USAGE
        inst = gen_from_partition(values)
    _write_text(serialize_instance(inst), args.output)
    return EXIT_OK


def cmd_export_milp(args) -> int:
    inst = _load_instance(args.instance)
    model = build_milp(inst)
    _write_text(export_lp_format(model), args.output)
    return EXIT_OK


def cmd_bench(args) -> int:
    algos = _parse_csv(args.algos)
    for algo in algos:
        if algo not in ALGOS:
            print(f"error: unknown algorithm {algo!r}", file=sys.stderr)
            return EXIT_USAGE
    print(f"{'seed':>8} {'algo':>10} {'utility':>8} {'nodes':>10} {'cells':>10} {'seconds':>9}")
    for offset in range(args.count):
        seed = args.seed + offset
        inst = gen_random(
            GenParams(m=args.m, n=args.n, g=args.g, seed=seed, family_shape=args.shape)
        )
        inst, _ = normalize(inst)
        for algo in algos:
            start = time.perf_counter()
            try:
                resolved, extra = (algo, {})
                if algo == "auto":
                    resolved, extra = _choose_auto(inst, args)
                outcome, _info = _run_solver(inst, resolved, args, extra)
            except USAGE_ERRORS as exc:
                print(f"{seed:>8} {algo:>10} skipped: {exc}")
                continue
            elapsed = time.perf_counter() - start
            print(
                f"{seed:>8} {algo:>10} {outcome.utility:>8} "
                f"{outcome.stats.nodes:>10} {outcome.stats.cells:>10} {elapsed:>9.4f}"
            )
    return EXIT_OK


def _add_cap_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--node-cap", type=int, default=DEFAULT_NODE_CAP)
    parser.add_argument("--cell-cap", type=int, default=DEFAULT_CELL_CAP)
    parser.add_argument("--depth-cap", type=int, default=DEFAULT_DEPTH_CAP)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grouppb",
        description="Solvers for approval budgeting with overlapping group budgets.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="maximize utility on an instance file")
    p_solve.add_argument("instance", help="instance JSON file, or - for stdin")
    p_solve.add_argument("--algo", choices=ALGOS, default="auto")
    p_solve.add_argument(
        "--epsilon",
        type=Fraction,
        default=Fraction(1, 2),
        help="accuracy for fptas-g, e.g. 1/2 or 0.25",
    )
    p_solve.add_argument(
        "--decision-u", type=int, default=None, help="ask for utility at least this"
    )
    p_solve.add_argument(
        "--delete",
        default=None,
        help="comma separated ids to delete for group-del or proj-del",
    )
    p_solve.add_argument("--profile", action="store_true", help="include the cost profile")
    p_solve.add_argument("--threads", type=int, default=None)
    p_solve.add_argument("--format", choices=("json",), default="json")
    p_solve.add_argument("-o", "--output", default=None)
    _add_cap_options(p_solve)
    p_solve.set_defaults(func=cmd_solve)

    p_check = sub.add_parser("check", help="test a bundle against all budgets")
    p_check.add_argument("instance")
    p_check.add_argument("bundle", help="JSON array of project ids, or - for stdin")
    p_check.add_argument("-o", "--output", default=None)
    p_check.set_defaults(func=cmd_check)

    p_analyze = sub.add_parser("analyze", help="report structure of the group family")
    p_analyze.add_argument("instance")
    p_analyze.add_argument("--exact-width-cap", type=int, default=12)
    p_analyze.add_argument("--depth-cap", type=int, default=DEFAULT_DEPTH_CAP)
    p_analyze.add_argument("-o", "--output", default=None)
    p_analyze.set_defaults(func=cmd_analyze)

    p_gen = sub.add_parser("gen", help="generate an instance file")
    p_gen.add_argument("--kind", choices=("random", "graph-is", "partition"), default="random")
    p_gen.add_argument("--m", type=int, default=10)
    p_gen.add_argument("--n", type=int, default=5)
    p_gen.add_argument("--g", type=int, default=3)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument(
        "--shape", choices=("random-subsets", "laminar", "partition"), default="random-subsets"
    )
    p_gen.add_argument("--cost-lo", type=int, default=1)
    p_gen.add_argument("--cost-hi", type=int, default=5)
    p_gen.add_argument("--approvals-lo", type=int, default=1)
    p_gen.add_argument("--approvals-hi", type=int, default=3)
    p_gen.add_argument("--budget-fraction", default="1/2")
    p_gen.add_argument("--vertices", default="", help="graph-is: comma separated names")
    p_gen.add_argument("--edges", default="", help="graph-is: comma separated u-v pairs")
    p_gen.add_argument("--k", type=int, default=1, help="graph-is: target set size")
    p_gen.add_argument(
        "--variant", choices=("single-voter", "per-edge-voters"), default="single-voter"
    )
    p_gen.add_argument("--values", default="", help="partition: comma separated numbers")
    p_gen.add_argument("-o", "--output", default=None)
    p_gen.set_defaults(func=cmd_gen)

    p_milp = sub.add_parser("export-milp", help="write the integer program in LP format")
    p_milp.add_argument("instance")
    p_milp.add_argument("-o", "--output", default=None)
    p_milp.set_defaults(func=cmd_export_milp)

    p_bench = sub.add_parser("bench", help="time solvers on generated instances")
    p_bench.add_argument("--count", type=int, default=5)
    p_bench.add_argument("--m", type=int, default=10)
    p_bench.add_argument("--n", type=int, default=5)
    p_bench.add_argument("--g", type=int, default=3)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument(
        "--shape", choices=("random-subsets", "laminar", "partition"), default="random-subsets"
    )
    p_bench.add_argument("--algos", default="auto", help="comma separated algorithm names")
    p_bench.add_argument("--epsilon", type=Fraction, default=Fraction(1, 2))
    p_bench.add_argument("--delete", default=None)
    _add_cap_options(p_bench)
    p_bench.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except RESOURCE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
