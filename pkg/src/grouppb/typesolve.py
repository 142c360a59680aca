"""Solver that enumerates utility allocations across project types.

Projects sharing exactly the same set of containing groups are
interchangeable with respect to the budget constraints; each such class is a
"type".  For every type a small knapsack table gives the cheapest sub-bundle
reaching any utility target, and a feasibility question for target u reduces
to trying the ways of splitting u across the types (compositions bounded by
each type's attainable utility), checking every budget on the per-type
cheapest choices.  The number of types is bounded by 2^g, so this is
practical when the group count is small.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Bundle,
    Instance,
    SolveOutcome,
    SolveStats,
    approval_scores,
    preference_key,
    require_no_utility_floors,
)
from .errors import SearchBudgetExceeded

DEFAULT_NODE_CAP = 10_000_000

_Entry = tuple[int, tuple[str, ...]]  # (cost, witness ids)


@dataclass(frozen=True)
class TypeEntry:
    groups: tuple[str, ...]  # sorted ids of the groups containing every member
    members: tuple[str, ...]


@dataclass(frozen=True)
class TypeIndex:
    types: tuple[TypeEntry, ...]


@dataclass(frozen=True)
class TypeTable:
    """entries[v]: cheapest sub-bundle of one type at utility v, or None.

    In "exact" mode v must be hit exactly; in "at-least" mode entries[v] is
    the cheapest sub-bundle of utility v or more (never None, and its cost is
    non-decreasing in v).
    """

    entries: tuple[_Entry | None, ...]


@dataclass(frozen=True)
class TypeTables:
    mode: str  # "at-least" | "exact"
    tables: tuple[TypeTable, ...]  # aligned with TypeIndex.types

    def cells(self) -> int:
        return sum(len(t.entries) for t in self.tables)


def type_index(inst: Instance) -> TypeIndex:
    """Group the projects by which groups contain them."""
    containing: dict[str, list[str]] = {p.id: [] for p in inst.projects}
    for f in sorted(inst.groups, key=lambda f: f.id):
        for pid in f.members:
            containing[pid].append(f.id)
    buckets: dict[tuple[str, ...], list[str]] = {}
    for pid, gids in containing.items():
        buckets.setdefault(tuple(gids), []).append(pid)
    types = tuple(
        TypeEntry(groups=key, members=tuple(sorted(buckets[key]))) for key in sorted(buckets)
    )
    return TypeIndex(types=types)


def type_min_cost_tables(
    inst: Instance, index: TypeIndex, u_cap: int | None = None, mode: str = "at-least"
) -> TypeTables:
    """Per-type cheapest-bundle tables over utility targets.

    Tables are exact-value knapsacks per type, optionally converted to
    at-least form by suffix minima (taken before any truncation to u_cap, so
    over-shooting bundles still count).  Witnesses follow the canonical
    tie-break.
    """
    if mode not in ("at-least", "exact"):
        raise ValueError(f"unknown mode {mode!r}")
    scores = approval_scores(inst)
    cost = {p.id: p.cost for p in inst.projects}

    tables = []
    for entry in index.types:
        reach: list[_Entry | None] = [(0, ())]
        for pid in entry.members:  # ascending ids keep witness tuples sorted
            s, c = scores[pid], cost[pid]
            grown: list[_Entry | None] = list(reach) + [None] * s
            for v, cur in enumerate(reach):
                if cur is None:
                    continue
                cand = (cur[0] + c, cur[1] + (pid,))
                old = grown[v + s]
                if old is None or (cand[0], cand[1]) < old:
                    grown[v + s] = cand
            reach = grown
        if mode == "at-least":
            best: _Entry | None = None
            for v in range(len(reach) - 1, -1, -1):
                cur = reach[v]
                if cur is not None and (best is None or (cur[0], cur[1]) < best):
                    best = cur
                reach[v] = best
        if u_cap is not None:
            reach = reach[: u_cap + 1]
        tables.append(TypeTable(entries=tuple(reach)))
    return TypeTables(mode=mode, tables=tuple(tables))


def _count_compositions(caps: list[int], u: int) -> int:
    ways = [1] + [0] * u
    for cap in caps:
        nxt = [0] * (u + 1)
        for total in range(u + 1):
            if ways[total]:
                for take in range(0, min(cap, u - total) + 1):
                    nxt[total + take] += ways[total]
        ways = nxt
    return ways[u]


def _enumerate_allocations(
    inst: Instance,
    index: TypeIndex,
    tables: TypeTables,
    u: int,
    node_cap: int,
    stats: SolveStats,
    collect_best: bool,
) -> Bundle | None:
    """DFS over utility allocations summing to u; returns a feasible bundle.

    With collect_best, scans every allocation and returns the canonical
    winner; otherwise the first feasible allocation wins.
    """
    scores = approval_scores(inst)
    types = index.types
    caps = [len(t.entries) - 1 for t in tables.tables]
    estimate = _count_compositions(caps, u)
    if estimate > node_cap:
        raise SearchBudgetExceeded(
            f"about {estimate} utility allocations exceed the node cap of {node_cap}"
        )

    budget_of = {f.id: f.budget for f in inst.groups}
    suffix = [0] * (len(types) + 1)
    for i in range(len(types) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + caps[i]

    group_spend = {gid: 0 for gid in budget_of}
    parts: list[tuple[str, ...]] = []
    best: Bundle | None = None

    def materialize(total_cost: int) -> Bundle:
        ids = tuple(sorted(pid for part in parts for pid in part))
        return Bundle(ids=ids, cost=total_cost, utility=sum(scores[pid] for pid in ids))

    def rec(i: int, u_rem: int, spent: int) -> Bundle | None:
        nonlocal best
        stats.nodes += 1
        if i == len(types):
            candidate = materialize(spent)
            if not collect_best:
                return candidate
            if best is None or preference_key(candidate) < preference_key(best):
                best = candidate
            return None
        lo = max(0, u_rem - suffix[i + 1])
        hi = min(caps[i], u_rem)
        table = tables.tables[i].entries
        touched = types[i].groups
        for take in range(lo, hi + 1):
            entry = table[take]
            assert entry is not None  # at-least tables have no gaps
            c, wit = entry
            if spent + c > inst.budget:
                break  # cost only grows with the target
            if any(group_spend[gid] + c > budget_of[gid] for gid in touched):
                break
            for gid in touched:
                group_spend[gid] += c
            parts.append(wit)
            hit = rec(i + 1, u_rem - take, spent + c)
            parts.pop()
            for gid in touched:
                group_spend[gid] -= c
            if hit is not None:
                return hit
        return None

    first = rec(0, u, 0)
    return best if collect_best else first


def solve_types_decision(
    inst: Instance,
    u: int,
    node_cap: int = DEFAULT_NODE_CAP,
    stats: SolveStats | None = None,
    _prepared: tuple[TypeIndex, TypeTables] | None = None,
) -> Bundle | None:
    """A feasible bundle with utility at least u, or None when none exists.

    Sound and complete: any feasible bundle's per-type utilities dominate
    some allocation summing to exactly u, and shrinking a type's target never
    raises the table cost, so the allocation scan cannot miss a witness.
    """
    require_no_utility_floors(inst)
    if stats is None:
        stats = SolveStats()
    if _prepared is None:
        index = type_index(inst)
        tables = type_min_cost_tables(inst, index, mode="at-least")
    else:
        index, tables = _prepared
    stats.cells = tables.cells()
    if u > sum(len(t.entries) - 1 for t in tables.tables):
        return None
    return _enumerate_allocations(inst, index, tables, u, node_cap, stats, collect_best=False)


def solve_types_max(inst: Instance, node_cap: int = DEFAULT_NODE_CAP) -> SolveOutcome:
    """Maximum utility by binary search over the decision solver.

    The final pass re-enumerates every allocation at the optimum and applies
    the canonical tie-break, so the witness matches the other exact solvers.
    """
    require_no_utility_floors(inst)
    index = type_index(inst)
    tables = type_min_cost_tables(inst, index, mode="at-least")
    stats = SolveStats(cells=tables.cells())
    prepared = (index, tables)

    lo, hi = 0, sum(len(t.entries) - 1 for t in tables.tables)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if solve_types_decision(inst, mid, node_cap, stats, _prepared=prepared) is not None:
            lo = mid
        else:
            hi = mid - 1

    best = _enumerate_allocations(inst, index, tables, lo, node_cap, stats, collect_best=True)
    assert best is not None and best.utility == lo
    return SolveOutcome(algorithm="types", utility=lo, bundle=best, exact=True, stats=stats)
