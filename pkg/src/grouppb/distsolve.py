"""Solvers parameterized by distance-to-hierarchical.

A family that is not hierarchical can be repaired by deleting whole groups or
individual projects.  The minimum number of deletions is found by iterative
deepening over a branching search: any conflicting pair forces one of two
group deletions, or one of three project-piece deletions (the intersection or
either difference must go entirely).  The combined solvers then enumerate
every way to fund the deleted portion, charge its costs against all budgets,
and solve the hierarchical remainder exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Bundle,
    Group,
    Instance,
    SolveOutcome,
    SolveStats,
    Voter,
    approval_scores,
    preference_key,
    require_no_utility_floors,
)
from .errors import InvalidDeletion, SearchBudgetExceeded
from .hiersolve import solve_hier

DEFAULT_DEPTH_CAP = 8
DEFAULT_NODE_CAP = 10_000_000


@dataclass(frozen=True)
class DeletionAnalysis:
    """Outcome of a minimum-deletion search.

    deleted is None when no deletion set within depth_cap exists; then
    search_budget_hit is True.  Otherwise deleted is the minimum-size set,
    lexicographically smallest among those of minimum size.
    """

    deleted: tuple[str, ...] | None
    depth_cap: int
    nodes: int
    search_budget_hit: bool


def _first_conflict(member_sets: dict[str, frozenset[str]]) -> tuple[str, str] | None:
    """Lexicographically first conflicting pair of group ids, if any.

    Groups whose current member sets coincide are treated as one set and do
    not conflict.
    """
    ids = sorted(member_sets)
    for i, x in enumerate(ids):
        a = member_sets[x]
        for y in ids[i + 1 :]:
            b = member_sets[y]
            common = a & b
            if common and common != a and common != b:
                return (x, y)
    return None


def min_group_deletion_set(groups, depth_cap: int = DEFAULT_DEPTH_CAP) -> DeletionAnalysis:
    """Fewest groups whose removal leaves a hierarchical family.

    Iterative deepening over two-way branching: a conflicting pair can only
    be repaired by deleting one of its two groups.  At the first depth with
    any solution, all solutions of that depth are collected and the
    lexicographically smallest is returned.
    """
    member_sets = {f.id: f.members for f in groups}
    nodes = 0

    for k in range(0, depth_cap + 1):
        found: list[tuple[str, ...]] = []

        def search(deleted: frozenset[str], left: int) -> None:
            nonlocal nodes
            nodes += 1
            pair = _first_conflict({g: s for g, s in member_sets.items() if g not in deleted})
            if pair is None:
                found.append(tuple(sorted(deleted)))
                return
            if left == 0:
                return
            for gid in pair:
                search(deleted | {gid}, left - 1)

        search(frozenset(), k)
        if found:
            return DeletionAnalysis(
                deleted=min(found), depth_cap=depth_cap, nodes=nodes, search_budget_hit=False
            )
    return DeletionAnalysis(deleted=None, depth_cap=depth_cap, nodes=nodes, search_budget_hit=True)


def min_project_deletion_set(groups, depth_cap: int = DEFAULT_DEPTH_CAP) -> DeletionAnalysis:
    """Fewest projects whose removal leaves a hierarchical family.

    Three-way branching: for a conflicting pair, the intersection or one of
    the two differences must be deleted in full.
    """
    original = {f.id: f.members for f in groups}
    nodes = 0

    for k in range(0, depth_cap + 1):
        found: list[tuple[str, ...]] = []

        def search(deleted: frozenset[str], left: int) -> None:
            nonlocal nodes
            nodes += 1
            current = {g: s - deleted for g, s in original.items()}
            pair = _first_conflict(current)
            if pair is None:
                found.append(tuple(sorted(deleted)))
                return
            a, b = current[pair[0]], current[pair[1]]
            for piece in (a & b, a - b, b - a):
                if len(piece) <= left:
                    search(deleted | piece, left - len(piece))

        search(frozenset(), k)
        if found:
            # Every solution here has size exactly k: a smaller one would
            # have been reachable, and found, at an earlier depth.
            return DeletionAnalysis(
                deleted=min(found), depth_cap=depth_cap, nodes=nodes, search_budget_hit=False
            )
    return DeletionAnalysis(deleted=None, depth_cap=depth_cap, nodes=nodes, search_budget_hit=True)


def _restricted_instance(
    inst: Instance,
    keep_projects: frozenset[str],
    kept_groups: list[tuple[Group, int]],
    budget: int,
) -> Instance:
    """Sub-instance over keep_projects with already-reduced group budgets.

    Groups restricting to the same member set merge under the smallest
    budget, which preserves the conjunction of their constraints and keeps
    the family free of duplicate sets.
    """
    projects = tuple(p for p in inst.projects if p.id in keep_projects)
    voters = tuple(
        Voter(id=v.id, approves=frozenset(v.approves & keep_projects)) for v in inst.voters
    )
    reduced: dict[frozenset[str], tuple[str, int]] = {}
    for f, new_budget in kept_groups:
        members = f.members & keep_projects
        if not members:
            continue
        incumbent = reduced.get(members)
        if incumbent is None or new_budget < incumbent[1] or (new_budget == incumbent[1] and f.id < incumbent[0]):
            reduced[members] = (f.id, new_budget)
    groups = tuple(
        Group(id=gid, members=members, budget=b) for members, (gid, b) in reduced.items()
    )
    return Instance(budget=budget, projects=projects, voters=voters, groups=groups)


def _enumerate_and_solve(
    inst: Instance,
    funded_pool: tuple[str, ...],
    deleted_groups: list[Group],
    kept_groups: list[Group],
    algorithm: str,
    node_cap: int,
) -> SolveOutcome:
    """Try every funded subset of the pool, solve the hierarchical rest, keep the best."""
    if 2 ** len(funded_pool) > node_cap:
        raise SearchBudgetExceeded(
            f"2^{len(funded_pool)} funded subsets exceed the node cap of {node_cap}"
        )
    cost = {p.id: p.cost for p in inst.projects}
    scores = approval_scores(inst)
    remainder = frozenset(cost) - set(funded_pool)

    stats = SolveStats()
    best: Bundle | None = None
    pool = list(funded_pool)
    for mask in range(2 ** len(pool)):
        stats.nodes += 1
        chosen = frozenset(pool[i] for i in range(len(pool)) if mask >> i & 1)
        spent = sum(cost[pid] for pid in chosen)
        if spent > inst.budget:
            continue
        if any(sum(cost[p] for p in f.members & chosen) > f.budget for f in deleted_groups):
            continue
        kept_reduced = []
        feasible = True
        for f in kept_groups:
            inside = sum(cost[p] for p in f.members & chosen)
            if inside > f.budget:
                feasible = False
                break
            kept_reduced.append((f, f.budget - inside))
        if not feasible:
            continue

        sub = _restricted_instance(inst, remainder, kept_reduced, inst.budget - spent)
        outcome = solve_hier(sub)
        stats.cells += outcome.stats.cells
        ids = tuple(sorted(chosen | set(outcome.bundle.ids)))
        candidate = Bundle(
            ids=ids,
            cost=spent + outcome.bundle.cost,
            utility=sum(scores[pid] for pid in chosen) + outcome.bundle.utility,
        )
        if best is None or preference_key(candidate) < preference_key(best):
            best = candidate

    assert best is not None  # the empty funded subset always yields a candidate
    return SolveOutcome(
        algorithm=algorithm, utility=best.utility, bundle=best, exact=True, stats=stats
    )


def solve_group_deletion(
    inst: Instance, deleted_group_ids, node_cap: int = DEFAULT_NODE_CAP
) -> SolveOutcome:
    """Exact solve given groups whose removal makes the family hierarchical.

    Every subset of the deleted groups' members is tried as the funded part
    inside those groups; the deleted groups' budgets are checked on it
    directly (no remaining project can touch them), all other budgets are
    charged, and the remainder is solved via the hierarchy tree.
    """
    require_no_utility_floors(inst)
    by_id = inst.group_map()
    deleted = sorted(set(deleted_group_ids))
    unknown = [gid for gid in deleted if gid not in by_id]
    if unknown:
        raise InvalidDeletion(f"unknown group ids: {', '.join(unknown)}")
    deleted_groups = [by_id[gid] for gid in deleted]
    kept_groups = [f for f in inst.groups if f.id not in set(deleted)]
    if _first_conflict({f.id: f.members for f in kept_groups}) is not None:
        raise InvalidDeletion("remaining family is not hierarchical")

    pool = tuple(sorted(set().union(*[f.members for f in deleted_groups]) if deleted_groups else set()))
    return _enumerate_and_solve(inst, pool, deleted_groups, kept_groups, "group-del", node_cap)


def solve_project_deletion(
    inst: Instance, deleted_project_ids, node_cap: int = DEFAULT_NODE_CAP
) -> SolveOutcome:
    """Exact solve given projects whose removal makes the family hierarchical.

    The deleted projects themselves may still be funded: every subset of them
    is tried, charged against all group budgets, and the remainder (where
    those projects no longer appear in any group) is solved hierarchically.
    """
    require_no_utility_floors(inst)
    known = {p.id for p in inst.projects}
    deleted = sorted(set(deleted_project_ids))
    unknown = [pid for pid in deleted if pid not in known]
    if unknown:
        raise InvalidDeletion(f"unknown project ids: {', '.join(unknown)}")
    removed = frozenset(deleted)
    if _first_conflict({f.id: f.members - removed for f in inst.groups}) is not None:
        raise InvalidDeletion("remaining family is not hierarchical")

    return _enumerate_and_solve(
        inst, tuple(deleted), [], list(inst.groups), "proj-del", node_cap
    )
