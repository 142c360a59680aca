"""Shared fixtures and independent reference implementations.

The reference helpers here deliberately avoid the library's own search code:
deletion minima come from subset enumeration, independent sets from bitmask
enumeration, and partition feasibility from a subset-sum table, so library
results are checked against separately written logic.
"""

from __future__ import annotations

from itertools import combinations

import pytest

from grouppb import (
    GenParams,
    Group,
    Instance,
    Project,
    Voter,
    gen_random,
    normalize,
    validate_instance,
)


@pytest.fixture
def district_pair() -> Instance:
    """Four projects, two disjoint district groups; optimum 4 = {p2,p3,p4}."""
    return validate_instance(
        Instance(
            budget=5,
            projects=(
                Project(id="p1", cost=2),
                Project(id="p2", cost=1),
                Project(id="p3", cost=3),
                Project(id="p4", cost=1),
            ),
            voters=(
                Voter(id="v1", approves=frozenset({"p1", "p2", "p3"})),
                Voter(id="v2", approves=frozenset({"p3", "p4"})),
            ),
            groups=(
                Group(id="F1", members=frozenset({"p1", "p3"}), budget=3),
                Group(id="F2", members=frozenset({"p2", "p4"}), budget=2),
            ),
        )
    )


def build_corpus(count: int, seed0: int = 0, *, m=8, n=3, g=3, shapes=None) -> list[Instance]:
    """Deterministic normalized instances cycling through family shapes."""
    if shapes is None:
        shapes = ("random-subsets", "laminar", "partition")
    out = []
    for i in range(count):
        shape = shapes[i % len(shapes)]
        inst = gen_random(GenParams(m=m, n=n, g=g, seed=seed0 + i, family_shape=shape))
        inst, _ = normalize(inst)
        out.append(inst)
    return out


def crossing_pairs(member_sets: list[frozenset]) -> bool:
    """True when some pair of sets overlaps without nesting (duplicates ok)."""
    for i, a in enumerate(member_sets):
        for b in member_sets[i + 1 :]:
            common = a & b
            if common and common != a and common != b:
                return True
    return False


def exhaustive_group_deletion_min(groups) -> tuple[int, tuple[str, ...]]:
    """Smallest group set whose removal leaves no crossing pair; lex-min witness."""
    ids = sorted(f.id for f in groups)
    sets = {f.id: f.members for f in groups}
    for k in range(len(ids) + 1):
        hits = []
        for combo in combinations(ids, k):
            rest = [sets[gid] for gid in ids if gid not in combo]
            if not crossing_pairs(rest):
                hits.append(combo)
        if hits:
            return k, min(hits)
    raise AssertionError("deleting everything always works")


def exhaustive_project_deletion_min(groups, size_cap: int) -> tuple[int, tuple[str, ...]] | None:
    """Smallest project set (up to size_cap) whose removal kills all crossings."""
    pool = sorted(set().union(*[set(f.members) for f in groups]) if groups else set())
    sets = [f.members for f in groups]
    for k in range(size_cap + 1):
        hits = []
        for combo in combinations(pool, k):
            removed = frozenset(combo)
            if not crossing_pairs([s - removed for s in sets]):
                hits.append(combo)
        if hits:
            return k, min(hits)
    return None


def add_crossing_group(inst: Instance, gid: str, salt: int) -> Instance | None:
    """Extend the family with a two-member group that crosses an existing one.

    Picks a host group with at least two members and one outside project,
    seeded by salt; returns None when the family cannot be crossed this way.
    """
    existing = {f.members for f in inst.groups}
    all_ids = sorted(p.id for p in inst.projects)
    hosts = [f for f in sorted(inst.groups, key=lambda f: f.id) if len(f.members) >= 2]
    for shift, host in enumerate(hosts):
        inside = sorted(host.members)[(salt + shift) % len(host.members)]
        outside_pool = [pid for pid in all_ids if pid not in host.members]
        if not outside_pool:
            continue
        outside = outside_pool[(salt + shift) % len(outside_pool)]
        members = frozenset({inside, outside})
        if members in existing:
            continue
        cost = {p.id: p.cost for p in inst.projects}
        budget = min(inst.budget, max(1, (cost[inside] + cost[outside]) // 2))
        new_group = Group(id=gid, members=members, budget=budget)
        return validate_instance(
            Instance(
                budget=inst.budget,
                projects=inst.projects,
                voters=inst.voters,
                groups=tuple(inst.groups) + (new_group,),
            )
        )
    return None


def max_independent_set(vertices, edges) -> int:
    """Largest independent set by bitmask enumeration; fine up to ~20 vertices."""
    order = sorted(vertices)
    index = {v: i for i, v in enumerate(order)}
    edge_masks = [(1 << index[x]) | (1 << index[y]) for x, y in edges]
    best = 0
    for s in range(1 << len(order)):
        if any((s & em) == em for em in edge_masks):
            continue
        best = max(best, bin(s).count("1"))
    return best


def has_perfect_partition(nums) -> bool:
    """Subset-sum reachability of half the total."""
    total = sum(nums)
    if total % 2:
        return False
    reachable = {0}
    for x in nums:
        reachable |= {r + x for r in reachable if r + x <= total // 2}
    return total // 2 in reachable
