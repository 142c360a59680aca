"""Canonical data model: instances, bundles, feasibility checks, shared outcome types.

An instance is a participatory-budgeting election with approval ballots, a
global budget, and a family of project groups, each carrying its own budget
limit.  Groups may overlap.  A bundle is feasible when its total cost fits the
global budget and, for every group, the cost of the bundle's projects inside
that group fits the group's budget.  Bundle utility is the sum over voters of
the number of funded projects each voter approves.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidInstance, UnknownProject, ValidationIssue

ID_PATTERN = re.compile(r"^[A-Za-z0-9_-]+$")


@dataclass(frozen=True)
class Project:
    id: str
    cost: int


@dataclass(frozen=True)
class Voter:
    id: str
    approves: frozenset[str]


@dataclass(frozen=True)
class Group:
    """A named subset of projects with its own budget limit.

    min_utility is an optional floor on the utility contributed by the
    group's members; only check_bundle and the brute-force solver honor it.
    """

    id: str
    members: frozenset[str]
    budget: int
    min_utility: int = 0


@dataclass(frozen=True)
class Instance:
    """A validated election.  Projects, voters, and groups are id-sorted."""

    budget: int
    projects: tuple[Project, ...]
    voters: tuple[Voter, ...]
    groups: tuple[Group, ...]

    def project_map(self) -> dict[str, Project]:
        return {p.id: p for p in self.projects}

    def group_map(self) -> dict[str, Group]:
        return {f.id: f for f in self.groups}


@dataclass(frozen=True)
class DerivedStats:
    m: int
    n: int
    g: int
    total_score: int  # sum over projects of their approval score

    @property
    def max_utility(self) -> int:
        return self.total_score


@dataclass(frozen=True)
class Bundle:
    """A set of funded projects with its precomputed cost and utility."""

    ids: tuple[str, ...]
    cost: int
    utility: int


@dataclass(frozen=True)
class Violation:
    kind: str  # "global-budget" | "group-budget" | "group-utility-floor"
    scope: str  # group id, or "global"
    limit: int
    actual: int


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    violations: tuple[Violation, ...]
    cost: int
    utility: int


@dataclass(frozen=True)
class ProfileEntry:
    cost: int
    ids: tuple[str, ...]


@dataclass(frozen=True)
class UtilityCostProfile:
    """entries[z] is the cheapest feasible bundle of utility exactly z, or None."""

    entries: tuple[ProfileEntry | None, ...]

    def optimum(self) -> tuple[int, ProfileEntry] | None:
        for z in range(len(self.entries) - 1, -1, -1):
            entry = self.entries[z]
            if entry is not None:
                return z, entry
        return None


@dataclass
class SolveStats:
    nodes: int = 0
    cells: int = 0
    wall_time_s: float = 0.0


@dataclass
class SolveOutcome:
    """Result of any solver: utility, witness, and provenance."""

    algorithm: str
    utility: int
    bundle: Bundle
    exact: bool = True
    guarantee: Fraction | None = None
    profile: UtilityCostProfile | None = None
    stats: SolveStats = field(default_factory=SolveStats)


def preference_key(bundle: Bundle) -> tuple[int, int, tuple[str, ...]]:
    """Sort key of the canonical tie-break; min() picks the preferred bundle.

    Preference order: higher utility, then lower cost, then lexicographically
    smaller sorted id list.
    """
    return (-bundle.utility, bundle.cost, bundle.ids)


def approval_scores(inst: Instance) -> dict[str, int]:
    """Number of approving voters per project, for every project in the instance."""
    scores = {p.id: 0 for p in inst.projects}
    for voter in inst.voters:
        for pid in voter.approves:
            scores[pid] += 1
    return scores


def derived_stats(inst: Instance) -> DerivedStats:
    total = sum(approval_scores(inst).values())
    return DerivedStats(
        m=len(inst.projects), n=len(inst.voters), g=len(inst.groups), total_score=total
    )


def make_bundle(inst: Instance, project_ids) -> Bundle:
    """Build a Bundle from project ids, computing cost and utility.

    Duplicate ids collapse; unknown ids raise UnknownProject.
    """
    ids = sorted(set(project_ids))
    costs = {p.id: p.cost for p in inst.projects}
    for pid in ids:
        if pid not in costs:
            raise UnknownProject(pid)
    chosen = set(ids)
    utility = sum(len(v.approves & chosen) for v in inst.voters)
    return Bundle(ids=tuple(ids), cost=sum(costs[pid] for pid in ids), utility=utility)


def validate_instance(inst: Instance) -> Instance:
    """Check structural integrity and return a canonically ordered copy.

    Collects every defect before raising, so callers see all issues at once.
    Canonical order sorts projects, voters, and groups by id and keeps ids
    within the [A-Za-z0-9_-]+ alphabet shared with the file format.
    """
    issues: list[ValidationIssue] = []

    def check_id(label: str, value: str) -> None:
        if not isinstance(value, str) or not ID_PATTERN.match(value):
            issues.append(ValidationIssue("bad-id", f"{label} id {value!r} is not [A-Za-z0-9_-]+"))

    def check_nonneg(label: str, value) -> None:
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            issues.append(ValidationIssue("negative-quantity", f"{label} must be a non-negative integer, got {value!r}"))

    check_nonneg("global budget", inst.budget)

    seen: set[str] = set()
    for p in inst.projects:
        check_id("project", p.id)
        check_nonneg(f"cost of project {p.id}", p.cost)
        if p.id in seen:
            issues.append(ValidationIssue("duplicate-id", f"project id {p.id} repeats"))
        seen.add(p.id)
    known = seen

    seen = set()
    for v in inst.voters:
        check_id("voter", v.id)
        if v.id in seen:
            issues.append(ValidationIssue("duplicate-id", f"voter id {v.id} repeats"))
        seen.add(v.id)
        for pid in sorted(v.approves):
            if pid not in known:
                issues.append(
                    ValidationIssue("dangling-reference", f"voter {v.id} approves unknown project {pid}")
                )

    seen = set()
    for f in inst.groups:
        check_id("group", f.id)
        check_nonneg(f"budget of group {f.id}", f.budget)
        check_nonneg(f"min_utility of group {f.id}", f.min_utility)
        if f.id in seen:
            issues.append(ValidationIssue("duplicate-id", f"group id {f.id} repeats"))
        seen.add(f.id)
        for pid in sorted(f.members):
            if pid not in known:
                issues.append(
                    ValidationIssue("dangling-reference", f"group {f.id} contains unknown project {pid}")
                )

    if issues:
        raise InvalidInstance(issues)

    return Instance(
        budget=inst.budget,
        projects=tuple(sorted(inst.projects, key=lambda p: p.id)),
        voters=tuple(sorted(inst.voters, key=lambda v: v.id)),
        groups=tuple(sorted(inst.groups, key=lambda f: f.id)),
    )


def normalize(inst: Instance) -> tuple[Instance, tuple[str, ...]]:
    """Apply the standard simplifications, reporting each as a note.

    Removes projects no voter approves, clamps group budgets to the global
    budget, and merges groups with identical member sets (keeping the
    lexicographically smallest id, the smallest budget, and the largest
    utility floor).  Idempotent: normalizing a normalized instance is a
    no-op with no notes.
    """
    notes: list[str] = []
    scores = approval_scores(inst)

    dropped = sorted(pid for pid, s in scores.items() if s == 0)
    if dropped:
        notes.append("removed projects with no approvals: " + ", ".join(dropped))
    keep = {p.id for p in inst.projects} - set(dropped)
    projects = tuple(p for p in inst.projects if p.id in keep)

    groups: list[Group] = []
    for f in inst.groups:
        members = frozenset(f.members & keep)
        if members != f.members:
            notes.append(f"pruned removed projects from group {f.id}")
        budget = f.budget
        if budget > inst.budget:
            notes.append(f"clamped budget of group {f.id} from {budget} to the global budget {inst.budget}")
            budget = inst.budget
        groups.append(Group(id=f.id, members=members, budget=budget, min_utility=f.min_utility))

    by_members: dict[frozenset[str], list[Group]] = {}
    for f in groups:
        by_members.setdefault(f.members, []).append(f)
    merged: list[Group] = []
    for members, same in by_members.items():
        if len(same) == 1:
            merged.append(same[0])
            continue
        same.sort(key=lambda f: f.id)
        kept = Group(
            id=same[0].id,
            members=members,
            budget=min(f.budget for f in same),
            min_utility=max(f.min_utility for f in same),
        )
        notes.append(
            "merged groups with identical members: "
            + ", ".join(f.id for f in same)
            + f" -> {kept.id}"
        )
        merged.append(kept)

    out = Instance(
        budget=inst.budget,
        projects=projects,
        voters=inst.voters,
        groups=tuple(sorted(merged, key=lambda f: f.id)),
    )
    return out, tuple(notes)


def check_bundle(inst: Instance, project_ids) -> FeasibilityReport:
    """Evaluate every budget constraint and utility floor for a candidate bundle.

    Reports all violations, ordered global budget first and then per group in
    id order.  Unknown ids raise UnknownProject.
    """
    bundle = make_bundle(inst, project_ids)
    chosen = set(bundle.ids)
    costs = {p.id: p.cost for p in inst.projects}
    scores = approval_scores(inst)

    violations: list[Violation] = []
    if bundle.cost > inst.budget:
        violations.append(Violation("global-budget", "global", inst.budget, bundle.cost))
    for f in inst.groups:
        inside = f.members & chosen
        group_cost = sum(costs[pid] for pid in inside)
        if group_cost > f.budget:
            violations.append(Violation("group-budget", f.id, f.budget, group_cost))
        if f.min_utility > 0:
            group_utility = sum(scores[pid] for pid in inside)
            if group_utility < f.min_utility:
                violations.append(
                    Violation("group-utility-floor", f.id, f.min_utility, group_utility)
                )

    return FeasibilityReport(
        feasible=not violations,
        violations=tuple(violations),
        cost=bundle.cost,
        utility=bundle.utility,
    )


def require_no_utility_floors(inst: Instance) -> None:
    """Guard for optimized solvers, which do not model per-group utility floors."""
    from .errors import UtilityFloorsUnsupported

    floored = sorted(f.id for f in inst.groups if f.min_utility > 0)
    if floored:
        raise UtilityFloorsUnsupported(
            "groups with utility floors need the brute-force solver: " + ", ".join(floored)
        )
