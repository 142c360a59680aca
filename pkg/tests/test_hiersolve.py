import pytest
from hypothesis import given, settings, strategies as st

from grouppb import (
    GenParams,
    Group,
    Instance,
    NotHierarchical,
    Project,
    Voter,
    build_hier_tree,
    check_bundle,
    gen_random,
    normalize,
    solve_bruteforce,
    solve_hier,
    validate_instance,
)


def laminar_instance(seed: int, m=9, n=3, g=4) -> Instance:
    inst = gen_random(GenParams(m=m, n=n, g=g, seed=seed, family_shape="laminar"))
    inst, _ = normalize(inst)
    return inst


def test_tree_wraps_groups_and_uncovered_projects(district_pair):
    tree = build_hier_tree(district_pair)
    root = tree.root
    assert root.budget == district_pair.budget and root.project is None
    labels = sorted(child.label for child in root.children)
    assert labels == ["F1", "F2"]
    for child in root.children:
        assert sorted(leaf.project for leaf in child.children) == sorted(
            {"F1": ["p1", "p3"], "F2": ["p2", "p4"]}[child.label]
        )


def test_tree_gives_uncovered_projects_their_cost_as_budget():
    inst = validate_instance(
        Instance(
            budget=10,
            projects=(Project(id="a", cost=4), Project(id="b", cost=6)),
            voters=(Voter(id="v", approves=frozenset({"a", "b"})),),
            groups=(Group(id="F", members=frozenset({"a"}), budget=4),),
        )
    )
    tree = build_hier_tree(inst)
    by_project = {child.project: child for child in tree.root.children}
    assert by_project["b"].label is None and by_project["b"].budget == 6


def test_nested_groups_nest_in_tree():
    inst = validate_instance(
        Instance(
            budget=10,
            projects=(Project(id="a", cost=1), Project(id="b", cost=1), Project(id="c", cost=1)),
            voters=(Voter(id="v", approves=frozenset({"a", "b", "c"})),),
            groups=(
                Group(id="outer", members=frozenset({"a", "b"}), budget=2),
                Group(id="inner", members=frozenset({"a"}), budget=1),
            ),
        )
    )
    tree = build_hier_tree(inst)
    outer = next(ch for ch in tree.root.children if ch.label == "outer")
    assert sorted(ch.label or ch.project for ch in outer.children) == ["b", "inner"]


def test_rejects_crossing_family():
    inst = validate_instance(
        Instance(
            budget=4,
            projects=(Project(id="a", cost=1), Project(id="b", cost=1), Project(id="c", cost=1)),
            voters=(Voter(id="v", approves=frozenset({"a", "b", "c"})),),
            groups=(
                Group(id="F1", members=frozenset({"a", "b"}), budget=2),
                Group(id="F2", members=frozenset({"b", "c"}), budget=2),
            ),
        )
    )
    with pytest.raises(NotHierarchical):
        solve_hier(inst)


def test_matches_oracle_on_district_pair(district_pair):
    out = solve_hier(district_pair)
    assert out.utility == 4
    assert out.bundle.ids == ("p2", "p3", "p4")


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**9))
def test_matches_oracle_with_full_profile(seed):
    inst = laminar_instance(seed)
    oracle = solve_bruteforce(inst)
    out = solve_hier(inst)
    assert out.utility == oracle.optimum
    assert out.bundle == oracle.witness
    assert out.profile.entries == oracle.profile.entries


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9), st.integers(0, 12))
def test_capped_axis_answers_decision_queries(seed, target):
    inst = laminar_instance(seed, m=7)
    oracle = solve_bruteforce(inst)
    out = solve_hier(inst, u_cap=target)
    satisfiable = oracle.optimum >= target
    assert (out.utility >= target) == satisfiable
    if satisfiable and target > 0:
        report = check_bundle(inst, out.bundle.ids)
        assert report.feasible and report.utility >= target


def test_no_groups_is_a_plain_knapsack():
    inst = validate_instance(
        Instance(
            budget=4,
            projects=(Project(id="a", cost=3), Project(id="b", cost=2), Project(id="c", cost=2)),
            voters=(
                Voter(id="v1", approves=frozenset({"a"})),
                Voter(id="v2", approves=frozenset({"a"})),
                Voter(id="v3", approves=frozenset({"b", "c"})),
            ),
            groups=(),
        )
    )
    out = solve_hier(inst)
    # a alone scores 2 at cost 3; b+c score 2 at cost 4; tie broken by cost
    assert out.utility == 2 and out.bundle.ids == ("a",)


def test_stats_are_populated(district_pair):
    out = solve_hier(district_pair)
    assert out.stats.nodes >= 3 and out.stats.cells > 0
