import pytest
from hypothesis import given, settings, strategies as st

from grouppb import (
    GenParams,
    Group,
    Instance,
    TableTooLarge,
    UtilityFloorsUnsupported,
    gen_random,
    normalize,
    solve_bruteforce,
    solve_dimdp,
    table_cells,
)

from conftest import build_corpus


def test_table_cells_is_product_of_axis_sizes(district_pair):
    # Axes: one per group budget plus the global budget.
    assert table_cells(district_pair) == (3 + 1) * (2 + 1) * (5 + 1)
    bare = Instance(
        budget=7,
        projects=district_pair.projects,
        voters=district_pair.voters,
        groups=(),
    )
    assert table_cells(bare) == 8


def test_district_pair_optimum(district_pair):
    out = solve_dimdp(district_pair)
    assert out.algorithm == "dimdp" and out.exact
    assert out.utility == 4
    assert out.bundle.ids == ("p2", "p3", "p4")
    assert out.bundle.cost == 5
    assert out.stats.cells == table_cells(district_pair)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_matches_oracle_with_canonical_witness(seed):
    inst = gen_random(GenParams(m=8, n=3, g=3, seed=seed))
    inst, _ = normalize(inst)
    if table_cells(inst) > 2_000_000:
        return
    oracle = solve_bruteforce(inst)
    out = solve_dimdp(inst)
    assert out.utility == oracle.optimum
    assert out.bundle == oracle.witness


def test_corpus_agreement_across_shapes():
    for inst in build_corpus(12, m=8, g=3, seed0=300):
        if table_cells(inst) > 2_000_000:
            continue
        oracle = solve_bruteforce(inst)
        out = solve_dimdp(inst)
        assert out.utility == oracle.optimum
        assert out.bundle == oracle.witness


def test_cell_cap_refuses_large_tables(district_pair):
    with pytest.raises(TableTooLarge):
        solve_dimdp(district_pair, cell_cap=table_cells(district_pair) - 1)
    # The exact cap is allowed.
    assert solve_dimdp(district_pair, cell_cap=table_cells(district_pair)).utility == 4


def test_oversized_project_never_funded():
    from grouppb import Project, Voter, validate_instance

    inst = validate_instance(
        Instance(
            budget=10,
            projects=(
                Project(id="a", cost=2),
                Project(id="b", cost=9),
            ),
            voters=(Voter(id="v", approves=frozenset({"a", "b"})),),
            groups=(Group(id="F", members=frozenset({"b"}), budget=3),),
        )
    )
    out = solve_dimdp(inst)
    assert out.utility == 1 and out.bundle.ids == ("a",)


def test_zero_cost_projects_always_included():
    from grouppb import Project, Voter, validate_instance

    inst = validate_instance(
        Instance(
            budget=1,
            projects=(Project(id="a", cost=0), Project(id="b", cost=1)),
            voters=(Voter(id="v", approves=frozenset({"a", "b"})),),
            groups=(),
        )
    )
    out = solve_dimdp(inst)
    assert out.utility == 2 and out.bundle.ids == ("a", "b")


def test_floors_are_rejected():
    from grouppb import Project, Voter, validate_instance

    inst = validate_instance(
        Instance(
            budget=3,
            projects=(Project(id="a", cost=1),),
            voters=(Voter(id="v", approves=frozenset({"a"})),),
            groups=(Group(id="F", members=frozenset({"a"}), budget=2, min_utility=1),),
        )
    )
    with pytest.raises(UtilityFloorsUnsupported):
        solve_dimdp(inst)
