"""Approval-based budgeting with overlapping per-group budgets.

A bundle of projects is feasible when its cost fits the global budget and,
inside every group, the cost of the bundle's members fits that group's own
budget.  The package offers exact solvers keyed to the structure of the group
family (hierarchical families, families close to hierarchical, few groups),
approximation routines with certified guarantees, an integer-programming
export, generators, and a command line front end.
"""

__version__ = "0.1.0"

from .core import (
    Bundle,
    DerivedStats,
    FeasibilityReport,
    Group,
    Instance,
    ProfileEntry,
    Project,
    SolveOutcome,
    SolveStats,
    UtilityCostProfile,
    Violation,
    Voter,
    approval_scores,
    check_bundle,
    derived_stats,
    make_bundle,
    normalize,
    preference_key,
    validate_instance,
)
from .errors import (
    GroupPBError,
    InvalidDeletion,
    InvalidGraph,
    InvalidInstance,
    NotHierarchical,
    OddTotal,
    ParseError,
    SchemaError,
    SearchBudgetExceeded,
    TableTooLarge,
    TooLarge,
    UnknownProject,
    UtilityFloorsUnsupported,
    ValidationIssue,
)
from .fileformat import parse_instance, serialize_instance
from .generators import (
    GenParams,
    SimpleGraph,
    SplitMix64,
    gen_from_graph_is,
    gen_from_partition,
    gen_random,
    make_graph,
)
from .layers import (
    ConflictGraph,
    LayerDecomposition,
    OrderedLayers,
    conflict_graph,
    exact_layerwidth,
    greedy_layers,
    is_hierarchical,
    is_valid_decomposition,
    ordered_hier_layers,
    two_layer_decomposition,
)
from .hiersolve import HierNode, HierTree, build_hier_tree, solve_hier
from .distsolve import (
    DeletionAnalysis,
    min_group_deletion_set,
    min_project_deletion_set,
    solve_group_deletion,
    solve_project_deletion,
)
from .typesolve import (
    TypeIndex,
    TypeTables,
    solve_types_decision,
    solve_types_max,
    type_index,
    type_min_cost_tables,
)
from .dimsolve import solve_dimdp, table_cells
from .approx import individually_feasible, lp_relaxation, solve_fptas_g, solve_lp_round
from .lp import BasicSolution, LpModel, LpRow, simplex_solve
from .milp import MilpModel, MilpType, build_milp, export_lp_format, validate_milp_tiny
from .oracle import OracleResult, solve_bruteforce

__all__ = [
    "__version__",
    "Bundle",
    "DerivedStats",
    "FeasibilityReport",
    "Group",
    "Instance",
    "ProfileEntry",
    "Project",
    "SolveOutcome",
    "SolveStats",
    "UtilityCostProfile",
    "Violation",
    "Voter",
    "approval_scores",
    "check_bundle",
    "derived_stats",
    "make_bundle",
    "normalize",
    "preference_key",
    "validate_instance",
    "GroupPBError",
    "InvalidDeletion",
    "InvalidGraph",
    "InvalidInstance",
    "NotHierarchical",
    "OddTotal",
    "ParseError",
    "SchemaError",
    "SearchBudgetExceeded",
    "TableTooLarge",
    "TooLarge",
    "UnknownProject",
    "UtilityFloorsUnsupported",
    "ValidationIssue",
    "parse_instance",
    "serialize_instance",
    "GenParams",
    "SimpleGraph",
    "SplitMix64",
    "gen_from_graph_is",
    "gen_from_partition",
    "gen_random",
    "make_graph",
    "ConflictGraph",
    "LayerDecomposition",
    "OrderedLayers",
    "conflict_graph",
    "exact_layerwidth",
    "greedy_layers",
    "is_hierarchical",
    "is_valid_decomposition",
    "ordered_hier_layers",
    "two_layer_decomposition",
    "HierNode",
    "HierTree",
    "build_hier_tree",
    "solve_hier",
    "DeletionAnalysis",
    "min_group_deletion_set",
    "min_project_deletion_set",
    "solve_group_deletion",
    "solve_project_deletion",
    "TypeIndex",
    "TypeTables",
    "solve_types_decision",
    "solve_types_max",
    "type_index",
    "type_min_cost_tables",
    "solve_dimdp",
    "table_cells",
    "individually_feasible",
    "lp_relaxation",
    "solve_fptas_g",
    "solve_lp_round",
    "BasicSolution",
    "LpModel",
    "LpRow",
    "simplex_solve",
    "MilpModel",
    "MilpType",
    "build_milp",
    "export_lp_format",
    "validate_milp_tiny",
    "OracleResult",
    "solve_bruteforce",
]
