"""Worst-case complexity bound calculators for Conflict-Based Search.

The package computes exact per-agent MDD sizes and their closed-form bounds,
evaluates the conflict-tree budget recurrence exactly and in log2 space,
carries out the generating-function asymptotics for the recurrence, compares
all resulting bounds on benchmark rows, and validates them empirically against
a reference CBS solver.
"""

from .bounds import (
    BoundInputs,
    BoundReport,
    bound_grid_mdd,
    bound_mdd_exponential,
    bound_original,
    bound_radius_mdd,
    bound_rec_genfunc,
    bound_rec_induction,
    compare,
    display_exponent,
)
from .cbs import (
    BoundCheckReport,
    BoundViolationError,
    Conflict,
    Constraint,
    CtNode,
    SolveStats,
    UnsolvableError,
    Violation,
    empirical_bound_check,
    find_conflicts,
    low_level_search,
    solve,
    validate,
)
from .genfunc import (
    BivariateSeries,
    Contribution,
    CriticalPoint,
    approx_linear,
    contribution_multiple,
    contribution_single,
    crossover_ratio,
    eval_G,
    eval_H,
    eval_H_partials,
    expand_series,
    hessian_det,
    multiple_point_constant,
    single_point_growth_base,
    solve_critical_points,
)
from .logspace import LOG2_3, Log2Value, log2_add, log2_of_int
from .mdd import (
    Mdd,
    MddSizeBound,
    analytic_size_bound,
    build_mdd,
    constraint_space_size,
    layer_bound,
    mdd_size,
    radius_size_bound,
    with_edges_bound,
)
from .model import (
    GridMap,
    Instance,
    InstanceSummary,
    ParseError,
    ScenEntry,
    bfs_distance,
    distance_field,
    is_valid_path,
    parse_map,
    parse_scen,
    path_cost,
    radius,
    read_scen_entries,
    serialize_map,
)
from .recurrence import (
    DEFAULT_EXACT_CELL_LIMIT,
    eval_exact,
    eval_exact_table,
    eval_log,
    induction_bound,
)

__version__ = "0.1.0"
