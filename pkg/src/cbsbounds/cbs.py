"""Reference Conflict-Based Search solver, instrumented for bound checks.

Two-level optimal MAPF search under the makespan objective. The high level
runs best-first over a constraint tree; the low level is space-time A* with
negative and positive vertex/edge constraints. Splitting is either classic
(negative constraint on each conflicting agent) or disjoint (positive plus
negative constraint on one agent). Solve statistics are compared against the
worst-case calculators by :func:`empirical_bound_check`.

Edge-constraint time convention: an edge constraint (u, v, t) refers to the
move that leaves u at t-1 and arrives at v at t, so t >= 1 always.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Optional

from .bounds import BoundInputs, bound_rec_genfunc
from .logspace import log2_of_int
from .model import Cell, Instance, Path, distance_field, path_cost
from .recurrence import DEFAULT_EXACT_CELL_LIMIT, eval_exact, eval_log


class UnsolvableError(RuntimeError):
    """No conflict-free solution exists within the search horizon."""


class BoundViolationError(RuntimeError):
    """Measured conflict-tree size exceeded a worst-case bound."""


def _adjacent(a: Cell, b: Cell) -> bool:
    return abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1


@dataclass(frozen=True)
class Constraint:
    """A (possibly positive) vertex or edge constraint on one agent."""

    agent: int
    kind: str  # "vertex" | "edge"
    sign: str  # "negative" | "positive"
    loc: tuple  # Cell for vertex; ordered (u, v) Cell pair for edge
    t: int

    def __post_init__(self):
        if self.kind not in ("vertex", "edge"):
            raise ValueError(f"unknown constraint kind {self.kind!r}")
        if self.sign not in ("negative", "positive"):
            raise ValueError(f"unknown constraint sign {self.sign!r}")
        if self.kind == "vertex":
            if self.t < 0:
                raise ValueError("vertex constraints need t >= 0")
        else:
            if self.t < 1:
                raise ValueError("edge constraints need t >= 1")
            u, v = self.loc
            if not _adjacent(u, v):
                raise ValueError(f"edge constraint cells {u}, {v} not 4-adjacent")


@dataclass(frozen=True)
class Conflict:
    """First disagreement between two paths: same cell, or a swap."""

    agents: tuple[int, int]
    kind: str  # "vertex" | "edge"
    loc: tuple  # Cell, or (u, v) as the move of the first agent
    t: int


@dataclass
class CtNode:
    """One constraint-tree node: constraints, paths, cost, pending conflict."""

    constraints: frozenset[Constraint]
    paths: tuple[Path, ...]
    cost: int
    conflict: Optional[Conflict]
    n_conflicts: int
    depth: int


@dataclass(frozen=True)
class SolveStats:
    """Conflict-tree statistics of one solve run."""

    generated: int
    expanded: int
    max_depth: int
    negative_applied: int
    positive_applied: int
    optimal_cost: int
    expansion_costs: tuple[int, ...]


@dataclass(frozen=True)
class Violation:
    """Earliest rule violation found in a solution."""

    kind: str
    agents: tuple[int, ...]
    loc: tuple
    t: int


def _position(path: Path, t: int) -> Cell:
    """Where the agent is at time t; it rests at its terminal cell forever."""
    return path[t] if t < len(path) else path[-1]


def find_conflicts(paths: tuple[Path, ...]) -> list[Conflict]:
    """All vertex and swap conflicts, in time order (vertex first per step)."""
    horizon = max(len(p) for p in paths) - 1
    k = len(paths)
    out = []
    for t in range(horizon + 1):
        occupied: dict[Cell, int] = {}
        for i in range(k):
            cell = _position(paths[i], t)
            if cell in occupied:
                out.append(Conflict((occupied[cell], i), "vertex", cell, t))
            else:
                occupied[cell] = i
        if t == 0:
            continue
        for i in range(k):
            ui, vi = _position(paths[i], t - 1), _position(paths[i], t)
            if ui == vi:
                continue
            for j in range(i + 1, k):
                uj, vj = _position(paths[j], t - 1), _position(paths[j], t)
                if ui == vj and vi == uj:
                    out.append(Conflict((i, j), "edge", (ui, vi), t))
    return out


def _constraint_tables(constraints, agent):
    """Split a constraint set into the tables the low level consults.

    Returns (neg_vertex, neg_edge, required) where required maps t -> cell the
    agent must occupy. Positive constraints of other agents turn into negative
    constraints here. Returns None when the positives are contradictory.
    """
    neg_v: set[tuple[Cell, int]] = set()
    neg_e: set[tuple[Cell, Cell, int]] = set()
    required: dict[int, Cell] = {}

    def require(t: int, cell: Cell) -> bool:
        if required.get(t, cell) != cell:
            return False
        required[t] = cell
        return True

    for c in constraints:
        if c.agent == agent:
            if c.sign == "negative":
                if c.kind == "vertex":
                    neg_v.add((c.loc, c.t))
                else:
                    u, v = c.loc
                    neg_e.add((u, v, c.t))
            else:
                if c.kind == "vertex":
                    if not require(c.t, c.loc):
                        return None
                else:
                    u, v = c.loc
                    if not (require(c.t - 1, u) and require(c.t, v)):
                        return None
        elif c.sign == "positive":
            # someone else is pinned there; this agent must keep clear
            if c.kind == "vertex":
                neg_v.add((c.loc, c.t))
            else:
                u, v = c.loc
                neg_v.add((u, c.t - 1))
                neg_v.add((v, c.t))
                neg_e.add((v, u, c.t))
    return neg_v, neg_e, required


def low_level_search(
    instance: Instance,
    agent: int,
    constraints,
    horizon: int,
    dist_to_goal=None,
) -> Optional[Path]:
    """Minimum-termination-time constrained path for one agent, or None.

    Space-time A* over (cell, t) with the exact unconstrained distance to the
    goal as heuristic; ties break toward higher g. The path terminates only
    once no later negative constraint pins the goal cell and every positive
    constraint away from the goal has been consumed.
    """
    grid = instance.map
    start, goal = instance.agents[agent]
    tables = _constraint_tables(constraints, agent)
    if tables is None:
        return None
    neg_v, neg_e, required = tables
    if required.get(0, start) != start or (start, 0) in neg_v:
        return None
    if any(t > horizon for t in required):
        return None

    if dist_to_goal is None:
        dist_to_goal = distance_field(grid, goal)
    h0 = int(dist_to_goal[start[1], start[0]])
    if h0 < 0:
        return None

    floor = 0
    for cell, t in neg_v:
        if cell == goal:
            floor = max(floor, t + 1)
    for t, cell in required.items():
        if cell != goal:
            floor = max(floor, t)

    open_heap = [(max(h0, floor), 0, start)]
    parent: dict[tuple[Cell, int], Optional[tuple[Cell, int]]] = {(start, 0): None}
    closed: set[tuple[Cell, int]] = set()
    while open_heap:
        f, neg_t, cell = heapq.heappop(open_heap)
        t = -neg_t
        if (cell, t) in closed:
            continue
        closed.add((cell, t))
        if cell == goal and t >= floor:
            waypoints = []
            state: Optional[tuple[Cell, int]] = (cell, t)
            while state is not None:
                waypoints.append(state[0])
                state = parent[state]
            return tuple(reversed(waypoints))
        nt = t + 1
        if nt > horizon:
            continue
        req = required.get(nt)
        for nxt in (cell, *grid.neighbors(cell)):
            if (nxt, nt) in parent:
                continue
            if (nxt, nt) in neg_v:
                continue
            if nxt != cell and (cell, nxt, nt) in neg_e:
                continue
            if req is not None and req != nxt:
                continue
            h = int(dist_to_goal[nxt[1], nxt[0]])
            if h < 0:
                continue
            parent[(nxt, nt)] = (cell, t)
            heapq.heappush(open_heap, (nt + h, -nt, nxt))
    return None


def _violates(path: Path, agent: int, c: Constraint) -> bool:
    """Whether a path breaks one constraint (including implied negatives)."""
    last = len(path) - 1
    if c.agent == agent:
        if c.kind == "vertex":
            hit = _position(path, c.t) == c.loc
            return hit if c.sign == "negative" else not hit
        u, v = c.loc
        moved = (
            c.t <= last
            and _position(path, c.t - 1) == u
            and _position(path, c.t) == v
        )
        return moved if c.sign == "negative" else not moved
    if c.sign != "positive":
        return False
    if c.kind == "vertex":
        return _position(path, c.t) == c.loc
    u, v = c.loc
    if _position(path, c.t - 1) == u or _position(path, c.t) == v:
        return True
    return _position(path, c.t - 1) == v and _position(path, c.t) == u


def _branches(conflict: Conflict, splitting: str) -> list[Constraint]:
    i, j = conflict.agents
    if conflict.kind == "vertex":
        loc_i = loc_j = conflict.loc
    else:
        u, v = conflict.loc
        loc_i, loc_j = (u, v), (v, u)
    if splitting == "classic":
        return [
            Constraint(i, conflict.kind, "negative", loc_i, conflict.t),
            Constraint(j, conflict.kind, "negative", loc_j, conflict.t),
        ]
    return [
        Constraint(i, conflict.kind, "positive", loc_i, conflict.t),
        Constraint(i, conflict.kind, "negative", loc_i, conflict.t),
    ]


def solve(instance: Instance, splitting: str = "classic") -> tuple[tuple[Path, ...], SolveStats]:
    """Optimal-makespan CBS. Deterministic: ties break on conflict count then
    generation order; conflicts resolve earliest-time first."""
    if splitting not in ("classic", "disjoint"):
        raise ValueError(f"unknown splitting {splitting!r}")
    grid = instance.map
    k = instance.k
    goal_fields = [distance_field(grid, g) for _, g in instance.agents]
    dists = []
    for i, (s, _) in enumerate(instance.agents):
        d = int(goal_fields[i][s[1], s[0]])
        if d < 0:
            raise UnsolvableError(f"agent {i} cannot reach its goal")
        dists.append(d)
    horizon = grid.n + k * max(dists)

    def plan(agent: int, constraints) -> Optional[Path]:
        return low_level_search(
            instance, agent, constraints, horizon, goal_fields[agent]
        )

    def make_node(constraints, paths, depth) -> CtNode:
        conflicts = find_conflicts(paths)
        return CtNode(
            constraints,
            paths,
            max(path_cost(p) for p in paths),
            conflicts[0] if conflicts else None,
            len(conflicts),
            depth,
        )

    root_paths = tuple(plan(i, frozenset()) for i in range(k))
    assert all(p is not None for p in root_paths)
    root = make_node(frozenset(), root_paths, 0)

    seq = 0
    open_heap = [(root.cost, root.n_conflicts, seq, root)]
    generated, expanded, max_depth = 1, 0, 0
    negative_applied = positive_applied = 0
    expansion_costs = []

    while open_heap:
        _, _, _, node = heapq.heappop(open_heap)
        expanded += 1
        expansion_costs.append(node.cost)
        if node.conflict is None:
            stats = SolveStats(
                generated,
                expanded,
                max_depth,
                negative_applied,
                positive_applied,
                node.cost,
                tuple(expansion_costs),
            )
            return node.paths, stats
        for constraint in _branches(node.conflict, splitting):
            assert constraint not in node.constraints
            child_constraints = node.constraints | {constraint}
            paths = list(node.paths)
            replan = [constraint.agent] + [
                a
                for a in range(k)
                if a != constraint.agent and _violates(paths[a], a, constraint)
            ]
            feasible = True
            for agent in replan:
                p = plan(agent, child_constraints)
                if p is None:
                    feasible = False
                    break
                paths[agent] = p
            if not feasible:
                continue
            child = make_node(child_constraints, tuple(paths), node.depth + 1)
            seq += 1
            heapq.heappush(open_heap, (child.cost, child.n_conflicts, seq, child))
            generated += 1
            max_depth = max(max_depth, child.depth)
            if constraint.sign == "negative":
                negative_applied += 1
            else:
                positive_applied += 1
    raise UnsolvableError(f"no solution within horizon {horizon}")


def validate(instance: Instance, paths) -> Optional[Violation]:
    """Earliest violation in a solution, or None if it is conflict-free."""
    if len(paths) != instance.k:
        raise ValueError("one path per agent required")
    grid = instance.map
    found: list[tuple[tuple, Violation]] = []

    for i, path in enumerate(paths):
        if not path:
            raise ValueError(f"agent {i} has an empty path")
        start, goal = instance.agents[i]
        if path[0] != start:
            found.append(((0, 0, i), Violation("start-mismatch", (i,), (path[0],), 0)))
        last = len(path) - 1
        if path[-1] != goal:
            found.append(
                ((last, 0, i), Violation("goal-mismatch", (i,), (path[-1],), last))
            )
        for t, cell in enumerate(path):
            if not grid.is_passable(cell):
                found.append(((t, 0, i), Violation("blocked-cell", (i,), (cell,), t)))
        for t in range(1, len(path)):
            a, b = path[t - 1], path[t]
            if a != b and not _adjacent(a, b):
                found.append(((t, 0, i), Violation("illegal-move", (i,), (a, b), t)))

    for conflict in find_conflicts(tuple(paths)):
        kind = "vertex-conflict" if conflict.kind == "vertex" else "edge-conflict"
        found.append(
            (
                (conflict.t, 1, conflict.agents[0]),
                Violation(kind, conflict.agents, (conflict.loc,), conflict.t),
            )
        )

    if not found:
        return None
    return min(found, key=lambda pair: pair[0])[1]


@dataclass(frozen=True)
class BoundCheckReport:
    """Measured conflict-tree size against three worst-case budgets."""

    generated: int
    log2_generated: float
    mdd_budget_log2: float
    recurrence_log2: float
    rec_gf_log2: float
    margins: dict


def empirical_bound_check(
    instance: Instance,
    stats: SolveStats,
    mdd_sizes,
    *,
    exact_cell_limit: int = DEFAULT_EXACT_CELL_LIMIT,
) -> BoundCheckReport:
    """Assert generated <= every bound; raises BoundViolationError otherwise.

    Budgets: the exact per-agent MDD node sum (exponential bound), the
    recurrence at the edge-aware constraint budgets r = sum(M_i + E_i),
    s = kC, and the generating-function bound (e n)**(kC).
    """
    c = stats.optimal_cost
    k = instance.k
    gen = stats.generated
    log2_gen = log2_of_int(gen)

    mdd_budget = float(sum(m for m, _ in mdd_sizes))
    r = sum(m + e for m, e in mdd_sizes)
    s = k * c
    if s == 0:
        rec_log2 = 0.0
        gf_log2 = 0.0
    else:
        if r * s <= exact_cell_limit:
            rec_log2 = log2_of_int(eval_exact(r, s, max_cells=exact_cell_limit))
        else:
            rec_log2 = eval_log(r, s).log2
        gf_log2 = bound_rec_genfunc(BoundInputs(n=instance.map.n, k=k, C=c)).log2

    margins = {
        "mdd_exponential": mdd_budget - log2_gen,
        "recurrence": rec_log2 - log2_gen,
        "rec_genfunc": gf_log2 - log2_gen,
    }
    bad = {name: m for name, m in margins.items() if m < -1e-9}
    if bad:
        raise BoundViolationError(
            f"conflict-tree size 2**{log2_gen:.3f} exceeds bounds {bad}"
        )
    return BoundCheckReport(gen, log2_gen, mdd_budget, rec_log2, gf_log2, margins)
