"""Command-line interface.

Subcommands: ``mdd`` (per-layer sizes), ``recurrence`` (exact or log2
evaluation), ``genfunc`` (critical points, contributions, series dump),
``bounds`` (one comparison report), ``table`` (CSV report for benchmark rows),
``plot`` (bound curves versus the recurrence), ``solve`` (reference solver
with the empirical bound check). All output is deterministic; log2 values are
printed with six decimals. Exit codes: 0 success, 1 domain error, 2 usage.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import warnings

from . import bounds as bounds_mod
from . import genfunc, mdd, recurrence
from .cbs import (
    BoundViolationError,
    UnsolvableError,
    empirical_bound_check,
    solve,
    validate,
)
from .model import Cell, ParseError, parse_map, parse_scen

SCHEMA_VERSION = 1


def _fmt(value: float) -> str:
    return f"{value:.6f}"


def _parse_cell(text: str) -> Cell:
    try:
        x, y = text.split(",")
        return int(x), int(y)
    except ValueError:
        raise ValueError(f"expected a cell as 'x,y', got {text!r}") from None


def cmd_mdd(args) -> int:
    with open(args.map, encoding="utf-8") as fh:
        grid = parse_map(fh.read())
    diagram = mdd.build_mdd(grid, _parse_cell(args.start), _parse_cell(args.goal), args.c)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["t", "exact", "eq1_bound"])
    for t, layer in enumerate(diagram.layers):
        writer.writerow([t, len(layer), mdd.layer_bound(min(t, args.c - t))])
    return 0


def cmd_recurrence(args) -> int:
    if args.backend == "exact":
        print(recurrence.eval_exact(args.r, args.s, max_cells=args.exact_ceiling))
    else:
        print(_fmt(recurrence.eval_log(args.r, args.s).log2))
    return 0


def cmd_genfunc(args) -> int:
    if args.series is not None:
        r_max, s_max = args.series
        series = genfunc.expand_series(r_max, s_max)
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["r", "s", "coefficient"])
        for r in range(r_max + 1):
            for s in range(s_max + 1):
                writer.writerow([r, s, series.coeff(r, s)])
        return 0
    if args.linear is not None:
        if args.s is None:
            raise ValueError("--linear requires --s")
        print(_fmt(genfunc.approx_linear(args.linear, args.s).log2))
        return 0
    if args.r is None or args.s is None:
        raise ValueError("genfunc needs --r and --s, or --linear N --s S, or --series R S")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        points = genfunc.solve_critical_points(args.r, args.s)
    for note in caught:
        print(f"note: {note.message}", file=sys.stderr)
    for point in points:
        if point.kind == "multiple":
            value = genfunc.contribution_multiple(point, args.r, args.s)
        else:
            value = genfunc.contribution_single(point, args.r, args.s)
        print(
            f"{point.label} {point.kind} x={_fmt(point.x)} y={_fmt(point.y)} "
            f"log2={_fmt(value.value.log2)}"
        )
    return 0


def _bound_inputs(args) -> bounds_mod.BoundInputs:
    return bounds_mod.BoundInputs(
        n=args.n,
        k=args.k,
        C=args.c,
        M=args.m,
        edge_mode=args.edges,
        objective=args.objective,
    )


def cmd_bounds(args) -> int:
    report = bounds_mod.compare(_bound_inputs(args))
    if args.json:
        payload = {"schema": SCHEMA_VERSION}
        payload.update(report.as_dict())
        print(json.dumps(payload))
        return 0
    d = report.as_dict()
    print(f"n: {d['n']}  k: {d['k']}  C: {d['C']}  M: {d['M']}")
    print(f"edge_mode: {d['edge_mode']}  objective: {d['objective']}")
    for key in ("org_log2", "rec_ind_log2", "rec_gf_log2", "mdd_cube_log2", "ratio_log2"):
        print(f"{key}: {_fmt(d[key])}")
    for key in ("org_exp10", "rec_ind_exp10", "rec_gf_exp10"):
        print(f"{key}: {d[key]}")
    print("note: high-level conflict-tree bounds only; multiply by the")
    print("note: single-agent low-level search cost for a full running time.")
    return 0


def cmd_table(args) -> int:
    if args.input == "-":
        rows = list(csv.DictReader(sys.stdin))
    else:
        with open(args.input, encoding="utf-8", newline="") as fh:
            rows = list(csv.DictReader(fh))
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(
        [
            "name", "n", "k", "C",
            "org_log2", "rec_ind_log2", "rec_gf_log2", "ratio_log2",
            "org_exp10", "rec_ind_exp10", "rec_gf_exp10",
        ]
    )
    for row in rows:
        n, k, c = int(row["n"]), int(row["k"]), int(row["C"])
        report = bounds_mod.compare(bounds_mod.BoundInputs(n=n, k=k, C=c))
        writer.writerow(
            [
                row["name"], n, k, c,
                _fmt(report.org.log2),
                _fmt(report.rec_ind.log2),
                _fmt(report.rec_gf.log2),
                _fmt(report.ratio_org_over_gf.log2),
                report.org_exp10,
                report.rec_ind_exp10,
                report.rec_gf_exp10,
            ]
        )
    return 0


def _plot_s(mode: str, n: int) -> int:
    import math

    if mode == "log":
        return max(1, math.ceil(math.log2(n)))
    if mode == "sqrt":
        return math.ceil(math.sqrt(n))
    return n


def cmd_plot(args) -> int:
    if args.n_min < 4 or args.n_max < args.n_min:
        raise ValueError("requires 4 <= n-min <= n-max")
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(
        [
            "n", "s", "org_log2", "rec_ind_log2", "rec_gf_log2",
            "recurrence_log2", "recurrence_backend",
        ]
    )
    for n in range(args.n_min, args.n_max + 1):
        s = _plot_s(args.mode, n)
        inputs = bounds_mod.BoundInputs(n=n, k=1, C=s)
        org = bounds_mod.bound_original(inputs)
        rec_ind = bounds_mod.bound_rec_induction(inputs)
        rec_gf = bounds_mod.bound_rec_genfunc(inputs)
        r = n * s
        if r * s <= args.exact_ceiling:
            backend = "exact"
            value = recurrence.eval_exact(r, s, max_cells=args.exact_ceiling)
            rec_log2 = recurrence.Log2Value.from_int(value).log2
        else:
            backend = "log"
            rec_log2 = recurrence.eval_log(r, s).log2
        writer.writerow(
            [
                n, s,
                _fmt(org.log2), _fmt(rec_ind.log2), _fmt(rec_gf.log2),
                _fmt(rec_log2), backend,
            ]
        )
    return 0


def cmd_solve(args) -> int:
    with open(args.map, encoding="utf-8") as fh:
        grid = parse_map(fh.read())
    with open(args.scen, encoding="utf-8") as fh:
        instance = parse_scen(fh.read(), args.agents, grid)
    paths, stats = solve(instance, "disjoint" if args.disjoint else "classic")
    violation = validate(instance, paths)
    assert violation is None, f"solver produced an invalid solution: {violation}"
    sizes = []
    for start, goal in instance.agents:
        diagram = mdd.build_mdd(grid, start, goal, stats.optimal_cost)
        sizes.append(mdd.mdd_size(diagram))
    report = empirical_bound_check(instance, stats, sizes)

    if args.json:
        payload = {
            "schema": SCHEMA_VERSION,
            "cost": stats.optimal_cost,
            "generated": stats.generated,
            "expanded": stats.expanded,
            "max_depth": stats.max_depth,
            "negative_applied": stats.negative_applied,
            "positive_applied": stats.positive_applied,
            "paths": [[list(cell) for cell in path] for path in paths],
            "bound_margins_log2": {
                name: round(margin, 6) for name, margin in report.margins.items()
            },
        }
        print(json.dumps(payload))
        return 0
    print(f"cost: {stats.optimal_cost}")
    print(
        f"generated: {stats.generated}  expanded: {stats.expanded}  "
        f"max_depth: {stats.max_depth}"
    )
    print(
        f"negative_applied: {stats.negative_applied}  "
        f"positive_applied: {stats.positive_applied}"
    )
    for i, path in enumerate(paths):
        steps = "->".join(f"({x},{y})" for x, y in path)
        print(f"agent {i}: {steps}")
    for name, margin in report.margins.items():
        print(f"margin[{name}]: {_fmt(margin)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cbsbounds",
        description="Worst-case CBS bound calculators and a reference solver.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mdd", help="per-layer MDD sizes as CSV")
    p.add_argument("--map", required=True)
    p.add_argument("--start", required=True, help="cell as x,y")
    p.add_argument("--goal", required=True, help="cell as x,y")
    p.add_argument("--c", type=int, required=True)
    p.set_defaults(func=cmd_mdd)

    p = sub.add_parser("recurrence", help="evaluate the budget recurrence")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--backend", choices=("exact", "log"), default="exact")
    p.add_argument(
        "--exact-ceiling", type=int, default=recurrence.DEFAULT_EXACT_CELL_LIMIT
    )
    p.set_defaults(func=cmd_recurrence)

    p = sub.add_parser("genfunc", help="critical points and contributions")
    p.add_argument("--r", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--linear", type=int, metavar="N")
    p.add_argument("--series", type=int, nargs=2, metavar=("R", "S"))
    p.set_defaults(func=cmd_genfunc)

    p = sub.add_parser("bounds", help="one bound comparison report")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--edges", choices=bounds_mod.EDGE_MODES, default="none")
    p.add_argument("--objective", choices=bounds_mod.OBJECTIVES, default="makespan")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("table", help="benchmark-table CSV from name,n,k,C rows")
    p.add_argument("--input", default="-", help="CSV path or - for stdin")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("plot", help="bound curves versus the recurrence, CSV")
    p.add_argument("--mode", choices=("log", "sqrt", "linear"), required=True)
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument(
        "--exact-ceiling", type=int, default=recurrence.DEFAULT_EXACT_CELL_LIMIT
    )
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("solve", help="run the reference solver on a scenario")
    p.add_argument("--map", required=True)
    p.add_argument("--scen", required=True)
    p.add_argument("--agents", type=int, required=True)
    p.add_argument("--disjoint", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UnsolvableError, BoundViolationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
