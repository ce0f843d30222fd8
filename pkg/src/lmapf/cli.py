"""Command-line entry points for solving, simulating, and sweeping.

Subcommands: ``solve`` (one windowed query from files), ``lifelong``
(one simulation), ``experiment`` (batch cross product), ``sweep-delta``,
``sweep-width``, and ``gen-map``.
"""

from __future__ import annotations

import argparse
import json
import sys

from lmapf import harness, spacetime
from lmapf.expbs import expbs_solve, prioritized_solve
from lmapf.grid import generate_layout, load_map_file
from lmapf.lifelong import LifelongConfig, run_lifelong
from lmapf.pbs import WMAPFQuery, pbs_solve
from lmapf.priorities import PrioritySet, to_total


def load_scenario(path) -> tuple[list, list]:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    starts = [tuple(c) for c in data["starts"]]
    goals = [tuple(c) for c in data["goals"]]
    return starts, goals


def _add_map_args(p):
    p.add_argument("--map", help="map file path")
    p.add_argument("--layout", choices=["warehouse", "sorting"],
                   help="generate a layout instead of loading a file")
    p.add_argument("--rows", type=int, help="layout rows override")
    p.add_argument("--cols", type=int, help="layout cols override")
    p.add_argument("--seed", type=int, default=0, help="rng seed")


def _resolve_map(args):
    if args.map:
        return load_map_file(args.map)
    if args.layout:
        return generate_layout(args.layout, args.seed, args.rows, args.cols)
    sys.exit("error: provide --map or --layout")


def _add_solver_args(p):
    p.add_argument("--window", type=int, default=10, help="window size w")
    p.add_argument("--replan", type=int, default=5, help="replanning rate h")
    p.add_argument("--delta", type=int, default=1, help="experience lookahead")
    p.add_argument("--width-limit", type=int, default=10,
                   help="seeded-tree width limit (0 = unlimited)")
    p.add_argument("--timeout-secs", type=float, default=5.0,
                   help="per-query deadline (0 = none)")
    p.add_argument("--solver", choices=["rhcr", "exrhcr", "exrhcr-tot"],
                   default="rhcr")


def _limit(args):
    return None if args.width_limit == 0 else args.width_limit


def _deadline(args):
    return None if args.timeout_secs == 0 else args.timeout_secs


def cmd_solve(args):
    grid = _resolve_map(args)
    starts, goals = load_scenario(args.scenario)
    query = WMAPFQuery(grid, tuple(zip(starts, goals)), args.window)
    if args.solver == "rhcr":
        result = pbs_solve(query, deadline=_deadline(args))
    elif args.solver == "exrhcr":
        result = expbs_solve(query, PrioritySet(), width_limit=_limit(args),
                             deadline=_deadline(args))
    else:
        order = to_total(PrioritySet(), query.agent_ids())
        result = prioritized_solve(query, order, deadline=_deadline(args))

    payload = {
        "status": result.status,
        "cost": result.cost,
        "seed": sorted(result.seed.pairs) if result.seed is not None else None,
        "stats": vars(result.stats),
        "paths": {str(a): list(map(list, p.cells))
                  for a, p in (result.paths or {}).items()},
    }
    _emit(payload, args.out)
    return 0 if result.solved else 1


def cmd_lifelong(args):
    grid = _resolve_map(args)
    scenario = load_scenario(args.scenario) if args.scenario else None
    config = LifelongConfig(
        w=args.window, h=args.replan, delta=args.delta,
        width_limit=_limit(args), k=args.agents,
        total_timesteps=args.timesteps, query_deadline=_deadline(args),
        seed=args.seed, solver=args.solver,
    )
    report = run_lifelong(config, grid, scenario=scenario)
    if args.out:
        rows = harness.detail_rows(report, args.solver, config.k, 0)
        harness.write_csv(args.out, harness.DETAIL_COLUMNS, rows)
    summary = {
        "queries": len(report.records),
        "success_rate": report.success_rate,
        "tasks_completed": report.tasks_completed,
        "throughput": report.throughput,
        "total_cost": report.total_cost,
    }
    print(json.dumps(summary, indent=2))
    return 0


def _experiment_config(args) -> harness.ExperimentConfig:
    return harness.ExperimentConfig(
        map_file=args.map,
        layout=args.layout or "warehouse",
        layout_seed=args.seed,
        rows=args.rows, cols=args.cols,
        agent_counts=tuple(int(x) for x in args.agents.split(",")),
        instances=args.instances,
        variants=tuple(args.variants.split(",")),
        w=args.window, h=args.replan, delta=args.delta,
        width_limit=_limit(args),
        total_timesteps=args.timesteps,
        query_deadline=_deadline(args),
        base_seed=args.seed,
        out_dir=args.out,
    )


def cmd_experiment(args):
    result = harness.run_experiment(_experiment_config(args))
    print(f"wrote {len(result['details'])} detail rows, "
          f"{len(result['aggregates'])} aggregate rows to {args.out}")
    return 0


def cmd_sweep_delta(args):
    cfg = _experiment_config(args)
    deltas = [int(x) for x in args.deltas.split(",")]
    rows = harness.sweep_delta(cfg, deltas)
    harness.write_sweep(f"{args.out}/sweep_delta.csv",
                        harness.SWEEP_DELTA_COLUMNS, rows)
    print(f"wrote {len(rows)} rows to {args.out}/sweep_delta.csv")
    return 0


def cmd_sweep_width(args):
    cfg = _experiment_config(args)
    widths = [int(x) for x in args.widths.split(",")]
    rows = harness.sweep_width(cfg, widths)
    harness.write_sweep(f"{args.out}/sweep_width.csv",
                        harness.SWEEP_WIDTH_COLUMNS, rows)
    print(f"wrote {len(rows)} rows to {args.out}/sweep_width.csv")
    return 0


def cmd_gen_map(args):
    grid = generate_layout(args.layout, args.seed, args.rows, args.cols)
    text = grid.serialize()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        frac = len(grid.blocked) / (grid.rows * grid.cols)
        print(f"wrote {grid.rows}x{grid.cols} map ({frac:.1%} blocked) to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def _emit(payload, out):
    text = json.dumps(payload, indent=2)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lmapf",
        description="Lifelong multi-agent path finding with experience reuse "
                    f"(search backend: {spacetime.BACKEND})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one windowed query")
    _add_map_args(p)
    _add_solver_args(p)
    p.add_argument("--scenario", required=True, help="JSON with starts/goals")
    p.add_argument("--out", help="write result JSON here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("lifelong", help="run one lifelong simulation")
    _add_map_args(p)
    _add_solver_args(p)
    p.add_argument("--agents", type=int, default=10, help="fleet size k")
    p.add_argument("--timesteps", type=int, default=100)
    p.add_argument("--scenario", help="optional JSON fixing the first query")
    p.add_argument("--out", help="write per-query CSV here")
    p.set_defaults(func=cmd_lifelong)

    for name, func, extra in (
        ("experiment", cmd_experiment, None),
        ("sweep-delta", cmd_sweep_delta, ("--deltas", "0,1,2,3")),
        ("sweep-width", cmd_sweep_width, ("--widths", "2,5,10,20,50,1000")),
    ):
        p = sub.add_parser(name, help=f"run the {name} batch")
        _add_map_args(p)
        _add_solver_args(p)
        p.add_argument("--agents", default="10,20,30",
                       help="comma-separated fleet sizes")
        p.add_argument("--instances", type=int, default=5)
        p.add_argument("--variants", default="rhcr,exrhcr",
                       help="comma-separated solver variants")
        p.add_argument("--timesteps", type=int, default=100)
        p.add_argument("--out", default="results")
        if extra:
            p.add_argument(extra[0], default=extra[1])
        p.set_defaults(func=func)

    p = sub.add_parser("gen-map", help="generate a benchmark-style map")
    p.add_argument("--layout", choices=["warehouse", "sorting"], required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rows", type=int)
    p.add_argument("--cols", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen_map)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
