"""Experiment driver: batch runs, parameter sweeps, CSV/JSON reports.

Outputs are plain CSV tables plus a JSON manifest carrying every seed
needed for replay; plotting happens downstream.  Per-cell seeds are
derived with CRC32 so results are reproducible regardless of execution
order or interpreter hash randomization.

Files written by ``run_experiment``:

* ``details.csv``    -- one row per (variant, k, instance, query),
* ``runs.csv``       -- one row per (variant, k, instance) simulation,
* ``aggregates.csv`` -- one row per (variant, k),
* ``manifest.json``  -- configuration echo and per-cell seeds.
"""

from __future__ import annotations

import csv
import json
import statistics
import zlib
from dataclasses import asdict, dataclass, field
from pathlib import Path as FsPath

from lmapf import spacetime
from lmapf.grid import GridMap, generate_layout, load_map_file
from lmapf.lifelong import LifelongConfig, RunReport, run_lifelong

DETAIL_COLUMNS = [
    "variant", "k", "instance", "instance_seed", "query_index",
    "runtime_seconds", "status", "pt_nodes_expanded", "pt_depth_of_solution",
    "pt_max_width", "low_level_expansions", "fallback_used",
    "solver_used", "cost",
]

RUN_COLUMNS = [
    "variant", "k", "instance", "instance_seed", "queries", "success_rate",
    "tasks_completed", "throughput", "total_cost",
]

AGGREGATE_COLUMNS = [
    "variant", "k", "instances", "queries", "success_rate",
    "mean_runtime", "stddev_runtime", "mean_pt_depth", "throughput",
    "total_cost",
]


@dataclass
class ExperimentConfig:
    """Cross product of solver variants, fleet sizes, and instances."""

    map_file: str | None = None
    layout: str = "warehouse"
    layout_seed: int = 0
    rows: int | None = 15
    cols: int | None = 21
    agent_counts: tuple[int, ...] = (10, 20, 30)
    instances: int = 5
    variants: tuple[str, ...] = ("rhcr", "exrhcr")
    w: int = 10
    h: int = 5
    delta: int = 1
    width_limit: int | None = 10
    total_timesteps: int = 100
    query_deadline: float | None = 5.0
    base_seed: int = 0
    out_dir: str = "results"


def cell_seed(base_seed: int, variant: str, k: int, instance: int) -> int:
    """Stable per-cell RNG seed, independent of scheduling and hash salt."""
    tag = f"{base_seed}|{variant}|{k}|{instance}".encode()
    return zlib.crc32(tag) & 0x7FFFFFFF


def build_map(cfg: ExperimentConfig) -> GridMap:
    if cfg.map_file:
        return load_map_file(cfg.map_file)
    return generate_layout(cfg.layout, cfg.layout_seed, cfg.rows, cfg.cols)


def run_cell(cfg: ExperimentConfig, grid: GridMap, variant: str, k: int,
             instance: int, delta: int | None = None,
             width_limit: int | None = None) -> RunReport:
    run_cfg = LifelongConfig(
        w=cfg.w,
        h=cfg.h,
        delta=cfg.delta if delta is None else delta,
        width_limit=cfg.width_limit if width_limit is None else width_limit,
        k=k,
        total_timesteps=cfg.total_timesteps,
        query_deadline=cfg.query_deadline,
        seed=cell_seed(cfg.base_seed, variant, k, instance),
        solver=variant,
    )
    return run_lifelong(run_cfg, grid)


def detail_rows(report: RunReport, variant: str, k: int, instance: int) -> list[dict]:
    seed = report.config.seed
    rows = []
    for rec in report.records:
        rows.append({
            "variant": variant, "k": k, "instance": instance,
            "instance_seed": seed, "query_index": rec.index,
            "runtime_seconds": rec.runtime, "status": rec.status,
            "pt_nodes_expanded": rec.pt_nodes_expanded,
            "pt_depth_of_solution": rec.pt_depth_of_solution,
            "pt_max_width": rec.pt_max_width,
            "low_level_expansions": rec.low_level_expansions,
            "fallback_used": rec.fallback_used,
            "solver_used": rec.solver_used,
            "cost": "" if rec.cost is None else rec.cost,
        })
    return rows


def run_row(report: RunReport, variant: str, k: int, instance: int) -> dict:
    return {
        "variant": variant, "k": k, "instance": instance,
        "instance_seed": report.config.seed,
        "queries": len(report.records),
        "success_rate": report.success_rate,
        "tasks_completed": report.tasks_completed,
        "throughput": report.throughput,
        "total_cost": report.total_cost,
    }


def aggregate_rows(details: list[dict], runs: list[dict]) -> list[dict]:
    """Per-(variant, k) summaries, recomputable from the two row tables."""
    cells: dict[tuple[str, int], dict] = {}
    for row in details:
        cells.setdefault((row["variant"], row["k"]), {"detail": [], "runs": []})
        cells[(row["variant"], row["k"])]["detail"].append(row)
    for row in runs:
        cells[(row["variant"], row["k"])]["runs"].append(row)

    out = []
    for (variant, k) in sorted(cells):
        det = cells[(variant, k)]["detail"]
        rns = cells[(variant, k)]["runs"]
        runtimes = [r["runtime_seconds"] for r in det]
        out.append({
            "variant": variant, "k": k,
            "instances": len(rns),
            "queries": len(det),
            "success_rate": sum(r["status"] == "solved" for r in det) / len(det),
            "mean_runtime": statistics.fmean(runtimes),
            "stddev_runtime": statistics.pstdev(runtimes),
            "mean_pt_depth": statistics.fmean(r["pt_depth_of_solution"] for r in det),
            "throughput": statistics.fmean(r["throughput"] for r in rns),
            "total_cost": sum(r["total_cost"] for r in rns),
        })
    return out


def write_csv(path, columns: list[str], rows: list[dict]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=columns)
        writer.writeheader()
        writer.writerows(rows)


def run_experiment(cfg: ExperimentConfig) -> dict:
    """Execute the full cross product and write the report files.

    Returns {"details": [...], "runs": [...], "aggregates": [...],
    "paths": {...}} with the written row dicts.
    """
    grid = build_map(cfg)
    details: list[dict] = []
    runs: list[dict] = []
    seeds: dict[str, int] = {}
    for variant in cfg.variants:
        for k in cfg.agent_counts:
            for instance in range(cfg.instances):
                report = run_cell(cfg, grid, variant, k, instance)
                details.extend(detail_rows(report, variant, k, instance))
                runs.append(run_row(report, variant, k, instance))
                seeds[f"{variant}|{k}|{instance}"] = report.config.seed
    aggregates = aggregate_rows(details, runs)

    out = FsPath(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "details": out / "details.csv",
        "runs": out / "runs.csv",
        "aggregates": out / "aggregates.csv",
        "manifest": out / "manifest.json",
    }
    write_csv(paths["details"], DETAIL_COLUMNS, details)
    write_csv(paths["runs"], RUN_COLUMNS, runs)
    write_csv(paths["aggregates"], AGGREGATE_COLUMNS, aggregates)
    manifest = {
        "config": asdict(cfg),
        "cell_seeds": seeds,
        "backend": spacetime.BACKEND,
    }
    with open(paths["manifest"], "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
    return {"details": details, "runs": runs, "aggregates": aggregates,
            "paths": paths}


# -- parameter sweeps --------------------------------------------------------

SWEEP_DELTA_COLUMNS = [
    "delta", "instances", "queries", "success_rate", "mean_pt_depth",
    "mean_pt_expansions", "mean_runtime",
]


def sweep_delta(cfg: ExperimentConfig, deltas: list[int],
                k: int | None = None) -> list[dict]:
    """Mean PT depth (and friends) of the seeded schedule per lookahead."""
    grid = build_map(cfg)
    k = k if k is not None else cfg.agent_counts[0]
    rows = []
    for delta in deltas:
        det: list = []
        for instance in range(cfg.instances):
            report = run_cell(cfg, grid, "exrhcr", k, instance, delta=delta)
            det.extend(report.records)
        rows.append({
            "delta": delta,
            "instances": cfg.instances,
            "queries": len(det),
            "success_rate": sum(r.status == "solved" for r in det) / len(det),
            "mean_pt_depth": statistics.fmean(r.pt_depth_of_solution for r in det),
            "mean_pt_expansions": statistics.fmean(r.pt_nodes_expanded for r in det),
            "mean_runtime": statistics.fmean(r.runtime for r in det),
        })
    return rows


SWEEP_WIDTH_ATTRIBUTES = [
    "mean_runtime", "mean_pt_width", "mean_low_level_expansions",
    "mean_pt_expansions", "mean_pt_depth",
]

SWEEP_WIDTH_COLUMNS = (
    ["width_limit", "instances", "queries", "fallback_rate"]
    + SWEEP_WIDTH_ATTRIBUTES
    + [a + "_norm" for a in SWEEP_WIDTH_ATTRIBUTES]
)


def sweep_width(cfg: ExperimentConfig, widths: list[int],
                k: int | None = None) -> list[dict]:
    """Radar-table report: five attributes per width limit, max-normalized."""
    grid = build_map(cfg)
    k = k if k is not None else cfg.agent_counts[0]
    rows = []
    for width in widths:
        det: list = []
        for instance in range(cfg.instances):
            report = run_cell(cfg, grid, "exrhcr", k, instance,
                              width_limit=width)
            det.extend(report.records)
        rows.append({
            "width_limit": width,
            "instances": cfg.instances,
            "queries": len(det),
            "fallback_rate": sum(r.fallback_used for r in det) / len(det),
            "mean_runtime": statistics.fmean(r.runtime for r in det),
            "mean_pt_width": statistics.fmean(r.pt_max_width for r in det),
            "mean_low_level_expansions":
                statistics.fmean(r.low_level_expansions for r in det),
            "mean_pt_expansions": statistics.fmean(r.pt_nodes_expanded for r in det),
            "mean_pt_depth": statistics.fmean(r.pt_depth_of_solution for r in det),
        })
    for attr in SWEEP_WIDTH_ATTRIBUTES:
        peak = max(row[attr] for row in rows)
        for row in rows:
            row[attr + "_norm"] = row[attr] / peak if peak > 0 else 0.0
    return rows


def write_sweep(path, columns: list[str], rows: list[dict]) -> None:
    FsPath(path).parent.mkdir(parents=True, exist_ok=True)
    write_csv(path, columns, rows)
