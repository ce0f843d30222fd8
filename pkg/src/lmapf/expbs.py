"""Experience-seeded solving: width-limited seeded search with PBS fallback.

``expbs_solve`` warm-starts the priority tree at a seed priority set
taken from an earlier query and explores it with width-limited DFS; if
the seed proves uninformative (width limit hit, infeasible root, or
exhausted tree) it restarts as vanilla PBS inside the same deadline.
``prioritized_solve`` is the lightweight total-priority variant: plan
agents one by one in a fixed order and fall back to PBS on failure.
"""

from __future__ import annotations

import time

from lmapf.pbs import (
    InfeasibleSeed,
    SolveResult,
    SolveStats,
    WMAPFQuery,
    pbs_solve,
)
from lmapf.priorities import PrioritySet, TotalPriority, to_total
from lmapf.spacetime import Path, build_reservations, plan_path


def expbs_solve(
    query: WMAPFQuery,
    seed: PrioritySet,
    w: int | None = None,
    width_limit: int | None = 10,
    deadline: float | None = None,
) -> SolveResult:
    """Seeded PBS under width-limited DFS, restarting empty on divergence.

    The fallback shares the remaining deadline; its stats are merged with
    the seeded phase's (node counts and low-level work sum, tree depths
    sum, width is the max across phases).  ``width_limit=None`` disables
    the limit.  With an empty seed the fallback is skipped: it would
    repeat the identical search, so the result already equals vanilla
    ``pbs_solve``.
    """
    t0 = time.monotonic()
    phase1: SolveStats
    try:
        first = pbs_solve(query, w, root_seed=seed, deadline=deadline,
                          width_limit=width_limit)
        if first.status in ("solved", "timeout") or not len(seed):
            return first
        phase1 = first.stats
    except InfeasibleSeed as exc:
        phase1 = exc.stats

    remaining = None if deadline is None else deadline - (time.monotonic() - t0)
    if remaining is not None and remaining <= 0:
        phase1.fallback_used = True
        phase1.runtime = time.monotonic() - t0
        return SolveResult("timeout", None, None, phase1)

    second = pbs_solve(query, w, root_seed=None, deadline=remaining)
    stats = _merge_stats(phase1, second.stats)
    stats.runtime = time.monotonic() - t0
    return SolveResult(second.status, second.paths, second.seed, stats)


def _merge_stats(a: SolveStats, b: SolveStats) -> SolveStats:
    return SolveStats(
        pt_nodes_expanded=a.pt_nodes_expanded + b.pt_nodes_expanded,
        pt_nodes_generated=a.pt_nodes_generated + b.pt_nodes_generated,
        pt_depth_of_solution=a.pt_depth_of_solution + b.pt_depth_of_solution,
        pt_max_width=max(a.pt_max_width, b.pt_max_width),
        low_level_expansions=a.low_level_expansions + b.low_level_expansions,
        runtime=a.runtime + b.runtime,
        fallback_used=True,
        width_exceeded=a.width_exceeded,
    )


def prioritized_solve(
    query: WMAPFQuery,
    order: TotalPriority,
    w: int | None = None,
    deadline: float | None = None,
) -> SolveResult:
    """Classic prioritized planning along a total order, PBS on failure.

    Each agent plans against the reservations of everyone before it, so a
    completed pass is conflict-free within the window by construction.
    The attempt counts as a single PT node; there is no tree exploration
    unless the fallback fires.
    """
    w = query.w if w is None else w
    if sorted(order) != query.agent_ids():
        raise ValueError("total priority must cover exactly the query agents")
    t0 = time.monotonic()
    cutoff = None if deadline is None else t0 + deadline

    stats = SolveStats(pt_nodes_expanded=1, pt_nodes_generated=1, pt_max_width=1)
    paths: dict[int, Path] = {}
    planned: list[Path] = []
    failed = False
    for agent in order:
        if cutoff is not None and time.monotonic() > cutoff:
            stats.runtime = time.monotonic() - t0
            return SolveResult("timeout", None, None, stats)
        start, goal = query.agents[agent]
        reservations = build_reservations(planned, w)
        path, expanded = plan_path(query.grid, start, goal, reservations, w,
                                   agent=agent)
        stats.low_level_expansions += expanded
        if path is None:
            failed = True
            break
        paths[agent] = path
        planned.append(path)

    if not failed:
        stats.runtime = time.monotonic() - t0
        seed = PrioritySet(frozenset(zip(order, list(order)[1:])))
        return SolveResult("solved", paths, seed, stats)

    remaining = None if deadline is None else deadline - (time.monotonic() - t0)
    if remaining is not None and remaining <= 0:
        stats.fallback_used = True
        stats.runtime = time.monotonic() - t0
        return SolveResult("timeout", None, None, stats)
    second = pbs_solve(query, w, root_seed=None, deadline=remaining)
    merged = _merge_stats(stats, second.stats)
    merged.runtime = time.monotonic() - t0
    return SolveResult(second.status, second.paths, second.seed, merged)


__all__ = [
    "expbs_solve",
    "prioritized_solve",
    "to_total",
    "TotalPriority",
]
