"""Priority-Based Search over a binary priority tree.

The high level walks a depth-first tree whose nodes carry a priority set
and one path per agent.  Expanding a node means replanning the agents
its newest priority constrains; the chronologically first conflict in
the resulting plan splits the node into the two orientations of the
conflicting pair.  The search stops at the first node whose plan is
conflict-free within the window.

Determinism contract (the "documented tie-breaking"):

* conflicts are scanned in (t, agent pair) order and the first one
  splits the node;
* of the two children, the one giving the *smaller* agent id precedence
  (adding pair (min, max)) is explored first, unconditionally;
* the low level breaks ties deepest-state-first, then by the fixed
  (up, right, down, left, wait) move order.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace

from lmapf.grid import Cell, GridMap
from lmapf.priorities import PrioritySet, to_total
from lmapf.spacetime import Path, build_reservations, plan_path


class NodeInfeasible(Exception):
    """A replanned agent has no conflict-free windowed path in this node."""


class InfeasibleSeed(Exception):
    """The root's seed priorities admit no feasible plan (fallback trigger)."""

    def __init__(self, message: str, stats: "SolveStats"):
        super().__init__(message)
        self.stats = stats


class NotSolved(ValueError):
    """Seed extraction requested from an unsolved result."""


class WidthExceeded(Exception):
    """Internal signal: the width-limited tree grew past its limit."""


@dataclass(frozen=True)
class WMAPFQuery:
    """One windowed MAPF instance: starts, goals, and the window w."""

    grid: GridMap
    agents: tuple[tuple[Cell, Cell], ...]
    w: int

    def __post_init__(self):
        object.__setattr__(self, "agents", tuple((tuple(s), tuple(g))
                                                 for (s, g) in self.agents))
        if len(self.agents) < 1:
            raise ValueError("query needs at least one agent")
        if self.w < 1:
            raise ValueError("window must be >= 1")
        starts = [s for (s, _) in self.agents]
        if len(set(starts)) != len(starts):
            raise ValueError("agent starts must be pairwise distinct")
        for (s, g) in self.agents:
            if not self.grid.is_free(s):
                raise ValueError(f"start {s} is blocked or out of bounds")
            if not self.grid.is_free(g):
                raise ValueError(f"goal {g} is blocked or out of bounds")

    @property
    def k(self) -> int:
        return len(self.agents)

    def agent_ids(self) -> list[int]:
        return list(range(len(self.agents)))


@dataclass(frozen=True)
class Conflict:
    """A vertex or edge collision between two agents inside the window."""

    kind: str                     # "vertex" | "edge"
    agents: tuple[int, int]       # (i, j) with i < j
    t: int
    cells: tuple[Cell, ...]       # one cell (vertex) or (cell_i, cell_j) swap (edge)


@dataclass
class SolveStats:
    # Expanded = popped and evaluated, including the root, the solution
    # node, and nodes pruned as infeasible.  Generated = created.
    pt_nodes_expanded: int = 0
    pt_nodes_generated: int = 0
    # Depth of the solution node below its root when solved; otherwise the
    # deepest level that received nodes.  Fallback runs report the sum
    # across both phases.
    pt_depth_of_solution: int = 0
    pt_max_width: int = 0
    low_level_expansions: int = 0
    runtime: float = 0.0
    fallback_used: bool = False
    width_exceeded: bool = False


@dataclass(frozen=True)
class SolveResult:
    status: str                        # "solved" | "failed" | "timeout"
    paths: dict[int, Path] | None
    seed: PrioritySet | None
    stats: SolveStats

    @property
    def solved(self) -> bool:
        return self.status == "solved"

    @property
    def cost(self) -> int | None:
        if self.paths is None:
            return None
        return sum(p.cost for p in self.paths.values())


@dataclass
class PTNode:
    """Priority-tree node: a priority set plus the current per-agent plan."""

    priorities: PrioritySet
    paths: dict[int, Path]
    depth: int
    parent: "PTNode | None" = None
    cost: int = 0
    low_level_expansions: int = 0

    def recompute_cost(self):
        self.cost = sum(p.cost for p in self.paths.values())


def detect_conflicts(paths: list[Path], w: int) -> list[Conflict]:
    """All vertex and edge conflicts at timesteps <= w, chronological.

    Paths are extended past their ends by parking; edge conflicts at t
    involve positions at t and t+1 so they exist only for t < w.  Sorted
    by (t, agent pair).
    """
    if w < 1:
        raise ValueError("window must be >= 1")
    out: list[Conflict] = []
    for a in range(len(paths)):
        for b in range(a + 1, len(paths)):
            pa, pb = paths[a], paths[b]
            i, j = pa.agent, pb.agent
            if i > j:
                pa, pb = pb, pa
                i, j = j, i
            for t in range(w + 1):
                ca, cb = pa.at(t), pb.at(t)
                if ca == cb:
                    out.append(Conflict("vertex", (i, j), t, (ca,)))
                elif t < w and ca == pb.at(t + 1) and pa.at(t + 1) == cb \
                        and ca != pa.at(t + 1):
                    out.append(Conflict("edge", (i, j), t, (ca, cb)))
    out.sort(key=lambda c: (c.t, c.agents))
    return out


def evaluate_node(query: WMAPFQuery, node: PTNode, changed: int | None) -> None:
    """Replan ``changed`` and every agent below it, in topological order.

    ``changed is None`` replans every agent (root evaluation).  Each
    replanned agent plans against the reservation table of all its
    transitive higher-priority agents' current paths; everything else is
    untouched.  Raises NodeInfeasible when some replanned agent has no
    path; updates paths, cost, and the node's low-level expansion count
    in place otherwise.
    """
    ids = query.agent_ids()
    full_order = list(to_total(node.priorities, ids))
    if changed is None:
        replan = full_order
    else:
        targets = {changed} | node.priorities.descendants(changed)
        replan = [a for a in full_order if a in targets]

    for agent in replan:
        above = node.priorities.ancestors(agent)
        reservations = build_reservations(
            [node.paths[h] for h in sorted(above)], query.w)
        start, goal = query.agents[agent]
        path, expanded = plan_path(query.grid, start, goal, reservations,
                                   query.w, agent=agent)
        node.low_level_expansions += expanded
        if path is None:
            raise NodeInfeasible(
                f"agent {agent} has no path under {sorted(node.priorities.pairs)}")
        node.paths[agent] = path
    node.recompute_cost()


class WidthTracker:
    """Per-level generated-node counters for width-limited DFS."""

    def __init__(self, limit: int | None):
        if limit is not None and limit <= 1:
            raise ValueError("width limit must be greater than 1")
        self.limit = limit
        self.counts: dict[int, int] = {}

    def add(self, level: int) -> None:
        n = self.counts.get(level, 0) + 1
        if self.limit is not None and n > self.limit:
            raise WidthExceeded(
                f"level {level} would hold {n} nodes (limit {self.limit})")
        self.counts[level] = n

    @property
    def max_width(self) -> int:
        return max(self.counts.values(), default=0)

    @property
    def deepest_level(self) -> int:
        return max(self.counts.keys(), default=0)


def pbs_solve(
    query: WMAPFQuery,
    w: int | None = None,
    root_seed: PrioritySet | None = None,
    deadline: float | None = None,
    width_limit: int | None = None,
) -> SolveResult:
    """Depth-first search of the priority tree rooted at ``root_seed``.

    Terminates at the first node without conflicts at t <= w (solved,
    seed = that node's priorities), on tree exhaustion or width-limit
    violation (failed), or when the deadline elapses (timeout; checked
    at every node expansion).  Raises InfeasibleSeed when a non-empty
    root seed admits no plan.  Fully deterministic for deadline=None.
    """
    w = query.w if w is None else w
    if w != query.w:
        query = replace(query, w=w)
    seed = root_seed if root_seed is not None else PrioritySet()
    t0 = time.monotonic()
    cutoff = None if deadline is None else t0 + deadline
    stats = SolveStats()
    tracker = WidthTracker(width_limit)

    root = PTNode(priorities=seed, paths={}, depth=0)
    try:
        evaluate_node(query, root, changed=None)
    except NodeInfeasible as exc:
        stats.low_level_expansions += root.low_level_expansions
        stats.runtime = time.monotonic() - t0
        if len(seed):
            raise InfeasibleSeed(str(exc), stats) from exc
        return SolveResult("failed", None, None, stats)
    tracker.add(0)
    stats.pt_nodes_generated += 1

    stack: list[tuple[PTNode, int | None]] = [(root, None)]

    def finish(status, paths=None, node_seed=None, depth=0):
        stats.pt_depth_of_solution = depth if status == "solved" \
            else tracker.deepest_level
        stats.pt_max_width = tracker.max_width
        stats.runtime = time.monotonic() - t0
        return SolveResult(status, paths, node_seed, stats)

    while stack:
        if cutoff is not None and time.monotonic() > cutoff:
            return finish("timeout")
        node, changed = stack.pop()
        if changed is not None:
            try:
                evaluate_node(query, node, changed)
            except NodeInfeasible:
                stats.pt_nodes_expanded += 1
                stats.low_level_expansions += node.low_level_expansions
                continue
        stats.pt_nodes_expanded += 1
        stats.low_level_expansions += node.low_level_expansions

        ordered = [node.paths[a] for a in query.agent_ids()]
        conflicts = detect_conflicts(ordered, w)
        if not conflicts:
            return finish("solved", dict(node.paths), node.priorities, node.depth)

        i, j = conflicts[0].agents
        try:
            # Push the (j above i) child first so the orientation keeping
            # the smaller id on top is expanded first.
            for higher, lower in ((j, i), (i, j)):
                tracker.add(node.depth + 1)
                stats.pt_nodes_generated += 1
                child = PTNode(
                    priorities=node.priorities.with_pair(higher, lower),
                    paths=dict(node.paths),
                    depth=node.depth + 1,
                    parent=node,
                )
                stack.append((child, lower))
        except WidthExceeded:
            stats.width_exceeded = True
            return finish("failed")

    return finish("failed")


def extract_seed(result: SolveResult) -> PrioritySet:
    """The solution node's full priority set, for warm-starting later queries."""
    if result.status != "solved" or result.seed is None:
        raise NotSolved(f"cannot extract a seed from a {result.status} result")
    return result.seed
