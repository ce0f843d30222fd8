"""Rolling-horizon lifelong planning over a stream of windowed queries.

A lifelong run repeatedly solves a windowed query, executes the first
``h`` steps of the solution, and asks the task assigner for the next
query.  Three solver schedules are supported:

* ``rhcr``        -- every query solved by plain PBS;
* ``exrhcr``      -- queries grouped in batches of ``delta``+1: the first
                     is solved by PBS and its solution's priority set
                     seeds the next ``delta`` experience-seeded solves;
* ``exrhcr-tot``  -- as above, but the seed is flattened to a total
                     order and the seeded solves run the prioritized
                     planner.

A failed or timed-out query is logged and the fleet simply keeps
executing its previous plan for another ``h`` steps; the next cycle
restarts the batch with a fresh PBS call.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from lmapf.expbs import expbs_solve, prioritized_solve
from lmapf.grid import Cell, GridMap
from lmapf.pbs import SolveResult, WMAPFQuery, pbs_solve
from lmapf.priorities import PrioritySet, to_total
from lmapf.spacetime import Path

SOLVERS = ("rhcr", "exrhcr", "exrhcr-tot")


class InsufficientCells(ValueError):
    """The map cannot host the requested number of agents or goals."""


def default_lookahead(w: int, h: int) -> int:
    """Suggested experience lookahead: floor(w/h) - 1, floored at zero."""
    if h > w:
        raise ValueError("replanning rate h must not exceed the window w")
    return max(0, w // h - 1)


@dataclass
class LifelongConfig:
    w: int = 10
    h: int = 5
    delta: int = 1
    width_limit: int | None = 10
    k: int = 10
    total_timesteps: int = 100
    query_deadline: float | None = 5.0
    seed: int = 0
    solver: str = "rhcr"

    def __post_init__(self):
        if not (1 <= self.h <= self.w):
            raise ValueError("need 1 <= h <= w")
        if self.delta < 0:
            raise ValueError("lookahead delta must be >= 0")
        if self.width_limit is not None and self.width_limit <= 1:
            raise ValueError("width limit must be greater than 1")
        if self.solver not in SOLVERS:
            raise ValueError(f"solver must be one of {SOLVERS}")
        if self.total_timesteps < 1 or self.k < 1:
            raise ValueError("need at least one agent and one timestep")


class TaskAssigner:
    """Issues two-color alternating goals, never duplicating assignments.

    Goals are drawn from the map's endpoint classes; an agent that
    completes a task at one color receives its next goal uniformly from
    the other color, excluding cells currently assigned to other agents.
    All sampling runs on the supplied seeded generator, so a run is a
    pure function of (map, seed).
    """

    def __init__(self, grid: GridMap, rng: random.Random):
        self.grid = grid
        self.rng = rng
        self.goal: dict[int, Cell] = {}
        self.color: dict[int, str] = {}
        self.tasks_completed = 0

    def sample_starts(self, k: int) -> list[Cell]:
        free = self.grid.free_cells
        if k > len(free):
            raise InsufficientCells(f"{k} agents but only {len(free)} free cells")
        return self.rng.sample(free, k)

    def assign_initial_goals(self, k: int) -> list[Cell]:
        pool = sorted(self.grid.endpoints_a | self.grid.endpoints_b)
        goals = []
        for agent in range(k):
            choices = [g for g in pool if g not in self.goal.values()]
            if not choices:
                raise InsufficientCells("endpoint cells exhausted while assigning goals")
            g = self.rng.choice(choices)
            self._set_goal(agent, g)
            goals.append(g)
        return goals

    def assign_scenario(self, starts: list[Cell], goals: list[Cell]) -> None:
        if len(starts) != len(goals):
            raise ValueError("scenario starts and goals differ in length")
        if len(set(goals)) != len(goals):
            raise ValueError("scenario goals must be pairwise distinct")
        for agent, g in enumerate(goals):
            self._set_goal(agent, g)

    def _set_goal(self, agent: int, g: Cell) -> None:
        self.goal[agent] = g
        self.color[agent] = "a" if g in self.grid.endpoints_a else "b"

    def process_execution(self, paths: dict[int, Path], h: int) -> None:
        """Count tasks completed within the executed prefix and reassign.

        An agent completes its task if it visits its goal cell at any
        t <= h of the executed plan; it then draws a new goal from the
        other endpoint color, excluding currently assigned cells.
        """
        for agent in sorted(paths):
            goal = self.goal[agent]
            if any(paths[agent].at(t) == goal for t in range(h + 1)):
                self.tasks_completed += 1
                other = self.grid.endpoints_b if self.color[agent] == "a" \
                    else self.grid.endpoints_a
                taken = {g for a, g in self.goal.items() if a != agent}
                choices = sorted(other - taken)
                if not choices:
                    raise InsufficientCells(
                        f"no free {'b' if self.color[agent] == 'a' else 'a'} endpoints left")
                self._set_goal(agent, self.rng.choice(choices))


def initial_query(assigner: TaskAssigner, k: int, w: int) -> WMAPFQuery:
    """Random distinct starts over all free cells, goals over both colors."""
    starts = assigner.sample_starts(k)
    goals = assigner.assign_initial_goals(k)
    return WMAPFQuery(assigner.grid, tuple(zip(starts, goals)), w)


def scenario_query(assigner: TaskAssigner, starts: list[Cell],
                   goals: list[Cell], w: int) -> WMAPFQuery:
    """Fixture override: build the first query from explicit starts/goals."""
    assigner.assign_scenario(starts, goals)
    return WMAPFQuery(assigner.grid, tuple(zip(map(tuple, starts),
                                               map(tuple, goals))), w)


def next_query(assigner: TaskAssigner, query: WMAPFQuery,
               paths: dict[int, Path], h: int) -> WMAPFQuery:
    """Advance the stream: execute ``paths`` for h steps, refresh goals.

    New starts are the positions at timestep h (parked extension);
    completed agents get fresh goals from the assigner, unfinished ones
    keep theirs.
    """
    assigner.process_execution(paths, h)
    agents = []
    for agent in range(query.k):
        agents.append((paths[agent].at(h), assigner.goal[agent]))
    return WMAPFQuery(query.grid, tuple(agents), query.w)


@dataclass
class QueryRecord:
    """Per-query metrics row; failed queries carry the full deadline."""

    index: int
    solver_used: str              # "pbs" | "expbs" | "prioritized"
    status: str
    runtime: float
    pt_nodes_expanded: int
    pt_depth_of_solution: int
    pt_max_width: int
    low_level_expansions: int
    fallback_used: bool
    cost: int | None


@dataclass
class RunReport:
    config: LifelongConfig
    records: list[QueryRecord]
    tasks_completed: int
    trajectory: list[tuple[Cell, ...]] = field(repr=False, default_factory=list)

    @property
    def throughput(self) -> float:
        return self.tasks_completed / self.config.total_timesteps

    @property
    def total_cost(self) -> int:
        return sum(r.cost for r in self.records if r.cost is not None)

    @property
    def success_rate(self) -> float:
        if not self.records:
            return 0.0
        return sum(r.status == "solved" for r in self.records) / len(self.records)


def _shift(path: Path, s: int) -> Path:
    cells = tuple(path.at(t) for t in range(s, max(len(path.cells), s + 1)))
    return Path(path.agent, cells)


def run_lifelong(config: LifelongConfig, grid: GridMap,
                 scenario: tuple[list[Cell], list[Cell]] | None = None) -> RunReport:
    """Run one lifelong simulation until the timestep horizon.

    Deterministic given (config, grid, scenario) apart from the recorded
    wall-clock runtimes.  Query failures are logged, never raised.
    """
    rng = random.Random(config.seed)
    assigner = TaskAssigner(grid, rng)
    if scenario is not None:
        query = scenario_query(assigner, scenario[0], scenario[1], config.w)
    else:
        query = initial_query(assigner, config.k, config.w)

    carried = {a: Path(a, (s,)) for a, (s, _) in enumerate(query.agents)}
    seed: PrioritySet | None = None
    batch_pos = 0
    records: list[QueryRecord] = []
    trajectory: list[tuple[Cell, ...]] = [tuple(s for (s, _) in query.agents)]

    timestep = 0
    index = 0
    while timestep < config.total_timesteps:
        solver_used, result = _solve_one(config, query, seed, batch_pos)

        if result.solved:
            anchored = result.paths
            if solver_used == "pbs":
                seed = result.seed
            batch_pos = (batch_pos + 1) % (config.delta + 1)
        else:
            anchored = carried
            seed = None
            batch_pos = 0

        runtime = result.stats.runtime
        if not result.solved and config.query_deadline is not None:
            runtime = config.query_deadline
        records.append(QueryRecord(
            index=index,
            solver_used=solver_used,
            status=result.status,
            runtime=runtime,
            pt_nodes_expanded=result.stats.pt_nodes_expanded,
            pt_depth_of_solution=result.stats.pt_depth_of_solution,
            pt_max_width=result.stats.pt_max_width,
            low_level_expansions=result.stats.low_level_expansions,
            fallback_used=result.stats.fallback_used,
            cost=result.cost,
        ))

        for t in range(1, config.h + 1):
            trajectory.append(tuple(anchored[a].at(t) for a in range(query.k)))

        query = next_query(assigner, query, anchored, config.h)
        carried = {a: _shift(anchored[a], config.h) for a in anchored}
        timestep += config.h
        index += 1

    return RunReport(config=config, records=records,
                     tasks_completed=assigner.tasks_completed,
                     trajectory=trajectory)


def _solve_one(config: LifelongConfig, query: WMAPFQuery,
               seed: PrioritySet | None, batch_pos: int) -> tuple[str, SolveResult]:
    use_pbs = (config.solver == "rhcr" or batch_pos == 0 or seed is None
               or config.delta == 0)
    if use_pbs:
        return "pbs", pbs_solve(query, deadline=config.query_deadline)
    if config.solver == "exrhcr":
        return "expbs", expbs_solve(query, seed, width_limit=config.width_limit,
                                    deadline=config.query_deadline)
    order = to_total(seed, query.agent_ids())
    return "prioritized", prioritized_solve(query, order,
                                            deadline=config.query_deadline)
