"""Low-level single-agent planner and reservation tables.

``plan_path`` finds a minimum-cost path in space-time that respects
higher-priority agents' paths as dynamic obstacles for the first ``w``
timesteps, then relaxes to the static shortest path.  The inner search
runs on a compiled kernel when available and on a pure-Python twin
otherwise; set ``LMAPF_BACKEND=python`` to force the fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from lmapf.grid import Cell, GridMap

if os.environ.get("LMAPF_BACKEND", "").lower() == "python":
    from lmapf import _spacetime_py as _kernel
else:
    try:
        from lmapf import _spacetime_cy as _kernel  # type: ignore[attr-defined]
    except ImportError:
        from lmapf import _spacetime_py as _kernel

BACKEND: str = _kernel.BACKEND


@dataclass(frozen=True)
class Path:
    """One agent's timestamped route; cells[t] is the position at timestep t."""

    agent: int
    cells: tuple[Cell, ...]

    @property
    def cost(self) -> int:
        return len(self.cells) - 1

    def at(self, t: int) -> Cell:
        """Position at timestep t, with the parked extension past the end."""
        if t < len(self.cells):
            return self.cells[t]
        return self.cells[-1]

    def __len__(self):
        return len(self.cells)


@dataclass(frozen=True)
class ReservationTable:
    """Cells and moves occupied by higher-priority paths up to the horizon.

    ``vertex`` holds (cell, t) pairs for 0 <= t <= horizon including the
    parked extension past each path's end; ``moves`` holds (from, to, t)
    for each traversal between t and t+1 (t < horizon).  A lower-priority
    agent may not enter a reserved vertex nor traverse a reserved move in
    the opposite direction.
    """

    vertex: frozenset[tuple[Cell, int]]
    moves: frozenset[tuple[Cell, Cell, int]]
    horizon: int

    @classmethod
    def empty(cls, horizon: int) -> "ReservationTable":
        return cls(frozenset(), frozenset(), horizon)


def build_reservations(paths: list[Path], w: int) -> ReservationTable:
    """Reservation table for timesteps 0..w from the given paths."""
    if w < 1:
        raise ValueError("window must be >= 1")
    vertex = set()
    moves = set()
    for path in paths:
        for t in range(w + 1):
            vertex.add((path.at(t), t))
        for t in range(min(w, len(path.cells) - 1)):
            if path.cells[t] != path.cells[t + 1]:
                moves.add((path.cells[t], path.cells[t + 1], t))
    return ReservationTable(frozenset(vertex), frozenset(moves), w)


class NoPath(Exception):
    """No conflict-free windowed path exists for the request."""


def plan_path(
    grid: GridMap,
    start: Cell,
    goal: Cell,
    reservations: ReservationTable,
    w: int,
    agent: int = -1,
) -> tuple[Path | None, int]:
    """Minimum-cost windowed path for one agent, with expansion count.

    Unit cost per timestep (moves and waits) until the goal is first
    reached; the result never conflicts with ``reservations`` at any
    t <= w and ignores them afterwards.  Deterministic: equal-f states
    pop deepest-first, then in (up, right, down, left, wait) generation
    order.  Returns (None, expansions) when every conflict-free prefix
    is exhausted.

    The start cell at t=0 is not checked against the table: reservations
    come from other agents' paths, whose own distinct starts occupy their
    t=0 slots.
    """
    if not grid.is_free(start):
        raise ValueError(f"start {start} is blocked or out of bounds")
    if not grid.is_free(goal):
        raise ValueError(f"goal {goal} is blocked or out of bounds")
    if w < 1:
        raise ValueError("window must be >= 1")

    n_cells = grid.rows * grid.cols
    cols = grid.cols
    vres = {t * n_cells + (r * cols + c) for ((r, c), t) in reservations.vertex
            if t <= w}
    eres = {(t * n_cells + (ur * cols + uc)) * n_cells + (vr * cols + vc)
            for ((ur, uc), (vr, vc), t) in reservations.moves if t < w}

    cells, expansions = _kernel.plan(
        cols, n_cells, grid.blocked_flat, grid.dist_field(goal),
        grid.index(start), grid.index(goal), w, vres, eres,
    )
    if cells is None:
        return None, expansions
    path = Path(agent=agent, cells=tuple(divmod(i, cols) for i in cells))
    return path, expansions
