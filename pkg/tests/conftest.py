from __future__ import annotations

import random

import pytest

from lmapf.grid import GridMap, generate_layout, load_map
from lmapf.pbs import WMAPFQuery
from lmapf.spacetime import Path

# 3x5 open grid from the worked three-agent example; goal cells carry the
# 'b' endpoint tag and a few boundary cells the 'a' tag so the lifelong
# task assigner can run on it.
TOY_MAP = """3 5
.b..b
a....
a.b.a
"""

# 1-based display coordinates in the source material translate to these
# 0-based cells: a1 (3,1)->(1,5), a2 (3,5)->(1,2), a3 (1,5)->(3,3).
TOY_STARTS = [(2, 0), (2, 4), (0, 4)]
TOY_GOALS = [(0, 4), (0, 1), (2, 2)]

# The worked example's root plans (its low-level tie-breaking differs from
# ours); used as an input fixture for conflict detection and reservations.
PAPER_ROOT_PATHS = {
    0: ((2, 0), (2, 1), (1, 1), (1, 2), (0, 2), (0, 3), (0, 4)),
    1: ((2, 4), (2, 3), (1, 3), (1, 2), (0, 2), (0, 1)),
    2: ((0, 4), (0, 3), (1, 3), (2, 3), (2, 2)),
}


@pytest.fixture(scope="session")
def toy_grid() -> GridMap:
    return load_map(TOY_MAP)


@pytest.fixture(scope="session")
def toy_query(toy_grid) -> WMAPFQuery:
    return WMAPFQuery(toy_grid, tuple(zip(TOY_STARTS, TOY_GOALS)), w=4)


@pytest.fixture(scope="session")
def desk_grid() -> GridMap:
    return generate_layout("warehouse", 0, 15, 21)


def random_open_grid(rng: random.Random, max_side=8, obstacle_p=0.2) -> GridMap:
    """A random connected grid, retrying until connectivity holds."""
    while True:
        rows = rng.randint(3, max_side)
        cols = rng.randint(3, max_side)
        blocked = {(r, c) for r in range(rows) for c in range(cols)
                   if rng.random() < obstacle_p}
        try:
            return GridMap(rows, cols, blocked)
        except ValueError:
            continue


def random_query(rng: random.Random, grid: GridMap, k: int, w: int) -> WMAPFQuery:
    free = grid.free_cells
    starts = rng.sample(free, k)
    goals = [rng.choice(free) for _ in range(k)]
    return WMAPFQuery(grid, tuple(zip(starts, goals)), w)


def random_walk_path(rng: random.Random, grid: GridMap, agent: int,
                     start, length: int) -> Path:
    cells = [start]
    cur = start
    for _ in range(length):
        cur = rng.choice(grid.neighbors(cur) + [cur])
        cells.append(cur)
    return Path(agent, tuple(cells))
