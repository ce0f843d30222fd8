from __future__ import annotations

import random

import pytest

from lmapf import _spacetime_py
from lmapf.grid import GridMap
from lmapf.spacetime import (
    BACKEND,
    Path,
    ReservationTable,
    build_reservations,
    plan_path,
)

from conftest import PAPER_ROOT_PATHS, random_open_grid, random_query, random_walk_path
from oracles import bfs_dist, path_hits_reservations, time_expanded_plan_cost


def test_reservations_from_worked_example_path():
    # a1's plan from the worked example, w=4: the parked window covers
    # exactly timesteps 0..4.
    path = Path(0, PAPER_ROOT_PATHS[0])
    table = build_reservations([path], w=4)
    assert ((1, 2), 3) in table.vertex          # display coords (2,3) at t=3
    assert ((0, 2), 4) in table.vertex          # display coords (1,3) at t=4
    assert ((0, 3), 5) not in table.vertex      # beyond the window
    assert len(table.vertex) == 5
    assert ((2, 0), (2, 1), 0) in table.moves


def test_reservations_empty_paths():
    table = build_reservations([], w=3)
    assert table.vertex == frozenset() and table.moves == frozenset()


def test_reservations_parked_extension():
    table = build_reservations([Path(0, ((1, 1),))], w=3)
    assert table.vertex == {((1, 1), t) for t in range(4)}
    assert table.moves == frozenset()


def test_plan_matches_static_distance_without_reservations(toy_grid):
    path, _ = plan_path(toy_grid, (2, 0), (0, 4), ReservationTable.empty(4), w=4)
    assert path.cost == 6
    assert path.cells[0] == (2, 0) and path.cells[-1] == (0, 4)


def test_plan_for_boxed_out_agent_replans_around_the_window():
    # Reservations derived from the worked example's other two agents; the
    # replanned agent still finds a cost-4 route (the example's own
    # illustration adds a wait, but a minimum-cost planner does better).
    grid = GridMap(3, 5, blocked=set())
    reservations = build_reservations(
        [Path(0, PAPER_ROOT_PATHS[0]), Path(1, PAPER_ROOT_PATHS[1])], w=4)
    path, _ = plan_path(grid, (0, 4), (2, 2), reservations, w=4)
    assert path is not None
    assert not path_hits_reservations(path.cells, reservations, 4)
    oracle = time_expanded_plan_cost(grid, (0, 4), (2, 2), reservations, 4)
    assert path.cost == oracle == 4
    assert path.cells == ((0, 4), (1, 4), (2, 4), (2, 3), (2, 2))


def test_plan_single_cell_when_start_is_goal(toy_grid):
    path, expansions = plan_path(toy_grid, (1, 2), (1, 2),
                                 ReservationTable.empty(4), w=4)
    assert path.cells == ((1, 2),)
    assert path.cost == 0
    assert expansions == 1


def test_plan_waits_out_a_crossing_agent():
    grid = GridMap(1, 5, blocked=set())
    crossing = Path(0, ((0, 4), (0, 3), (0, 2), (0, 1), (0, 0)))
    table = build_reservations([crossing], w=4)
    # Same corridor, opposite direction: no windowed path can exist.
    path, _ = plan_path(grid, (0, 0), (0, 4), table, w=4)
    assert path is None


def test_plan_exits_window_past_parked_goal():
    grid = GridMap(2, 2, blocked=set())
    squatter = Path(0, ((0, 0),))
    table = build_reservations([squatter], w=3)
    path, _ = plan_path(grid, (1, 1), (0, 0), table, w=3)
    # the squatter owns (0,0) through t=3, but the window exit at t=3
    # lets the agent finish statically afterwards
    assert path is not None
    assert path.cost == 4
    assert not path_hits_reservations(path.cells, table, 3)


def test_random_plans_match_time_expanded_bfs_oracle():
    rng = random.Random(2024)
    checked = 0
    for _ in range(120):
        grid = random_open_grid(rng, max_side=5, obstacle_p=0.2)
        free = grid.free_cells
        if len(free) < 4:
            continue
        start, goal = rng.sample(free, 2)
        w = rng.choice([2, 4, 8])
        # other agents start anywhere except this agent's start (queries
        # guarantee pairwise distinct starts)
        other_cells = [c for c in free if c != start]
        others = [random_walk_path(rng, grid, i, rng.choice(other_cells), w + 1)
                  for i in range(rng.randint(0, 3))]
        table = build_reservations(others, w)
        path, _ = plan_path(grid, start, goal, table, w)
        oracle = time_expanded_plan_cost(grid, start, goal, table, w)
        if path is None:
            assert oracle is None
        else:
            assert path.cost == oracle
            assert not path_hits_reservations(path.cells, table, w)
            assert path.cells[0] == start and path.cells[-1] == goal
        checked += 1
    assert checked >= 100


def test_adding_reservations_never_reduces_cost():
    rng = random.Random(77)
    for _ in range(40):
        grid = random_open_grid(rng, max_side=6, obstacle_p=0.15)
        free = grid.free_cells
        if len(free) < 5:
            continue
        start, goal = rng.sample(free, 2)
        w = 6
        base_others = [random_walk_path(rng, grid, 0, rng.choice(free), w)]
        more_others = base_others + [random_walk_path(rng, grid, 1, rng.choice(free), w)]
        p1, _ = plan_path(grid, start, goal, build_reservations(base_others, w), w)
        p2, _ = plan_path(grid, start, goal, build_reservations(more_others, w), w)
        if p2 is not None:
            assert p1 is not None
            assert p2.cost >= p1.cost


def test_path_steps_are_moves_or_waits():
    rng = random.Random(5)
    for _ in range(30):
        grid = random_open_grid(rng, max_side=6)
        free = grid.free_cells
        if len(free) < 3:
            continue
        start, goal = rng.sample(free, 2)
        path, _ = plan_path(grid, start, goal, ReservationTable.empty(4), 4)
        for a, b in zip(path.cells, path.cells[1:]):
            assert a == b or (abs(a[0] - b[0]) + abs(a[1] - b[1])) == 1
            assert grid.is_free(b)


def test_backends_agree_bit_for_bit():
    try:
        from lmapf import _spacetime_cy
    except ImportError:
        pytest.skip("compiled kernel not built")
    rng = random.Random(90)
    compared = 0
    for _ in range(150):
        grid = random_open_grid(rng, max_side=8, obstacle_p=0.2)
        free = grid.free_cells
        if len(free) < 5:
            continue
        start, goal = rng.sample(free, 2)
        w = rng.choice([2, 5, 9])
        others = [random_walk_path(rng, grid, i, rng.choice(free), w + 2)
                  for i in range(rng.randint(0, 3))]
        table = build_reservations(others, w)
        n_cells = grid.rows * grid.cols
        cols = grid.cols
        vres = {t * n_cells + (r * cols + c) for ((r, c), t) in table.vertex if t <= w}
        eres = {(t * n_cells + (ur * cols + uc)) * n_cells + (vr * cols + vc)
                for ((ur, uc), (vr, vc), t) in table.moves if t < w}
        args = (cols, n_cells, grid.blocked_flat, grid.dist_field(goal),
                grid.index(start), grid.index(goal), w, vres, eres)
        assert _spacetime_py.plan(*args) == _spacetime_cy.plan(*args)
        compared += 1
    assert compared >= 120


def test_heap_key_constants_match_between_backends():
    try:
        from lmapf import _spacetime_cy
    except ImportError:
        pytest.skip("compiled kernel not built")
    for name in ("T_BITS", "TICK_BITS", "T_SLOTS", "TICK_LIMIT", "F_LIMIT"):
        assert getattr(_spacetime_py, name) == getattr(_spacetime_cy, name)


def test_backend_name_is_exposed():
    assert BACKEND in ("python", "cython")


def test_static_distance_equals_plan_cost_on_random_grids():
    rng = random.Random(11)
    for _ in range(25):
        grid = random_open_grid(rng, max_side=7)
        free = grid.free_cells
        if len(free) < 3:
            continue
        start, goal = rng.sample(free, 2)
        path, _ = plan_path(grid, start, goal, ReservationTable.empty(3), 3)
        assert path.cost == bfs_dist(grid, goal)[start]
