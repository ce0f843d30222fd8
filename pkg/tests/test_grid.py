from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lmapf.grid import (
    DisconnectedMap,
    EmptyEndpointSet,
    GridMap,
    ParseError,
    generate_layout,
    load_map,
)

from conftest import TOY_MAP


def test_toy_map_loads_with_15_free_cells(toy_grid):
    assert toy_grid.rows == 3 and toy_grid.cols == 5
    assert len(toy_grid.free_cells) == 15
    assert toy_grid.endpoints_b == {(0, 1), (0, 4), (2, 2)}
    assert toy_grid.endpoints_a == {(1, 0), (2, 0), (2, 4)}


def test_round_trip(toy_grid):
    assert load_map(toy_grid.serialize()) == toy_grid


def test_round_trip_generated_layouts():
    for kind in ("warehouse", "sorting"):
        g = generate_layout(kind, seed=5)
        assert load_map(g.serialize()) == g


def test_no_endpoints_rejected():
    with pytest.raises(EmptyEndpointSet):
        load_map("1 1\n.")


def test_bad_character_rejected():
    with pytest.raises(ParseError):
        load_map("1 3\n.X.")


def test_ragged_rows_rejected():
    with pytest.raises(ParseError):
        load_map("2 3\n...\n..")


def test_bad_header_rejected():
    with pytest.raises(ParseError):
        load_map("banana\n...")


def test_disconnected_rejected():
    with pytest.raises(DisconnectedMap):
        load_map("3 3\n.@b\n@@@\nb@.")


def test_neighbors_orders_and_counts():
    g = GridMap(3, 3, blocked=set())
    assert g.neighbors((1, 1)) == [(0, 1), (1, 2), (2, 1), (1, 0)]
    assert g.neighbors((0, 0)) == [(0, 1), (1, 0)]
    # all four directions blocked or out of bounds -> empty list
    walled = GridMap(1, 3, blocked={(0, 0), (0, 2)})
    assert walled.neighbors((0, 1)) == []


def test_warehouse_layout_matches_figure_dimensions():
    g = generate_layout("warehouse", seed=0)
    frac = len(g.blocked) / (g.rows * g.cols)
    assert (g.rows, g.cols) == (33, 46)
    assert 0.14 <= frac <= 0.18
    assert g.endpoints_a and g.endpoints_b
    # task endpoints hug the pods, workstations sit on the boundary
    assert all(any((r + dr, c + dc) in g.blocked
                   for dr, dc in ((-1, 0), (0, 1), (1, 0), (0, -1)))
               for (r, c) in g.endpoints_b)
    assert all(r in (0, g.rows - 1) or c in (0, g.cols - 1)
               for (r, c) in g.endpoints_a)


def test_sorting_layout_matches_figure_dimensions():
    g = generate_layout("sorting", seed=0)
    frac = len(g.blocked) / (g.rows * g.cols)
    assert (g.rows, g.cols) == (37, 77)
    assert 0.08 <= frac <= 0.12


def test_layout_determinism():
    for kind in ("warehouse", "sorting"):
        a = generate_layout(kind, seed=9)
        b = generate_layout(kind, seed=9)
        assert a == b
        assert generate_layout(kind, seed=10) != a


def test_desk_scale_layouts_stay_connected_and_dense():
    for kind, lo, hi in (("warehouse", 0.12, 0.20), ("sorting", 0.06, 0.14)):
        for seed in range(3):
            g = generate_layout(kind, seed, rows=15, cols=21)
            frac = len(g.blocked) / (g.rows * g.cols)
            assert lo <= frac <= hi, (kind, seed, frac)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_neighbor_relation_is_symmetric(seed):
    rng = random.Random(seed)
    rows, cols = rng.randint(2, 7), rng.randint(2, 7)
    blocked = {(r, c) for r in range(rows) for c in range(cols)
               if rng.random() < 0.25}
    try:
        g = GridMap(rows, cols, blocked)
    except ValueError:
        return
    for cell in g.free_cells:
        for n in g.neighbors(cell):
            assert cell in g.neighbors(n)


def test_distance_field_matches_manhattan_on_open_grid():
    g = GridMap(4, 6, blocked=set())
    d = g.dist_field((2, 3))
    for (r, c) in g.free_cells:
        assert d[g.index((r, c))] == abs(r - 2) + abs(c - 3)


def test_toy_map_text_is_the_fixture():
    # Guard against fixture drift: the inline map is what the golden tests use.
    g = load_map(TOY_MAP)
    assert g.serialize() == TOY_MAP
