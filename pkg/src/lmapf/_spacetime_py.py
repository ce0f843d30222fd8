"""Pure-Python windowed space-time A* kernel.

Reference implementation of the hot inner loop; ``lmapf._spacetime_cy``
is a compiled twin with identical semantics.  Both must produce
bit-identical paths: the heap key packs (f, -t, insertion tick) into one
integer so tie-breaking is exactly the same in either backend.

Search space is (cell, timestep) for t in [0, w].  Each step costs one
timestep, so g == t throughout.  Reservations are honored for t <= w
only; a state at t == w is closed out with the static distance field and
the path is completed greedily along it (conflicts past the window are
ignored by construction).
"""

from __future__ import annotations

import heapq

BACKEND = "python"

# Heap key layout: f << 36 | (T_SLOTS-1 - t) << 24 | tick.  Larger t wins
# among equal f; ties fall back to insertion order.
T_BITS = 12
TICK_BITS = 24
T_SLOTS = 1 << T_BITS
TICK_LIMIT = 1 << TICK_BITS
F_LIMIT = 1 << 27


def plan(cols, n_cells, blocked, dist, start, goal, w, vres, eres):
    """Windowed reservation-respecting shortest path.

    Arguments use flat cell indices (r*cols + c).  ``blocked`` is a
    bytes-like truth map, ``dist`` the static distance-to-goal field,
    ``vres`` a set of packed t*n_cells+cell vertex reservations and
    ``eres`` a set of packed (t*n_cells + u)*n_cells + v reserved moves.
    Returns (path_cells or None, expansions).
    """
    if dist[start] < 0:
        return None, 0
    if w >= T_SLOTS - 1 or w + dist[start] >= F_LIMIT:
        raise ValueError(f"window {w} out of supported range")

    up, right, down, left = -cols, 1, cols, -1

    # parent[t*n_cells+cell] = packed predecessor state, -1 for the root.
    parent = {}
    start_state = start  # t = 0
    parent[start_state] = -1

    open_heap = []
    tick = 0
    f0 = dist[start]
    heapq.heappush(open_heap, ((f0 << T_BITS | (T_SLOTS - 1)) << TICK_BITS | tick,
                               start_state))
    expansions = 0

    while open_heap:
        _, state = heapq.heappop(open_heap)
        t, cell = divmod(state, n_cells)
        expansions += 1

        if cell == goal and _tail_free(goal, t, w, n_cells, vres):
            return _reconstruct(parent, state, n_cells), expansions
        if t == w:
            return _reconstruct(parent, state, n_cells) + \
                _static_tail(cols, n_cells, blocked, dist, cell), expansions

        nt = t + 1
        base = nt * n_cells
        row_col = cell % cols
        for step in (up, right, down, left, 0):
            if step == right and row_col == cols - 1:
                continue
            if step == left and row_col == 0:
                continue
            ncell = cell + step
            if ncell < 0 or ncell >= n_cells:
                continue
            if step != 0 and blocked[ncell]:
                continue
            if dist[ncell] < 0:
                continue
            nstate = base + ncell
            if nstate in parent:
                continue
            if nstate in vres:
                continue
            if step != 0 and ((t * n_cells + ncell) * n_cells + cell) in eres:
                continue
            parent[nstate] = state
            tick += 1
            if tick >= TICK_LIMIT:
                raise ValueError("search exceeded tick capacity")
            f = nt + dist[ncell]
            key = (f << T_BITS | (T_SLOTS - 1 - nt)) << TICK_BITS | tick
            heapq.heappush(open_heap, (key, nstate))

    return None, expansions


def _tail_free(goal, t, w, n_cells, vres):
    for tau in range(t, w + 1):
        if tau * n_cells + goal in vres:
            return False
    return True


def _reconstruct(parent, state, n_cells):
    cells = []
    while state != -1:
        cells.append(state % n_cells)
        state = parent[state]
    cells.reverse()
    return cells


def _static_tail(cols, n_cells, blocked, dist, cell):
    """Greedy descent of the distance field from a window-exit cell."""
    up, right, down, left = -cols, 1, cols, -1
    tail = []
    d = dist[cell]
    while d > 0:
        row_col = cell % cols
        for step in (up, right, down, left):
            if step == right and row_col == cols - 1:
                continue
            if step == left and row_col == 0:
                continue
            ncell = cell + step
            if ncell < 0 or ncell >= n_cells or blocked[ncell]:
                continue
            if dist[ncell] == d - 1:
                cell = ncell
                d -= 1
                tail.append(cell)
                break
        else:  # unreachable on a connected map
            raise AssertionError("distance field descent failed")
    return tail
