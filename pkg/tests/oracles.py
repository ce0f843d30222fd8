"""Brute-force reference implementations used to derive expected values.

Everything here is deliberately independent of the library's search code:
plain BFS/Dijkstra over explicit state spaces, no heuristics, no shared
helpers, so a bug in the package cannot hide in its own oracle.
"""

from __future__ import annotations

import heapq
from collections import deque
from itertools import product


def bfs_dist(grid, goal):
    """Static distances to goal by textbook BFS (dict, not the array cache)."""
    dist = {goal: 0}
    queue = deque([goal])
    while queue:
        (r, c) = queue.popleft()
        for n in ((r - 1, c), (r, c + 1), (r + 1, c), (r, c - 1)):
            if grid.is_free(n) and n not in dist:
                dist[n] = dist[(r, c)] + 1
                queue.append(n)
    return dist


def path_hits_reservations(cells, reservations, w):
    """Independent scan of one path against a reservation table (t <= w)."""
    vset = set(reservations.vertex)
    mset = set(reservations.moves)

    def at(t):
        return cells[t] if t < len(cells) else cells[-1]

    for t in range(w + 1):
        if (at(t), t) in vset:
            return True
        if t < w and (at(t + 1), at(t), t) in mset and at(t) != at(t + 1):
            return True
    return False


def time_expanded_plan_cost(grid, start, goal, reservations, w):
    """Minimum windowed path cost by exhaustive BFS over (cell, t).

    Explores every reservation-respecting state up to t = w, then scores
    (a) in-window goal arrivals whose parked tail stays unreserved and
    (b) window exits closed out with the static distance.  Returns None
    when no state survives to either option.
    """
    sdist = bfs_dist(grid, goal)
    if start not in sdist:
        return None
    vset = {(c, t) for (c, t) in reservations.vertex if t <= w}
    mset = {m for m in reservations.moves if m[2] < w}

    best = None
    seen = {(start, 0)}
    layer = [(start, 0)]
    while layer:
        nxt = []
        for (cell, t) in layer:
            if cell == goal and all((goal, tau) not in vset for tau in range(t, w + 1)):
                best = t if best is None else min(best, t)
            if t == w:
                exit_cost = w + sdist.get(cell) if cell in sdist else None
                if exit_cost is not None:
                    best = exit_cost if best is None else min(best, exit_cost)
                continue
            (r, c) = cell
            for n in ((r - 1, c), (r, c + 1), (r + 1, c), (r, c - 1), (r, c)):
                if n != cell and not grid.is_free(n):
                    continue
                if n == cell and not grid.is_free(n):
                    continue
                if (n, t + 1) in vset or (n, t + 1) in seen:
                    continue
                if n != cell and (n, cell, t) in mset:
                    continue
                seen.add((n, t + 1))
                nxt.append((n, t + 1))
        layer = nxt
    return best


def brute_conflicts(paths_cells, w):
    """All pairwise conflicts by naive enumeration.

    ``paths_cells`` maps agent id -> cell sequence.  Returns a set of
    ("vertex", (i, j), t, cells...) / ("edge", ...) tuples.
    """
    def at(cells, t):
        return cells[t] if t < len(cells) else cells[-1]

    out = set()
    ids = sorted(paths_cells)
    for x in range(len(ids)):
        for y in range(x + 1, len(ids)):
            i, j = ids[x], ids[y]
            pi, pj = paths_cells[i], paths_cells[j]
            for t in range(w + 1):
                if at(pi, t) == at(pj, t):
                    out.add(("vertex", (i, j), t, at(pi, t)))
                if t < w and at(pi, t) == at(pj, t + 1) \
                        and at(pi, t + 1) == at(pj, t) and at(pi, t) != at(pi, t + 1):
                    out.add(("edge", (i, j), t, at(pi, t), at(pj, t)))
    return out


def joint_windowed_optimum(grid, starts, goals, w):
    """Exact optimal windowed sum-of-costs by joint-state Dijkstra.

    State: (positions, parked mask, t).  A step costs one per agent that
    has not permanently parked at its goal; agents standing on their goal
    may park (and then never move).  At t = w the remaining agents close
    out with their static distances since conflicts past the window are
    free.  Always feasible on a connected map (everyone can simply wait),
    so this returns the optimal total cost.
    """
    k = len(starts)
    sdists = [bfs_dist(grid, g) for g in goals]

    def moves(agent, cell, parked):
        if parked & (1 << agent):
            return [(cell, parked)]
        (r, c) = cell
        opts = []
        if cell == goals[agent]:
            opts.append((cell, parked | (1 << agent)))
        for n in ((r - 1, c), (r, c + 1), (r + 1, c), (r, c - 1), (r, c)):
            if grid.is_free(n):
                opts.append((n, parked))
        return opts

    all_parked = (1 << k) - 1
    start_state = (tuple(starts), 0)
    best_cost = {(tuple(starts), 0, 0): 0}
    heap = [(0, tuple(starts), 0, 0)]  # cost, positions, parked, t
    best = None

    while heap:
        cost, pos, parked, t = heapq.heappop(heap)
        if best_cost.get((pos, parked, t), -1) != cost:
            continue
        if parked == all_parked:
            best = cost if best is None else min(best, cost)
            continue
        if best is not None and cost >= best:
            continue
        if t == w:
            total = cost
            for a in range(k):
                if not parked & (1 << a):
                    total += sdists[a].get(pos[a], 10 ** 9)
            best = total if best is None else min(best, total)
            continue

        for combo in product(*(moves(a, pos[a], parked) for a in range(k))):
            npos = tuple(c for (c, _) in combo)
            nparked = 0
            for (_, p) in combo:
                nparked |= p
            if len(set(npos)) != k:
                continue
            if any(npos[a] == pos[b] and npos[b] == pos[a] and pos[a] != pos[b]
                   for a in range(k) for b in range(a + 1, k)):
                continue
            movers = sum(1 for a in range(k) if not nparked & (1 << a))
            ncost = cost + movers
            key = (npos, nparked, t + 1)
            if ncost < best_cost.get(key, 10 ** 9):
                best_cost[key] = ncost
                heapq.heappush(heap, (ncost, npos, nparked, t + 1))
    return best
