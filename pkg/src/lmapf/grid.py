"""Grid-world maps: parsing, generation, and static shortest-path fields.

Maps are 4-connected grids.  Every cell is free, blocked, or free and
additionally tagged as an endpoint of one of two classes:

* class "a" -- workstations, placed on the map boundary,
* class "b" -- task locations, placed next to obstacle blocks.

Coordinates are 0-based ``(row, col)`` tuples with row 0 at the top.
"""

from __future__ import annotations

import random
from array import array
from collections import deque

Cell = tuple[int, int]

# Fixed neighbor order used by every search in the package: up, right,
# down, left.  Waiting, where allowed, always comes after these four.
NEIGHBOR_STEPS: tuple[tuple[int, int], ...] = ((-1, 0), (0, 1), (1, 0), (0, -1))


class ParseError(ValueError):
    """Map text does not conform to the grid file grammar."""


class DisconnectedMap(ValueError):
    """Free space is not a single connected component."""


class EmptyEndpointSet(ValueError):
    """Map defines no endpoint cells of either class."""


class GridMap:
    """Immutable 4-connected grid with obstacles and typed endpoints.

    Instances are safe to share between concurrently running solvers;
    nothing is mutated after construction (the distance-field cache is
    append-only and keyed by goal cell).
    """

    def __init__(
        self,
        rows: int,
        cols: int,
        blocked: set[Cell],
        endpoints_a: set[Cell] = frozenset(),
        endpoints_b: set[Cell] = frozenset(),
    ):
        if rows < 1 or cols < 1:
            raise ValueError("grid must have at least one row and column")
        for name, cells in (("blocked", blocked), ("endpoints_a", endpoints_a),
                            ("endpoints_b", endpoints_b)):
            for (r, c) in cells:
                if not (0 <= r < rows and 0 <= c < cols):
                    raise ValueError(f"{name} cell {(r, c)} out of bounds")
        if endpoints_a & blocked or endpoints_b & blocked or endpoints_a & endpoints_b:
            raise ValueError("blocked cells and endpoint classes must be pairwise disjoint")

        self.rows = rows
        self.cols = cols
        self.blocked = frozenset(blocked)
        self.endpoints_a = frozenset(endpoints_a)
        self.endpoints_b = frozenset(endpoints_b)

        flat = bytearray(rows * cols)
        for (r, c) in blocked:
            flat[r * cols + c] = 1
        self.blocked_flat = bytes(flat)

        self._check_connected()
        self._dist_cache: dict[Cell, array] = {}

    # -- basic queries ---------------------------------------------------

    def in_bounds(self, cell: Cell) -> bool:
        r, c = cell
        return 0 <= r < self.rows and 0 <= c < self.cols

    def is_free(self, cell: Cell) -> bool:
        return self.in_bounds(cell) and cell not in self.blocked

    def neighbors(self, cell: Cell) -> list[Cell]:
        """Unblocked orthogonal neighbors in fixed (up, right, down, left) order."""
        r, c = cell
        out = []
        for dr, dc in NEIGHBOR_STEPS:
            n = (r + dr, c + dc)
            if self.in_bounds(n) and n not in self.blocked:
                out.append(n)
        return out

    @property
    def free_cells(self) -> list[Cell]:
        return [(r, c) for r in range(self.rows) for c in range(self.cols)
                if (r, c) not in self.blocked]

    def index(self, cell: Cell) -> int:
        return cell[0] * self.cols + cell[1]

    def cell(self, index: int) -> Cell:
        return divmod(index, self.cols)

    # -- static shortest paths -------------------------------------------

    def dist_field(self, goal: Cell) -> array:
        """Grid distance from every cell to ``goal`` (-1 if unreachable).

        Computed once per goal by backward BFS and cached; the grid is
        undirected so the backward and forward distances coincide.
        """
        field = self._dist_cache.get(goal)
        if field is not None:
            return field
        if not self.is_free(goal):
            raise ValueError(f"goal {goal} is blocked or out of bounds")
        field = array("i", [-1] * (self.rows * self.cols))
        queue = deque([goal])
        field[self.index(goal)] = 0
        while queue:
            cur = queue.popleft()
            d = field[self.index(cur)] + 1
            for n in self.neighbors(cur):
                i = self.index(n)
                if field[i] < 0:
                    field[i] = d
                    queue.append(n)
        self._dist_cache[goal] = field
        return field

    def distance(self, a: Cell, b: Cell) -> int:
        return self.dist_field(b)[self.index(a)]

    # -- serialization ----------------------------------------------------

    def serialize(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        for r in range(self.rows):
            row = []
            for c in range(self.cols):
                cell = (r, c)
                if cell in self.blocked:
                    row.append("@")
                elif cell in self.endpoints_a:
                    row.append("a")
                elif cell in self.endpoints_b:
                    row.append("b")
                else:
                    row.append(".")
            lines.append("".join(row))
        return "\n".join(lines) + "\n"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GridMap)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.blocked == other.blocked
            and self.endpoints_a == other.endpoints_a
            and self.endpoints_b == other.endpoints_b
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.blocked))

    def __repr__(self):
        return (f"GridMap({self.rows}x{self.cols}, {len(self.blocked)} blocked, "
                f"{len(self.endpoints_a)}+{len(self.endpoints_b)} endpoints)")

    # -- internal ----------------------------------------------------------

    def _check_connected(self):
        free = [(r, c) for r in range(self.rows) for c in range(self.cols)
                if (r, c) not in self.blocked]
        if not free:
            raise DisconnectedMap("map has no free cells")
        seen = {free[0]}
        queue = deque([free[0]])
        while queue:
            for n in self.neighbors(queue.popleft()):
                if n not in seen:
                    seen.add(n)
                    queue.append(n)
        if len(seen) != len(free):
            raise DisconnectedMap(
                f"free space is disconnected ({len(seen)} of {len(free)} cells reachable)")


def load_map(text: str) -> GridMap:
    """Parse the grid file format.

    First line ``<rows> <cols>``, then one row per line using '.' free,
    '@' blocked, 'a' workstation endpoint, 'b' task endpoint.
    """
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty map text")
    header = lines[0].split()
    if len(header) != 2:
        raise ParseError(f"bad header line {lines[0]!r}, expected '<rows> <cols>'")
    try:
        rows, cols = int(header[0]), int(header[1])
    except ValueError as exc:
        raise ParseError(f"non-numeric header {lines[0]!r}") from exc
    body = [line for line in lines[1:] if line.strip() != ""]
    if len(body) != rows:
        raise ParseError(f"expected {rows} rows, found {len(body)}")

    blocked: set[Cell] = set()
    endpoints_a: set[Cell] = set()
    endpoints_b: set[Cell] = set()
    for r, line in enumerate(body):
        if len(line) != cols:
            raise ParseError(f"row {r} has {len(line)} cells, expected {cols}")
        for c, ch in enumerate(line):
            if ch == ".":
                continue
            if ch == "@":
                blocked.add((r, c))
            elif ch == "a":
                endpoints_a.add((r, c))
            elif ch == "b":
                endpoints_b.add((r, c))
            else:
                raise ParseError(f"bad character {ch!r} at row {r}, col {c}")

    grid = GridMap(rows, cols, blocked, endpoints_a, endpoints_b)
    if not grid.endpoints_a and not grid.endpoints_b:
        raise EmptyEndpointSet("map defines no endpoint cells")
    return grid


def load_map_file(path) -> GridMap:
    with open(path, "r", encoding="utf-8") as fh:
        return load_map(fh.read())


# -- benchmark-style layout generation -------------------------------------

WAREHOUSE_DIMS = (33, 46)
SORTING_DIMS = (37, 77)

_POD_SHAPE = (2, 5)          # pod block rows x cols in the warehouse layout
_SMALL_POD_SHAPE = (2, 3)    # used when the map is too small for full pods
_WAREHOUSE_FRACTION = 0.16
_SORTING_FRACTION = 0.10


def generate_layout(kind: str, seed: int, rows: int | None = None,
                    cols: int | None = None) -> GridMap:
    """Deterministically generate a warehouse or sorting-center style map.

    ``warehouse`` places rectangular pod blocks with task endpoints around
    them and workstations on the left/right borders, targeting ~16%
    obstacle density.  ``sorting`` places a regular lattice of single-cell
    chutes with drop-off endpoints around them and workstations on the
    top/bottom borders, targeting ~10% density.  Pure function of
    (kind, seed, dims).
    """
    rng = random.Random(seed)
    if kind == "warehouse":
        r, c = (rows, cols) if rows and cols else WAREHOUSE_DIMS
        return _warehouse(r, c, rng)
    if kind == "sorting":
        r, c = (rows, cols) if rows and cols else SORTING_DIMS
        return _sorting(r, c, rng)
    raise ValueError(f"unknown layout kind {kind!r} (expected 'warehouse' or 'sorting')")


def _warehouse(rows: int, cols: int, rng: random.Random) -> GridMap:
    margin_r, margin_c = 2, 2
    field_r = rows - 2 * margin_r
    field_c = cols - 2 * margin_c

    # Search pod shapes and grid counts together for the density target.
    best = None
    for pod_h, pod_w in ((2, 5), (2, 4), (2, 3), (1, 3), (1, 2)):
        if field_r < pod_h or field_c < pod_w:
            continue
        choice = _best_block_grid(rows * cols, field_r, field_c, pod_h, pod_w,
                                  _WAREHOUSE_FRACTION)
        if choice is None:
            continue
        score, n_r, n_c = choice
        if best is None or score < best[0]:
            best = (score, n_r, n_c, pod_h, pod_w)
    if best is None:
        raise ValueError(f"{rows}x{cols} too small for a warehouse layout")
    _, n_r, n_c, pod_h, pod_w = best
    pods = _spread_blocks(field_r, field_c, n_r, n_c, pod_h, pod_w,
                          margin_r, margin_c, rng)

    blocked: set[Cell] = set()
    for (top, left) in pods:
        for dr in range(pod_h):
            for dc in range(pod_w):
                blocked.add((top + dr, left + dc))

    endpoints_b = _adjacent_free(rows, cols, blocked)
    endpoints_a = _boundary_stations(rows, cols, rng,
                                     exclude=endpoints_b | blocked)
    return GridMap(rows, cols, blocked, endpoints_a, endpoints_b)


def _sorting(rows: int, cols: int, rng: random.Random) -> GridMap:
    margin = 2
    if rows < 2 * margin + 1 or cols < 2 * margin + 1:
        raise ValueError(f"{rows}x{cols} too small for a sorting layout")

    total = rows * cols
    best = None
    for step_r in (2, 3, 4):
        for step_c in (2, 3, 4):
            n = len(range(margin, rows - margin, step_r)) * \
                len(range(margin, cols - margin, step_c))
            frac = n / total
            score = abs(frac - _SORTING_FRACTION)
            if best is None or score < best[0]:
                best = (score, step_r, step_c)
    _, step_r, step_c = best

    # Jitter the lattice origin inside the slack left by the margins.
    off_r = margin + rng.randrange(min(step_r, max(1, rows - margin
                                                   - max(range(margin, rows - margin, step_r)))))
    off_c = margin + rng.randrange(min(step_c, max(1, cols - margin
                                                   - max(range(margin, cols - margin, step_c)))))
    chutes = {(r, c)
              for r in range(off_r, rows - margin, step_r)
              for c in range(off_c, cols - margin, step_c)}

    endpoints_b = _adjacent_free(rows, cols, chutes)
    endpoints_a = _boundary_stations(rows, cols, rng,
                                     exclude=endpoints_b | chutes)
    return GridMap(rows, cols, chutes, endpoints_a, endpoints_b)


def _best_block_grid(total, field_r, field_c, pod_h, pod_w, target):
    """Best (n_r, n_c) pod grid for the density target, or None if infeasible."""
    best = None
    max_r = (field_r + 1) // (pod_h + 1)
    max_c = (field_c + 1) // (pod_w + 1)
    for n_r in range(1, max_r + 1):
        for n_c in range(1, max_c + 1):
            frac = n_r * n_c * pod_h * pod_w / total
            score = (abs(frac - target), -n_r, -n_c)
            if best is None or score < best[0]:
                best = (score, n_r, n_c)
    return best


def _spread_blocks(field_r, field_c, n_r, n_c, pod_h, pod_w, margin_r, margin_c, rng):
    """Evenly space an n_r x n_c grid of blocks, with seed-jittered origin."""
    span_r = n_r * pod_h
    span_c = n_c * pod_w
    gap_r = (field_r - span_r) // max(1, n_r - 1) if n_r > 1 else 0
    gap_c = (field_c - span_c) // max(1, n_c - 1) if n_c > 1 else 0
    gap_r = max(1, gap_r) if n_r > 1 else 0
    gap_c = max(1, gap_c) if n_c > 1 else 0
    used_r = span_r + gap_r * (n_r - 1)
    used_c = span_c + gap_c * (n_c - 1)
    slack_r = max(0, field_r - used_r)
    slack_c = max(0, field_c - used_c)
    off_r = margin_r + (rng.randrange(slack_r + 1) if slack_r else 0)
    off_c = margin_c + (rng.randrange(slack_c + 1) if slack_c else 0)
    return [(off_r + i * (pod_h + gap_r), off_c + j * (pod_w + gap_c))
            for i in range(n_r) for j in range(n_c)]


def _adjacent_free(rows, cols, blocked) -> set[Cell]:
    out = set()
    for (r, c) in blocked:
        for dr, dc in NEIGHBOR_STEPS:
            n = (r + dr, c + dc)
            if 0 <= n[0] < rows and 0 <= n[1] < cols and n not in blocked:
                out.add(n)
    return out


def _boundary_stations(rows, cols, rng, exclude) -> set[Cell]:
    # All four borders qualify; a lifelong fleet of k agents can in the
    # worst case hold k same-color goals at once, so keep the station
    # count generous for desk-sized maps.
    candidates = (
        [(r, 0) for r in range(1, rows - 1)]
        + [(r, cols - 1) for r in range(1, rows - 1)]
        + [(0, c) for c in range(1, cols - 1)]
        + [(rows - 1, c) for c in range(1, cols - 1)]
    )
    pool = sorted(c for c in candidates if c not in exclude)
    if not pool:
        raise ValueError("no free boundary cells left for workstations")
    want = max(2, 3 * len(pool) // 4)
    return set(rng.sample(pool, min(want, len(pool))))
