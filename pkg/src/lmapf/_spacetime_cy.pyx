# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled windowed space-time A* kernel.

Twin of ``lmapf._spacetime_py`` -- same state space, same packed heap
keys, same tie-breaking, bit-identical output.  Keep the two files in
sync; the equivalence test in tests/test_spacetime.py compares them on
random instances.
"""

from libc.stdlib cimport malloc, free

BACKEND = "cython"

T_BITS = 12
TICK_BITS = 24
T_SLOTS = 1 << T_BITS
TICK_LIMIT = 1 << TICK_BITS
F_LIMIT = 1 << 27

cdef long long _T_BITS = 12
cdef long long _TICK_BITS = 24
cdef long long _T_SLOTS = 1 << 12
cdef long long _TICK_LIMIT = 1 << 24


cdef struct HeapItem:
    long long key
    long long state


cdef inline void _heap_push(HeapItem* heap, Py_ssize_t* size, long long key,
                            long long state) nogil:
    cdef Py_ssize_t i = size[0]
    cdef Py_ssize_t p
    heap[i].key = key
    heap[i].state = state
    size[0] += 1
    while i > 0:
        p = (i - 1) >> 1
        if heap[p].key <= heap[i].key:
            break
        heap[p], heap[i] = heap[i], heap[p]
        i = p


cdef inline HeapItem _heap_pop(HeapItem* heap, Py_ssize_t* size) nogil:
    cdef HeapItem top = heap[0]
    cdef Py_ssize_t i = 0, child
    size[0] -= 1
    cdef Py_ssize_t n = size[0]
    if n > 0:
        heap[0] = heap[n]
        while True:
            child = 2 * i + 1
            if child >= n:
                break
            if child + 1 < n and heap[child + 1].key < heap[child].key:
                child += 1
            if heap[i].key <= heap[child].key:
                break
            heap[i], heap[child] = heap[child], heap[i]
            i = child
    return top


def plan(int cols, int n_cells, const unsigned char[:] blocked, const int[:] dist,
         int start, int goal, int w, set vres, set eres):
    """See lmapf._spacetime_py.plan -- identical contract and results."""
    if dist[start] < 0:
        return None, 0
    if w >= T_SLOTS - 1 or w + dist[start] >= F_LIMIT:
        raise ValueError(f"window {w} out of supported range")

    cdef long long n = n_cells
    cdef long long n_states = (w + 1) * n
    cdef unsigned char* vres_map = <unsigned char*> malloc(n_states)
    cdef long long* parent = <long long*> malloc(n_states * sizeof(long long))
    cdef HeapItem* heap = <HeapItem*> malloc(n_states * sizeof(HeapItem))
    if vres_map == NULL or parent == NULL or heap == NULL:
        free(vres_map); free(parent); free(heap)
        raise MemoryError()

    cdef long long i
    for i in range(n_states):
        vres_map[i] = 0
        parent[i] = -2          # -2 unvisited, -1 root
    cdef long long packed
    for packed in vres:
        if 0 <= packed < n_states:
            vres_map[packed] = 1

    cdef Py_ssize_t heap_size = 0
    cdef long long tick = 0
    cdef long long state, cell, t, nt, ncell, nstate, key, f, tau
    cdef int row_col, si
    cdef long long steps[5]
    steps[0] = -cols; steps[1] = 1; steps[2] = cols; steps[3] = -1; steps[4] = 0

    parent[start] = -1
    key = ((<long long>dist[start] << _T_BITS) | (_T_SLOTS - 1)) << _TICK_BITS
    _heap_push(heap, &heap_size, key, start)
    cdef long long expansions = 0
    cdef bint tail_ok, swap_reserved
    cdef HeapItem item

    try:
        while heap_size > 0:
            item = _heap_pop(heap, &heap_size)
            state = item.state
            t = state // n
            cell = state % n
            expansions += 1

            if cell == goal:
                tail_ok = True
                for tau in range(t, w + 1):
                    if vres_map[tau * n + goal]:
                        tail_ok = False
                        break
                if tail_ok:
                    return _reconstruct(parent, state, n), expansions
            if t == w:
                path = _reconstruct(parent, state, n)
                path.extend(_static_tail(cols, n_cells, blocked, dist, cell))
                return path, expansions

            nt = t + 1
            row_col = <int>(cell % cols)
            for si in range(5):
                if si == 1 and row_col == cols - 1:
                    continue
                if si == 3 and row_col == 0:
                    continue
                ncell = cell + steps[si]
                if ncell < 0 or ncell >= n:
                    continue
                if si != 4 and blocked[ncell]:
                    continue
                if dist[ncell] < 0:
                    continue
                nstate = nt * n + ncell
                if parent[nstate] != -2:
                    continue
                if vres_map[nstate]:
                    continue
                if si != 4:
                    swap_reserved = ((t * n + ncell) * n + cell) in eres
                    if swap_reserved:
                        continue
                parent[nstate] = state
                tick += 1
                if tick >= _TICK_LIMIT:
                    raise ValueError("search exceeded tick capacity")
                f = nt + dist[ncell]
                key = ((f << _T_BITS) | (_T_SLOTS - 1 - nt)) << _TICK_BITS | tick
                _heap_push(heap, &heap_size, key, nstate)

        return None, expansions
    finally:
        free(vres_map)
        free(parent)
        free(heap)


cdef list _reconstruct(long long* parent, long long state, long long n):
    cdef list cells = []
    while state != -1:
        cells.append(<object>(state % n))
        state = parent[state]
    cells.reverse()
    return cells


cdef list _static_tail(int cols, int n_cells, const unsigned char[:] blocked,
                       const int[:] dist, long long cell):
    cdef list tail = []
    cdef long long steps[4]
    steps[0] = -cols; steps[1] = 1; steps[2] = cols; steps[3] = -1
    cdef long long d = dist[cell]
    cdef long long ncell
    cdef int row_col, si
    cdef bint moved
    while d > 0:
        row_col = <int>(cell % cols)
        moved = False
        for si in range(4):
            if si == 1 and row_col == cols - 1:
                continue
            if si == 3 and row_col == 0:
                continue
            ncell = cell + steps[si]
            if ncell < 0 or ncell >= n_cells or blocked[ncell]:
                continue
            if dist[ncell] == d - 1:
                cell = ncell
                d -= 1
                tail.append(<object>cell)
                moved = True
                break
        if not moved:
            raise AssertionError("distance field descent failed")
    return tail
