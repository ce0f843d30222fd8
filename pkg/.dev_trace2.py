# Dev scratch: lifelong toy run + backend equivalence + perf smoke.
import random
import time

from lmapf.grid import GridMap, load_map, generate_layout
from lmapf.pbs import WMAPFQuery, pbs_solve, detect_conflicts
from lmapf.expbs import expbs_solve
from lmapf.priorities import PrioritySet
from lmapf.lifelong import LifelongConfig, run_lifelong
from lmapf import spacetime
from lmapf import _spacetime_py, _spacetime_cy

TOY = """3 5
.b..b
a....
a.b.a
"""

grid = load_map(TOY)
starts = [(2, 0), (2, 4), (0, 4)]
goals = [(0, 4), (0, 1), (2, 2)]

for solver in ("exrhcr", "rhcr", "exrhcr-tot"):
    cfg = LifelongConfig(w=4, h=2, delta=2, width_limit=10, k=3,
                         total_timesteps=6, query_deadline=None, seed=7,
                         solver=solver)
    rep = run_lifelong(cfg, grid, scenario=(starts, goals))
    print(solver, "used:", [r.solver_used for r in rep.records],
          "status:", [r.status for r in rep.records],
          "expanded:", [r.pt_nodes_expanded for r in rep.records],
          "tasks:", rep.tasks_completed, "throughput:", rep.throughput)

# determinism
cfg = LifelongConfig(w=4, h=2, delta=2, width_limit=10, k=3,
                     total_timesteps=6, query_deadline=None, seed=7, solver="exrhcr")
r1 = run_lifelong(cfg, grid, scenario=(starts, goals))
r2 = run_lifelong(cfg, grid, scenario=(starts, goals))
print("deterministic:", r1.trajectory == r2.trajectory,
      r1.tasks_completed == r2.tasks_completed)
print("trajectory len:", len(r1.trajectory))

# backend equivalence on random instances
rng = random.Random(42)
mismatches = 0
t_py = t_cy = 0.0
for trial in range(300):
    rows, cols = rng.randint(3, 8), rng.randint(3, 8)
    blocked = set()
    for r in range(rows):
        for c in range(cols):
            if rng.random() < 0.2:
                blocked.add((r, c))
    try:
        g = GridMap(rows, cols, blocked)
    except Exception:
        continue
    free = g.free_cells
    if len(free) < 6:
        continue
    cells = rng.sample(free, min(len(free), 6))
    start, goal = cells[0], cells[1]
    w = rng.choice([2, 4, 6])
    # random reservations from 2 fake paths
    paths = []
    for agent, s in enumerate(cells[2:4]):
        cur, pc = s, [s]
        for _ in range(w + 1):
            nbrs = g.neighbors(cur) + [cur]
            cur = rng.choice(nbrs)
            pc.append(cur)
        paths.append(spacetime.Path(agent, tuple(pc)))
    res = spacetime.build_reservations(paths, w)
    n_cells = rows * cols
    vres = {t * n_cells + (r * cols + c) for ((r, c), t) in res.vertex if t <= w}
    eres = {(t * n_cells + (ur * cols + uc)) * n_cells + (vr * cols + vc)
            for ((ur, uc), (vr, vc), t) in res.moves if t < w}
    args = (cols, n_cells, g.blocked_flat, g.dist_field(goal),
            g.index(start), g.index(goal), w, vres, eres)
    t0 = time.perf_counter(); out_py = _spacetime_py.plan(*args); t_py += time.perf_counter() - t0
    t0 = time.perf_counter(); out_cy = _spacetime_cy.plan(*args); t_cy += time.perf_counter() - t0
    if out_py != out_cy:
        mismatches += 1
        print("MISMATCH", trial, out_py, out_cy)
print("backend mismatches:", mismatches, f"py={t_py*1000:.1f}ms cy={t_cy*1000:.1f}ms")

# reduction identity: expbs(seed empty, no limit) vs pbs on randoms
bad = 0
for trial in range(30):
    g = generate_layout("warehouse", trial, 12, 16)
    free = sorted(g.free_cells)
    rng2 = random.Random(trial)
    k = rng2.randint(3, 8)
    sts = rng2.sample(free, k)
    gls = [rng2.choice(free) for _ in range(k)]
    q = WMAPFQuery(g, tuple(zip(sts, gls)), w=6)
    a = pbs_solve(q, deadline=None)
    b = expbs_solve(q, PrioritySet(), width_limit=None, deadline=None)
    same = (a.status == b.status and a.paths == b.paths and a.seed == b.seed
            and a.stats.pt_nodes_expanded == b.stats.pt_nodes_expanded
            and a.stats.fallback_used == b.stats.fallback_used)
    if not same:
        bad += 1
        print("REDUCTION MISMATCH", trial, a.status, b.status)
print("reduction mismatches:", bad)

# perf smoke: one desk-scale lifelong run
cfg = LifelongConfig(w=10, h=5, delta=1, width_limit=10, k=20,
                     total_timesteps=50, query_deadline=None, seed=1, solver="exrhcr")
g = generate_layout("warehouse", 0, 15, 21)
t0 = time.perf_counter()
rep = run_lifelong(cfg, g)
print(f"desk run: {time.perf_counter()-t0:.2f}s, queries={len(rep.records)}, "
      f"success={rep.success_rate:.2f}, tasks={rep.tasks_completed}")
