# Dev scratch: check the criterion-5/7/9 trends at desk scale.
import statistics
import time

from lmapf.grid import generate_layout
from lmapf.lifelong import LifelongConfig, run_lifelong

grid = generate_layout("warehouse", 0, 15, 21)
print(f"map: {grid.rows}x{grid.cols}, blocked={len(grid.blocked)} "
      f"({len(grid.blocked)/(grid.rows*grid.cols):.1%}), "
      f"a={len(grid.endpoints_a)}, b={len(grid.endpoints_b)}")

def run(solver, k, seed, **kw):
    cfg = LifelongConfig(w=10, h=5, delta=1, width_limit=10, k=k,
                         total_timesteps=100, query_deadline=None, seed=seed,
                         solver=solver, **kw)
    return run_lifelong(cfg, grid)

# criterion 5 + 9: 20 runs, k=20
t0 = time.perf_counter()
depth = {"rhcr": [], "exrhcr": []}
expd = {"rhcr": [], "exrhcr": []}
cost = {"rhcr": 0, "exrhcr": 0}
fails = 0
for seed in range(20):
    for solver in ("rhcr", "exrhcr"):
        rep = run(solver, 20, seed)
        depth[solver].append(statistics.fmean(r.pt_depth_of_solution for r in rep.records))
        expd[solver].append(statistics.fmean(r.pt_nodes_expanded for r in rep.records))
        cost[solver] += rep.total_cost
        fails += sum(r.status != "solved" for r in rep.records)
print(f"[{time.perf_counter()-t0:.1f}s] failures: {fails}")
print("mean depth  rhcr:", round(statistics.fmean(depth['rhcr']), 3),
      " exrhcr:", round(statistics.fmean(depth['exrhcr']), 3))
print("mean expand rhcr:", round(statistics.fmean(expd['rhcr']), 3),
      " exrhcr:", round(statistics.fmean(expd['exrhcr']), 3))
print("sum depth   rhcr:", round(sum(depth['rhcr']), 3), " exrhcr:", round(sum(depth['exrhcr']), 3))
print("cost rhcr:", cost['rhcr'], " exrhcr:", cost['exrhcr'],
      " rel diff:", abs(cost['exrhcr'] - cost['rhcr']) / cost['rhcr'])
per_run_worse_d = sum(1 for a, b in zip(depth['exrhcr'], depth['rhcr']) if a > b)
per_run_worse_e = sum(1 for a, b in zip(expd['exrhcr'], expd['rhcr']) if a > b)
print("runs where exrhcr worse: depth", per_run_worse_d, "expansions", per_run_worse_e)

# criterion 7: tot vs exp on easy instances; fallback rate vs k
print("\n-- tot vs exp --")
for k in (10, 20, 30):
    rt = {"exrhcr": [], "exrhcr-tot": []}
    fb = {"exrhcr": 0, "exrhcr-tot": 0}
    n = {"exrhcr": 0, "exrhcr-tot": 0}
    dep = []
    for seed in range(10):
        for solver in ("exrhcr", "exrhcr-tot"):
            rep = run(solver, k, seed)
            rt[solver].extend(r.runtime for r in rep.records)
            seeded = [r for r in rep.records if r.solver_used != "pbs"]
            fb[solver] += sum(r.fallback_used for r in seeded)
            n[solver] += len(seeded)
        rep_r = run("rhcr", k, seed)
        dep.append(statistics.fmean(r.pt_depth_of_solution for r in rep_r.records))
    print(f"k={k}: rhcr mean depth {statistics.fmean(dep):.3f} | "
          f"mean rt exp {statistics.fmean(rt['exrhcr'])*1000:.2f}ms "
          f"tot {statistics.fmean(rt['exrhcr-tot'])*1000:.2f}ms | "
          f"fallback exp {fb['exrhcr']}/{n['exrhcr']} "
          f"tot {fb['exrhcr-tot']}/{n['exrhcr-tot']}")
