# Dev scratch: find a desk map where exrhcr-tot fallback grows with k.
import statistics
from lmapf.grid import generate_layout
from lmapf.lifelong import LifelongConfig, run_lifelong

for kind, rows, cols, w, h in (
    ("warehouse", 10, 14, 10, 5),
    ("warehouse", 12, 16, 10, 5),
    ("sorting", 10, 14, 10, 5),
    ("warehouse", 10, 14, 16, 4),
):
    grid = generate_layout(kind, 0, rows, cols)
    line = [f"{kind} {rows}x{cols} w={w} h={h} (free={len(grid.free_cells)}):"]
    for k in (10, 20, 30):
        fb = n = fails = 0
        rts = {"exrhcr": [], "exrhcr-tot": []}
        for seed in range(10):
            for solver in ("exrhcr", "exrhcr-tot"):
                cfg = LifelongConfig(w=w, h=h, delta=1, width_limit=10, k=k,
                                     total_timesteps=60, query_deadline=2.0,
                                     seed=seed, solver=solver)
                rep = run_lifelong(cfg, grid)
                rts[solver].extend(r.runtime for r in rep.records)
                if solver == "exrhcr-tot":
                    seeded = [r for r in rep.records if r.solver_used != "pbs"]
                    fb += sum(r.fallback_used for r in seeded)
                    n += len(seeded)
                    fails += sum(r.status != "solved" for r in rep.records)
        line.append(f"k={k}: fb {fb}/{n} fails={fails} "
                    f"rt_exp={statistics.fmean(rts['exrhcr'])*1e3:.1f}ms "
                    f"rt_tot={statistics.fmean(rts['exrhcr-tot'])*1e3:.1f}ms")
    print("\n  ".join(line))
