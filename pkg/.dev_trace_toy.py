# Dev scratch: trace the 3x5 toy instance end to end (not part of the package).
from lmapf.grid import GridMap
from lmapf.pbs import WMAPFQuery, pbs_solve, detect_conflicts, extract_seed
from lmapf.expbs import expbs_solve, prioritized_solve
from lmapf.priorities import PrioritySet, to_total
from lmapf.lifelong import LifelongConfig, run_lifelong
from lmapf import spacetime

print("backend:", spacetime.BACKEND)

grid = GridMap(3, 5, blocked=set())
# 1-based appendix coords -> 0-based: a1 (3,1)->(1,5); a2 (3,5)->(1,2); a3 (1,5)->(3,3)
starts = [(2, 0), (2, 4), (0, 4)]
goals = [(0, 4), (0, 1), (2, 2)]
q0 = WMAPFQuery(grid, tuple(zip(starts, goals)), w=4)

res = pbs_solve(q0, deadline=None)
print("q0 status:", res.status)
for a in range(3):
    print(f"  a{a+1} path:", res.paths[a].cells, "cost", res.paths[a].cost)
print("  seed:", sorted(res.seed.pairs))
print("  depth:", res.stats.pt_depth_of_solution)
print("  expanded:", res.stats.pt_nodes_expanded, "generated:", res.stats.pt_nodes_generated)
print("  max width:", res.stats.pt_max_width)
print("  conflicts in solution:", detect_conflicts([res.paths[a] for a in range(3)], 4))

# q1 = positions after h=2 of the q0 solution, same goals
h = 2
starts1 = [res.paths[a].at(h) for a in range(3)]
q1 = WMAPFQuery(grid, tuple(zip(starts1, goals)), w=4)
seed = extract_seed(res)
r1 = expbs_solve(q1, seed, width_limit=10, deadline=None)
print("q1 exPBS status:", r1.status, "expanded:", r1.stats.pt_nodes_expanded,
      "fallback:", r1.stats.fallback_used, "depth:", r1.stats.pt_depth_of_solution)

r1_pbs = pbs_solve(q1, deadline=None)
print("q1 vanilla PBS expanded:", r1_pbs.stats.pt_nodes_expanded,
      "generated:", r1_pbs.stats.pt_nodes_generated, "depth:", r1_pbs.stats.pt_depth_of_solution)

# q2 from q1's exPBS solution
starts2 = [r1.paths[a].at(h) for a in range(3)]
q2 = WMAPFQuery(grid, tuple(zip(starts2, goals)), w=4)
r2 = expbs_solve(q2, seed, width_limit=10, deadline=None)
r2_pbs = pbs_solve(q2, deadline=None)
print("q2 exPBS expanded:", r2.stats.pt_nodes_expanded, "| vanilla:", r2_pbs.stats.pt_nodes_expanded)

# prioritized on q0 with the appendix total order (a1, a2, a3)
order = to_total(seed, q0.agent_ids())
print("total order:", order.order)
rp = prioritized_solve(q0, order, deadline=None)
print("prioritized q0:", rp.status, "cost:", rp.cost, "fallback:", rp.stats.fallback_used)
for a in range(3):
    print(f"  a{a+1}:", rp.paths[a].cells)

# root-paths-only view: what does the empty root produce?
from lmapf.pbs import PTNode, evaluate_node
root = PTNode(priorities=PrioritySet(), paths={}, depth=0)
evaluate_node(q0, root, changed=None)
print("root paths:")
for a in range(3):
    print(f"  a{a+1}:", root.paths[a].cells)
confs = detect_conflicts([root.paths[a] for a in range(3)], 4)
print("root conflicts:", [(c.kind, c.agents, c.t, c.cells) for c in confs])
