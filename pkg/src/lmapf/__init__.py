"""Lifelong multi-agent path finding with experience-seeded priority search."""

from lmapf.grid import (
    Cell,
    DisconnectedMap,
    EmptyEndpointSet,
    GridMap,
    ParseError,
    generate_layout,
    load_map,
    load_map_file,
)
from lmapf.spacetime import (
    BACKEND,
    Path,
    ReservationTable,
    build_reservations,
    plan_path,
)
from lmapf.priorities import (
    CycleDetected,
    PrioritySet,
    TotalPriority,
    to_total,
    topological_order,
)
from lmapf.pbs import (
    Conflict,
    InfeasibleSeed,
    NotSolved,
    PTNode,
    SolveResult,
    SolveStats,
    WMAPFQuery,
    detect_conflicts,
    evaluate_node,
    extract_seed,
    pbs_solve,
)
from lmapf.expbs import expbs_solve, prioritized_solve
from lmapf.lifelong import (
    InsufficientCells,
    LifelongConfig,
    RunReport,
    TaskAssigner,
    default_lookahead,
    initial_query,
    next_query,
    run_lifelong,
    scenario_query,
)

__version__ = "0.1.0"
