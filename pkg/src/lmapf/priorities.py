"""Agent priority sets: partial orders over agents and their total extensions.

A priority pair (h, l) means agent h has precedence over agent l: whenever
l is replanned it must avoid h's path.  The pairs of a set always form a
DAG; topological orders are computed with Kahn's method taking the
smallest agent id first, which makes every derived order deterministic.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field


class CycleDetected(ValueError):
    """The priority pairs do not admit a topological order."""


@dataclass(frozen=True)
class PrioritySet:
    """An acyclic set of (higher, lower) agent-priority pairs."""

    pairs: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset(self.pairs))
        for (h, l) in self.pairs:
            if h == l:
                raise CycleDetected(f"self-priority {h} < {h}")
            if (l, h) in self.pairs:
                raise CycleDetected(f"both orientations of ({h}, {l}) present")
        # Full acyclicity check; cheap at the sizes PBS produces.
        topological_order(self, self.agents())

    def agents(self) -> list[int]:
        ids = set()
        for (h, l) in self.pairs:
            ids.add(h)
            ids.add(l)
        return sorted(ids)

    def with_pair(self, higher: int, lower: int) -> "PrioritySet":
        return PrioritySet(self.pairs | {(higher, lower)})

    def ancestors(self, agent: int) -> set[int]:
        """All agents with transitive precedence over ``agent``."""
        above = {l: set() for (h, l) in self.pairs}
        for (h, l) in self.pairs:
            above[l].add(h)
        out: set[int] = set()
        stack = [agent]
        while stack:
            for h in above.get(stack.pop(), ()):
                if h not in out:
                    out.add(h)
                    stack.append(h)
        return out

    def descendants(self, agent: int) -> set[int]:
        """All agents transitively below ``agent``."""
        below: dict[int, set[int]] = {}
        for (h, l) in self.pairs:
            below.setdefault(h, set()).add(l)
        out: set[int] = set()
        stack = [agent]
        while stack:
            for l in below.get(stack.pop(), ()):
                if l not in out:
                    out.add(l)
                    stack.append(l)
        return out

    def __contains__(self, pair: tuple[int, int]) -> bool:
        return pair in self.pairs

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(sorted(self.pairs))


def topological_order(ps: PrioritySet, agents: list[int]) -> list[int]:
    """Agents of ``ps`` (restricted to ``agents``) from high priority to low.

    Only agents that appear in some pair are ordered; the rest keep their
    existing plans and are not returned.  Kahn's method, smallest agent id
    first among the currently unconstrained.
    """
    agent_set = set(agents)
    nodes = sorted({a for pair in ps.pairs for a in pair if a in agent_set})
    indeg = {a: 0 for a in nodes}
    below: dict[int, list[int]] = {a: [] for a in nodes}
    for (h, l) in ps.pairs:
        if h in indeg and l in indeg:
            indeg[l] += 1
            below[h].append(l)

    ready = [a for a in nodes if indeg[a] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        a = heapq.heappop(ready)
        order.append(a)
        for l in below[a]:
            indeg[l] -= 1
            if indeg[l] == 0:
                heapq.heappush(ready, l)
    if len(order) != len(nodes):
        raise CycleDetected(f"priority pairs contain a cycle among {nodes}")
    return order


@dataclass(frozen=True)
class TotalPriority:
    """A full agent ordering, highest priority first."""

    order: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.order)) != len(self.order):
            raise ValueError("total priority repeats an agent")

    def __iter__(self):
        return iter(self.order)

    def __len__(self):
        return len(self.order)


def to_total(seed: PrioritySet, agents: list[int]) -> TotalPriority:
    """Deterministic total order over ``agents`` extending ``seed``.

    Kahn with smallest agent id first; agents not mentioned by the seed
    are merged in the same way, so an empty seed yields ascending ids.
    """
    agent_set = set(agents)
    indeg = {a: 0 for a in sorted(agent_set)}
    below: dict[int, list[int]] = {a: [] for a in indeg}
    for (h, l) in seed.pairs:
        if h in agent_set and l in agent_set:
            indeg[l] += 1
            below[h].append(l)

    ready = [a for a, d in indeg.items() if d == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        a = heapq.heappop(ready)
        order.append(a)
        for l in below[a]:
            indeg[l] -= 1
            if indeg[l] == 0:
                heapq.heappush(ready, l)
    if len(order) != len(indeg):
        raise CycleDetected("seed priorities contain a cycle")
    return TotalPriority(tuple(order))
