"""Guard a prefix vertex (or edge) and push inside the robber's component."""

from __future__ import annotations

from ..game import Configuration
from ..graph import (
    Graph,
    bfs_distances,
    bits,
    closed_neighborhood,
    components_after_removal,
    popcount,
    shortest_path,
)
from .base import PursuitMemory, capture_move
from .push import PushGroup, _PushStrategy


def _largest_component(g: Graph, removed: int) -> int:
    comps = components_after_removal(g, removed)
    return max((popcount(c) for c in comps), default=0)


class GuardRecurse(_PushStrategy):
    """Guards stay on the prefix; ``k - 2`` pushers hunt in the robber's component.

    ``prefix="vertex"`` uses ``k - 1`` cops (intended for (P_1+P_k)-free hosts),
    ``prefix="edge"`` uses ``k`` cops (intended for (P_2+P_k)-free hosts).
    The prefix is the vertex or edge whose removal (with its closed
    neighbourhood) leaves the smallest largest component.
    """

    def __init__(self, prefix: str, k: int):
        if prefix not in ("vertex", "edge"):
            raise ValueError("prefix must be 'vertex' or 'edge'")
        if k < 3:
            raise ValueError("guard_recurse needs k >= 3")
        self.prefix = prefix
        self.k = k
        self.name = f"guard_{prefix}({k})"

    @property
    def n_guards(self) -> int:
        return 1 if self.prefix == "vertex" else 2

    def required_cops(self, g):
        return self.k - 2 + self.n_guards

    def choose_prefix(self, g: Graph) -> tuple[int, ...]:
        if self.prefix == "vertex":
            return (min(range(g.n), key=lambda v: (_largest_component(g, g.closed(v)), v)),)
        edges = g.edges()
        if not edges:
            raise ValueError("edge prefix needs a host with at least one edge")
        return min(edges, key=lambda e: (_largest_component(g, closed_neighborhood(g, 1 << e[0] | 1 << e[1])), e))

    def init(self, g):
        prefix = self.choose_prefix(g)
        v0 = prefix[0]
        # guards are labels 0 (on v0) and 1 (on v1); pushers start on v0
        cops = list(prefix) + [v0] * (self.k - 2)
        mem = PursuitMemory(g, cops, phase="place")
        mem.extra["prefix"] = prefix
        mem.extra["guarded"] = closed_neighborhood(g, sum(1 << v for v in prefix))
        mem.extra["pushers"] = list(range(self.n_guards, len(cops)))
        mem.log(f"guards on {prefix}")
        return tuple(cops), mem

    def step(self, mem, conf: Configuration):
        g = mem.g
        robber = conf.robber
        take = capture_move(g, mem.cops, robber)
        if take is not None:
            return self._commit(mem, take, robber)
        pushers = mem.extra["pushers"]
        if "region" not in mem.extra:
            region = next(c for c in components_after_removal(g, mem.extra["guarded"]) if c >> robber & 1)
            mem.extra["region"] = region
            group = PushGroup(pushers, region)
            group.reset(mem)
            mem.extra["group"] = group
            mem.phase = "enter"
            mem.log(f"robber component {sorted(bits(region))}")
        region = mem.extra["region"]
        group: PushGroup = mem.extra["group"]
        move = list(mem.cops)
        if mem.phase == "enter":
            spot = mem.cops[pushers[0]]
            if not region >> spot & 1:
                # head for a fixed entry vertex: chasing the robber lets it
                # swing the blob back and forth outside the region
                if "entry" not in mem.extra:
                    dist = bfs_distances(g, spot)
                    mem.extra["entry"] = min(bits(region), key=lambda v: (dist[v], v))
                nxt = shortest_path(g, spot, mem.extra["entry"])[1]
                for c in pushers:
                    move[c] = nxt
                return self._commit(mem, move, robber)
            group.reset(mem)
        group.observe(mem, robber)
        moves = group.moves(mem, robber)
        for c in pushers:
            move[c] = moves[c]
        out = self._commit(mem, move, robber)
        if self.validate:
            group.check_invariant(mem)
            assert all(region >> move[c] & 1 for c in pushers), "pusher left the robber component"
        return out
