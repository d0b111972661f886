"""Path-pushing cop strategies.

A group of pushers first travels as one blob toward the robber.  Once the
robber stops losing ground, the blob sits on the first vertex of a tracked
induced path ending at the robber, and every cop turn either peels one cop
off the blob onto the next path vertex or, when every pusher already holds
its own vertex, advances the whole train one step.  When the robber steps
next to an earlier path vertex the path is cut back to that vertex so it
stays induced.  On a host without an induced path on ``k`` vertices the path
never outgrows ``k - 1`` vertices, so ``k - 2`` pushers force a capture.
"""

from __future__ import annotations

from ..game import Configuration
from ..graph import Graph, bfs_distances, bits, eccentricity, shortest_path
from .base import PursuitMemory, Strategy, capture_move, step_toward


def center_vertex(g: Graph, within: int | None = None) -> int:
    """Least vertex of minimum eccentricity (inside ``within`` if given)."""
    if within is None:
        return min(range(g.n), key=lambda v: (eccentricity(g, v), v))

    def ecc(v):
        return max(d for d in bfs_distances(g, v, within) if d is not None)

    return min(bits(within), key=lambda v: (ecc(v), v))


def is_induced_path(g: Graph, path) -> bool:
    if len(set(path)) != len(path):
        return False
    for i, u in enumerate(path):
        for j in range(i + 1, len(path)):
            if g.has_edge(u, path[j]) != (j == i + 1):
                return False
    return True


def safe_vertices(g: Graph, cops, robber: int) -> list[int]:
    """Robber options that are not next to (or on) any cop."""
    covered = 0
    for c in cops:
        covered |= g.closed(c)
    return list(bits(g.closed(robber) & ~covered))


class PushGroup:
    """Push machinery for a subset of cop labels confined to ``region``.

    Memory layout: ``mem.tracked_path`` is the induced path, ``mem.extra``
    keys ``slots`` (label -> path index), ``gap`` (blob distance before the
    last approach step) and ``dropped`` (vertex the train last left behind).
    """

    def __init__(self, labels: list[int], region: int | None = None):
        self.labels = list(labels)
        self.region = region

    def reset(self, mem: PursuitMemory) -> None:
        mem.phase = "approach"
        mem.tracked_path = []
        mem.extra.update(gap=None, slots={}, dropped=None)

    def _dist(self, g: Graph, u: int, v: int) -> int:
        d = bfs_distances(g, u, self.region)[v]
        return g.n if d is None else d

    def observe(self, mem: PursuitMemory, robber: int) -> str | None:
        """Fold the robber's last move into the tracked path.

        Returns ``"extend"``, ``"reanchor"`` or ``None`` when nothing changed.
        """
        if mem.phase != "push":
            return None
        path = mem.tracked_path
        if robber == path[-1]:
            return None
        reach = mem.g.closed(robber)
        i = next(j for j, v in enumerate(path) if reach >> v & 1)
        if i <= max(mem.extra["slots"].values()):
            return None  # next to a cop: the capture check takes over
        simple = i == len(path) - 1
        mem.tracked_path = path[: i + 1] if path[i] == robber else path[: i + 1] + [robber]
        if simple:
            return "extend"
        mem.extra["reanchors"] = mem.extra.get("reanchors", 0) + 1
        mem.log(f"reanchor: robber at {robber} touches tracked vertex {path[i]}")
        return "reanchor"

    def start_push(self, mem: PursuitMemory, blob: int, robber: int) -> None:
        mem.phase = "push"
        mem.tracked_path = shortest_path(mem.g, blob, robber, self.region)
        mem.extra["slots"] = {c: 0 for c in self.labels}
        mem.extra["dropped"] = None
        mem.log(f"push from {blob} at distance {len(mem.tracked_path) - 1}")

    def moves(self, mem: PursuitMemory, robber: int) -> dict[int, int]:
        g = mem.g
        pos = {c: mem.cops[c] for c in self.labels}
        if mem.phase == "approach":
            spots = set(pos.values())
            if len(spots) > 1:
                leader = min(self.labels, key=lambda c: (self._dist(g, pos[c], robber), c))
                home = pos[leader]
                return {c: step_toward(g, p, home, self.region) for c, p in pos.items()}
            blob = spots.pop()
            d = self._dist(g, blob, robber)
            gap = mem.extra.get("gap")
            if gap is None or d < gap:
                mem.extra["gap"] = d
                nxt = step_toward(g, blob, robber, self.region)
                return {c: nxt for c in self.labels}
            self.start_push(mem, blob, robber)
        return self._push_moves(mem)

    def _push_moves(self, mem: PursuitMemory) -> dict[int, int]:
        path = mem.tracked_path
        slots = mem.extra["slots"]
        front = max(slots.values())
        blob = sorted(c for c in self.labels if slots[c] == front)
        if len(blob) >= 2:
            for c in blob[1:]:
                slots[c] = front + 1
        else:
            # train advance: dropping the rear vertex keeps every slot index
            mem.extra["dropped"] = path[0]
            mem.tracked_path = path = path[1:]
        return {c: path[slots[c]] for c in self.labels}

    def all_peeled(self, mem: PursuitMemory) -> bool:
        return mem.phase == "push" and len(set(mem.extra["slots"].values())) == len(self.labels)

    def check_invariant(self, mem: PursuitMemory) -> None:
        if mem.phase != "push":
            return
        path = mem.tracked_path
        assert is_induced_path(mem.g, path), f"tracked path {path} is not induced"
        slots = mem.extra["slots"]
        held = sorted(set(slots.values()))
        assert held == list(range(len(held))), f"cops do not hold a prefix of {path}"
        for c in self.labels:
            assert mem.cops[c] == path[slots[c]], "cop positions drifted from the tracked path"


class _PushStrategy(Strategy):
    validate = True

    def _opening(self, g: Graph, count: int) -> tuple[tuple[int, ...], PursuitMemory]:
        v = center_vertex(g)
        mem = PursuitMemory(g, [v] * count)
        return tuple(mem.cops), mem

    @staticmethod
    def _commit(mem: PursuitMemory, move, robber: int):
        mem.cops = list(move)
        mem.last_robber = robber
        dist = bfs_distances(mem.g, robber)
        mem.t = min(dist[c] for c in move)
        return tuple(move), mem


class PathPush(_PushStrategy):
    """``k - 2`` pushers; intended for hosts without an induced ``P_k``."""

    def __init__(self, k: int, region: int | None = None):
        if k < 3:
            raise ValueError("path_push needs k >= 3")
        self.k = k
        self.region = region
        self.name = f"path_push({k})"

    def required_cops(self, g):
        return self.k - 2

    def init(self, g):
        cops, mem = self._opening(g, self.k - 2)
        mem.extra["group"] = group = PushGroup(list(range(self.k - 2)), self.region)
        group.reset(mem)
        return cops, mem

    def step(self, mem, conf: Configuration):
        take = capture_move(mem.g, mem.cops, conf.robber)
        if take is not None:
            return self._commit(mem, take, conf.robber)
        group: PushGroup = mem.extra["group"]
        group.observe(mem, conf.robber)
        moves = group.moves(mem, conf.robber)
        out = self._commit(mem, [moves[c] for c in range(len(mem.cops))], conf.robber)
        if self.validate:
            group.check_invariant(mem)
        return out


class CycleTrap(_PushStrategy):
    """``l`` pushers plus one waiting cop; intended for {H1(l), H2(l)}-free hosts.

    The waiter chases until the robber's trail closes on itself, then parks
    on the nearest vertex of that closed trail while the pushers keep
    driving the robber around it.
    """

    def __init__(self, l: int):
        if l < 1:
            raise ValueError("cycle_trap needs l >= 1")
        self.l = l
        self.name = f"cycle_trap({l})"

    def required_cops(self, g):
        return self.l + 1

    def init(self, g):
        cops, mem = self._opening(g, self.l + 1)
        mem.extra["group"] = group = PushGroup(list(range(self.l)))
        group.reset(mem)
        mem.extra["trail"] = []
        mem.extra["restarts"] = 0
        return cops, mem

    def _note_trail(self, mem: PursuitMemory, robber: int) -> None:
        trail = mem.extra["trail"]
        if mem.trap_cycle is None and robber in trail:
            cycle = tuple(trail[trail.index(robber):])
            if len(cycle) >= 3:
                mem.trap_cycle = cycle
                mem.log(f"trail closed into cycle {cycle}")
        trail.append(robber)

    def step(self, mem, conf: Configuration):
        g = mem.g
        robber = conf.robber
        self._note_trail(mem, robber)
        take = capture_move(g, mem.cops, robber)
        if take is not None:
            return self._commit(mem, take, robber)
        group: PushGroup = mem.extra["group"]
        if mem.extra.pop("restart", False):
            group.reset(mem)
        group.observe(mem, robber)
        moves = group.moves(mem, robber)
        waiter = self.l
        here = mem.cops[waiter]
        if mem.trap_cycle is None:
            moves[waiter] = step_toward(g, here, robber)
        else:
            dist = bfs_distances(g, here)
            target = min(mem.trap_cycle, key=lambda v: (dist[v], v))
            moves[waiter] = step_toward(g, here, target)
        move = [moves[c] for c in range(len(mem.cops))]
        if group.all_peeled(mem) and len(safe_vertices(g, [move[c] for c in group.labels], robber)) > 1:
            mem.extra["restarts"] += 1
            mem.extra["restart"] = True
            mem.log("robber has several escape vertices; push restarts")
        out = self._commit(mem, move, robber)
        if self.validate:
            group.check_invariant(mem)
        return out


class ClawCycle(_PushStrategy):
    """``k - 3`` pushers; intended for {P_k, claw}-free hosts.

    When the robber escapes the advancing train onto a vertex next to the
    vertex the train has just vacated, the rear cop steps back onto that
    vertex while the others advance, covering both ends of the closed cycle.
    """

    def __init__(self, k: int):
        if k < 5:
            raise ValueError("claw_cycle needs k >= 5")
        self.k = k
        self.name = f"claw_cycle({k})"

    def required_cops(self, g):
        return self.k - 3

    def init(self, g):
        cops, mem = self._opening(g, self.k - 3)
        mem.extra["group"] = group = PushGroup(list(range(self.k - 3)))
        group.reset(mem)
        return cops, mem

    def step(self, mem, conf: Configuration):
        g = mem.g
        robber = conf.robber
        take = capture_move(g, mem.cops, robber)
        if take is not None:
            return self._commit(mem, take, robber)
        group: PushGroup = mem.extra["group"]
        if mem.phase == "pin":
            mem.log("pin did not capture; push restarts")
            mem.trap_cycle = None
            group.reset(mem)
        dropped = mem.extra.get("dropped")
        change = group.observe(mem, robber)
        if change == "extend" and dropped is not None and g.has_edge(robber, dropped) \
                and group.all_peeled(mem):
            return self._pin(mem, group, dropped, robber)
        moves = group.moves(mem, robber)
        out = self._commit(mem, [moves[c] for c in range(len(mem.cops))], robber)
        if self.validate:
            group.check_invariant(mem)
        return out

    def _pin(self, mem: PursuitMemory, group: PushGroup, dropped: int, robber: int):
        path = mem.tracked_path
        slots = mem.extra["slots"]
        mem.trap_cycle = tuple([dropped] + path)
        mem.log(f"cycle closure {mem.trap_cycle}; rear cop returns to {dropped}")
        rear = min(group.labels, key=lambda c: slots[c])
        move = list(mem.cops)
        for c in group.labels:
            move[c] = dropped if c == rear else path[slots[c] + 1]
        mem.phase = "pin"
        return self._commit(mem, move, robber)
