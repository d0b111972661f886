"""Strategy protocol, robber policies and the match runner."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ..errors import ContractError, StrategyFault
from ..game import (
    Configuration,
    Side,
    SolveTable,
    optimal_cop_move,
    optimal_robber_move,
    robber_placement,
    state_count,
)
from ..graph import Graph, bfs_distances, bits, require_connected, shortest_path


@dataclass
class PursuitMemory:
    """Per-match state carried between ``Strategy.step`` calls.

    ``cops`` holds the labelled cop positions the strategy last committed to.
    """

    g: Graph
    cops: list[int]
    phase: str = "approach"
    tracked_path: list[int] = field(default_factory=list)
    t: int = 0
    trap_cycle: tuple[int, ...] | None = None
    last_robber: int | None = None
    events: list[str] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def log(self, msg: str) -> None:
        self.events.append(msg)


class Strategy:
    """Base class for cop strategies.

    ``init`` returns the opening (labelled) cop positions and fresh memory;
    ``step`` receives the position with the cops to move and returns the
    new labelled positions with the updated memory.
    """

    name = "strategy"

    def required_cops(self, g: Graph) -> int:
        raise NotImplementedError

    def init(self, g: Graph) -> tuple[tuple[int, ...], PursuitMemory]:
        raise NotImplementedError

    def step(self, mem: PursuitMemory, conf: Configuration) -> tuple[tuple[int, ...], PursuitMemory]:
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


# -- helpers shared by the concrete strategies --------------------------------

def capture_move(g: Graph, cops: Sequence[int], robber: int) -> tuple[int, ...] | None:
    """Least-labelled cop within reach of the robber takes it; others stay."""
    for i, c in enumerate(cops):
        if g.closed(c) >> robber & 1:
            out = list(cops)
            out[i] = robber
            return tuple(out)
    return None


def step_toward(g: Graph, src: int, dst: int, within: int | None = None) -> int:
    if src == dst:
        return src
    path = shortest_path(g, src, dst, within)
    if path is None:
        path = shortest_path(g, src, dst)
    return path[1]


def greedy_team_move(g: Graph, cops: Sequence[int], robber: int) -> tuple[int, ...]:
    return tuple(step_toward(g, c, robber) for c in cops)


def realise_multiset(g: Graph, cops: Sequence[int], target: Sequence[int]) -> tuple[int, ...]:
    """Assign the cops of a target multiset to labels so every cop moves legally."""
    want = sorted(target)
    for move in itertools.product(*(list(bits(g.closed(c))) for c in cops)):
        if sorted(move) == want:
            return move
    raise ContractError(f"{tuple(target)} is not reachable from {tuple(cops)} in one turn")


class OptimalCops(Strategy):
    """Cops playing the solved table; greedy chase from cop-loss positions."""

    def __init__(self, table: SolveTable):
        self.table = table
        self.name = f"optimal(k={table.k})"

    def required_cops(self, g: Graph) -> int:
        return self.table.k

    def init(self, g: Graph):
        t = self.table
        if t.cop_win_overall:
            opening = t.initial_cops
        else:
            opening = max(
                t.multisets,
                key=lambda m: (sum(t.win(Configuration(m, r, Side.ROBBER)) for r in range(g.n)),
                               [-x for x in m]),
            )
        return tuple(opening), PursuitMemory(g, list(opening), phase="optimal")

    def step(self, mem, conf):
        t = self.table
        cops = mem.cops
        if t.win(conf):
            nxt = optimal_cop_move(t, conf)
            move = realise_multiset(t.g, cops, nxt.cops)
        else:
            move = greedy_team_move(t.g, cops, conf.robber)
        mem.cops = list(move)
        return move, mem


# -- robber policies -------------------------------------------------------------

class RobberPolicy:
    name = "robber"

    def place(self, g: Graph, cops: tuple[int, ...]) -> int:
        raise NotImplementedError

    def move(self, g: Graph, conf: Configuration) -> int:
        raise NotImplementedError


class OptimalRobber(RobberPolicy):
    """Escapes whenever the table allows it, otherwise delays capture maximally."""

    name = "optimal"

    def __init__(self, table: SolveTable):
        self.table = table

    def place(self, g, cops):
        return robber_placement(self.table, cops)

    def move(self, g, conf):
        return optimal_robber_move(self.table, conf)


class GreedyRobber(RobberPolicy):
    """Maximises the distance to the nearest cop; least vertex on ties."""

    name = "greedy"

    @staticmethod
    def _score(g: Graph, cops, v: int) -> int:
        dist = bfs_distances(g, v)
        return min(dist[c] for c in cops)

    def place(self, g, cops):
        return max(range(g.n), key=lambda v: (self._score(g, cops, v), -v))

    def move(self, g, conf):
        return max(bits(g.closed(conf.robber)), key=lambda v: (self._score(g, conf.cops, v), -v))


class ScriptedRobber(RobberPolicy):
    """Plays a fixed placement and move list, then stands still."""

    name = "scripted"

    def __init__(self, placement: int, moves: Iterable[int] = ()):
        self.placement = placement
        self.moves = list(moves)
        self._i = 0

    def place(self, g, cops):
        self._i = 0
        return self.placement

    def move(self, g, conf):
        if self._i < len(self.moves):
            v = self.moves[self._i]
            self._i += 1
            return v
        return conf.robber


# -- matches -----------------------------------------------------------------------

@dataclass(frozen=True)
class HalfMove:
    round: int
    side: Side
    cops: tuple[int, ...]
    robber: int | None

    def line(self) -> str:
        # labelled order, so that a replay can check each cop's own step
        cops = ",".join(map(str, self.cops))
        robber = "-" if self.robber is None else str(self.robber)
        return f"{self.round};{self.side.value};{cops};{robber}"


@dataclass
class MatchResult:
    outcome: str  # "captured" or "budget_exhausted"
    round: int | None
    transcript: list[HalfMove]
    notes: list[str] = field(default_factory=list)

    @property
    def captured(self) -> bool:
        return self.outcome == "captured"

    def configurations(self) -> list[Configuration]:
        out = []
        for h in self.transcript:
            if h.robber is None:
                continue
            to_move = Side.ROBBER if h.side is Side.COP else Side.COP
            out.append(Configuration(tuple(sorted(h.cops)), h.robber, to_move))
        return out

    def export(self) -> list[str]:
        """``round;side;cops;robber`` lines, one per half-move."""
        return [h.line() for h in self.transcript]


def default_budget(g: Graph, k: int) -> int:
    return 2 * state_count(g.n, k)


def _check_cop_move(g: Graph, before: Sequence[int], after: Sequence[int], rnd: int) -> None:
    if len(after) != len(before):
        raise StrategyFault(rnd, f"strategy changed the cop count from {len(before)} to {len(after)}")
    for i, (a, b) in enumerate(zip(before, after)):
        if not (isinstance(b, int) and 0 <= b < g.n and g.closed(a) >> b & 1):
            raise StrategyFault(rnd, f"cop {i} cannot move from {a} to {b}")


def run_match(g: Graph, s: Strategy, robber: RobberPolicy, budget: int | None = None) -> MatchResult:
    require_connected(g)
    k = s.required_cops(g)
    if k < 1:
        raise ValueError("strategy must use at least one cop")
    if budget is None:
        budget = default_budget(g, k)
    cops, mem = s.init(g)
    cops = tuple(cops)
    if len(cops) != k or any(not 0 <= c < g.n for c in cops):
        raise StrategyFault(0, f"invalid opening {cops} for {k} cops")
    transcript = [HalfMove(0, Side.COP, cops, None)]
    r = robber.place(g, tuple(sorted(cops)))
    if not 0 <= r < g.n:
        raise ValueError(f"robber placed on invalid vertex {r}")
    transcript.append(HalfMove(0, Side.ROBBER, cops, r))

    def result(outcome, rnd):
        return MatchResult(outcome, rnd, transcript, list(mem.events))

    if r in cops:
        return result("captured", 0)
    for rnd in range(1, budget + 1):
        conf = Configuration(tuple(sorted(cops)), r, Side.COP)
        new, mem = s.step(mem, conf)
        new = tuple(new)
        _check_cop_move(g, cops, new, rnd)
        cops = new
        transcript.append(HalfMove(rnd, Side.COP, cops, r))
        if r in cops:
            return result("captured", rnd)
        nr = robber.move(g, Configuration(tuple(sorted(cops)), r, Side.ROBBER))
        if not (0 <= nr < g.n and g.closed(r) >> nr & 1):
            raise ValueError(f"robber policy made an illegal move {r} -> {nr} in round {rnd}")
        r = nr
        transcript.append(HalfMove(rnd, Side.ROBBER, cops, r))
        if r in cops:
            return result("captured", rnd)
    return result("budget_exhausted", None)


def check_transcript(g: Graph, transcript: Sequence[HalfMove]) -> int | None:
    """Replay a transcript; raise ``StrategyFault`` on an illegal move.

    Returns the capture round, or ``None`` if the replay never captures.
    """
    if len(transcript) < 2 or transcript[0].side is not Side.COP or transcript[1].side is not Side.ROBBER:
        raise StrategyFault(0, "transcript must open with cop then robber placement")
    cops = transcript[0].cops
    r = transcript[1].robber
    if r in cops:
        return 0
    for h in transcript[2:]:
        if h.side is Side.COP:
            _check_cop_move(g, cops, h.cops, h.round)
            cops = h.cops
        else:
            if tuple(h.cops) != tuple(cops):
                raise StrategyFault(h.round, "cops moved during the robber's turn")
            if not g.closed(r) >> h.robber & 1:
                raise StrategyFault(h.round, f"robber cannot move from {r} to {h.robber}")
            r = h.robber
        if r in cops:
            return h.round
    return None
