"""Exact k-cop game solving by retrograde analysis.

States are ``(cop multiset, robber vertex, side to move)``.  A capture
state (robber on a cop vertex) is a cop win with zero steps remaining; a
cop-to-move state is a win when some team move reaches a winning
robber-to-move state, and a robber-to-move state is a win when every robber
option (staying included) reaches a winning cop-to-move state.  The table is
filled level by level from the capture states, so the steps values come out
exact: ``steps`` of a cop-to-move state is one more than the best reachable
robber-to-move state, and ``steps`` of a robber-to-move state is the largest
value among its options.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator, Sequence

from .errors import BudgetError, ContractError, NotConnectedError
from .graph import Graph, bits, greedy_dominating_set, is_connected

DEFAULT_STATE_BUDGET = 5_000_000


class Side(enum.Enum):
    COP = "cop"
    ROBBER = "robber"


@dataclass(frozen=True)
class Configuration:
    cops: tuple[int, ...]
    robber: int
    to_move: Side

    def __post_init__(self):
        if list(self.cops) != sorted(self.cops):
            object.__setattr__(self, "cops", tuple(sorted(self.cops)))

    @property
    def captured(self) -> bool:
        return self.robber in self.cops


def state_count(n: int, k: int) -> int:
    return comb(n + k - 1, k) * n * 2


class SolveTable:
    """Solved win/steps tables for one graph and cop count.

    ``steps`` is ``None`` on cop-loss states.
    """

    def __init__(self, g: Graph, k: int, multisets, index, succ, cop_steps, rob_steps):
        self.g = g
        self.k = k
        self.multisets: list[tuple[int, ...]] = multisets
        self._index: dict[tuple[int, ...], int] = index
        self._succ: list[list[int]] = succ
        self._cop = cop_steps
        self._rob = rob_steps
        n = g.n
        best = None
        for ci, cops in enumerate(multisets):
            row = rob_steps[ci * n:(ci + 1) * n]
            if min(row) >= 0:
                key = (max(row), cops)
                if best is None or key < best:
                    best = key
        self.cop_win_overall = best is not None
        self.initial_cops: tuple[int, ...] | None = best[1] if best else None
        self.capture_time: int | None = best[0] if best else None

    @property
    def n_states(self) -> int:
        return 2 * len(self.multisets) * self.g.n

    def _slot(self, c: Configuration) -> int:
        try:
            ci = self._index[tuple(c.cops)]
        except KeyError:
            raise ContractError(f"{c.cops} is not a {self.k}-cop multiset of this graph") from None
        if not 0 <= c.robber < self.g.n:
            raise ContractError(f"robber vertex {c.robber} out of range")
        return ci * self.g.n + c.robber

    def _raw(self, c: Configuration) -> int:
        arr = self._cop if c.to_move is Side.COP else self._rob
        return arr[self._slot(c)]

    def win(self, c: Configuration) -> bool:
        return self._raw(c) >= 0

    def steps(self, c: Configuration) -> int | None:
        s = self._raw(c)
        return s if s >= 0 else None

    def cop_successors(self, cops: Sequence[int]) -> list[tuple[int, ...]]:
        ci = self._index[tuple(sorted(cops))]
        return [self.multisets[j] for j in self._succ[ci]]

    def opening_steps(self, cops: Sequence[int]) -> int | None:
        """Worst-case capture time over robber placements, ``None`` if some placement escapes."""
        cops = tuple(sorted(cops))
        vals = [self._rob[self._index[cops] * self.g.n + r] for r in range(self.g.n)]
        return max(vals) if min(vals) >= 0 else None

    def configurations(self) -> Iterator[Configuration]:
        for cops in self.multisets:
            for r in range(self.g.n):
                yield Configuration(cops, r, Side.COP)
                yield Configuration(cops, r, Side.ROBBER)

    def dump_lines(self) -> Iterator[str]:
        """``cops;robber;turn;win;steps`` lines in canonical order."""
        for c in self.configurations():
            s = self._raw(c)
            yield "{};{};{};{};{}".format(
                ",".join(map(str, c.cops)), c.robber, c.to_move.value,
                int(s >= 0), s if s >= 0 else "-",
            )


def _team_reach(closed: list[list[int]]):
    """Memoised map from a sorted cop multiset to the sorted multisets one team move away."""
    memo: dict[tuple[int, ...], set[tuple[int, ...]]] = {(): {()}}

    def reach(cops: tuple[int, ...]) -> set[tuple[int, ...]]:
        got = memo.get(cops)
        if got is None:
            rest = reach(cops[1:])
            got = {tuple(sorted((a,) + t)) for a in closed[cops[0]] for t in rest}
            memo[cops] = got
        return got

    return reach


def solve(g: Graph, k: int, budget: int = DEFAULT_STATE_BUDGET) -> SolveTable:
    if not is_connected(g):
        raise NotConnectedError("the game is played on connected graphs only")
    if k < 1:
        raise ValueError("need at least one cop")
    total = state_count(g.n, k)
    if total > budget:
        raise BudgetError(f"{total} states for n={g.n}, k={k} exceeds the budget of {budget}")
    n = g.n
    closed = [list(bits(g.closed(v))) for v in range(n)]
    multisets = list(itertools.combinations_with_replacement(range(n), k))
    index = {m: i for i, m in enumerate(multisets)}
    succ: list[list[int]] = []
    pred: list[list[int]] = [[] for _ in multisets]
    reach = _team_reach(closed)
    for ci, cops in enumerate(multisets):
        row = sorted(index[t] for t in reach(cops))
        succ.append(row)
        for cj in row:
            pred[cj].append(ci)

    size = len(multisets) * n
    cop_steps = [-1] * size
    rob_steps = [-1] * size
    rob_left = [len(closed[r]) for _ in multisets for r in range(n)]
    cop_front = []
    rob_capture = []
    for ci, cops in enumerate(multisets):
        for r in set(cops):
            cop_steps[ci * n + r] = 0
            rob_steps[ci * n + r] = 0
            cop_front.append(ci * n + r)
            rob_capture.append(ci * n + r)

    level = 0
    rob_front = rob_capture
    while cop_front:
        newly = []
        for idx in cop_front:
            ci, rr = divmod(idx, n)
            base = ci * n
            for r in closed[rr]:
                j = base + r
                if rob_steps[j] < 0:
                    rob_left[j] -= 1
                    if rob_left[j] == 0:
                        rob_steps[j] = level
                        newly.append(j)
        rob_front = rob_front + newly if level == 0 else newly
        nxt = []
        for j in rob_front:
            cj, r = divmod(j, n)
            for ci in pred[cj]:
                i = ci * n + r
                if cop_steps[i] < 0:
                    cop_steps[i] = level + 1
                    nxt.append(i)
        cop_front = nxt
        level += 1
    return SolveTable(g, k, multisets, index, succ, cop_steps, rob_steps)


def cop_number(g: Graph, budget: int = DEFAULT_STATE_BUDGET, max_k: int | None = None) -> int:
    """Least k for which k cops win; raises ``BudgetError`` rather than guess."""
    if not is_connected(g):
        raise NotConnectedError("the game is played on connected graphs only")
    # cops on a dominating set capture in one move, so the loop always returns
    top = len(greedy_dominating_set(g))
    if max_k is not None:
        top = min(top, max_k)
    for k in range(1, top + 1):
        if solve(g, k, budget).cop_win_overall:
            return k
    raise BudgetError(f"cop number exceeds max_k={max_k}")


def optimal_cop_move(t: SolveTable, c: Configuration) -> Configuration:
    if c.to_move is not Side.COP:
        raise ContractError("optimal_cop_move needs a cop-to-move configuration")
    s = t.steps(c)
    if s is None:
        raise ContractError(f"{c} is a cop loss")
    if s == 0:
        raise ContractError(f"{c} is already a capture")
    n = t.g.n
    for cj in t._succ[t._index[c.cops]]:
        if t._rob[cj * n + c.robber] == s - 1:
            return Configuration(t.multisets[cj], c.robber, Side.ROBBER)
    raise AssertionError("table inconsistency: no successor one step closer")


def optimal_robber_move(t: SolveTable, c: Configuration) -> int:
    if c.to_move is not Side.ROBBER:
        raise ContractError("optimal_robber_move needs a robber-to-move configuration")
    if c.captured:
        return c.robber
    n = t.g.n
    base = t._index[c.cops] * n
    best, best_val = None, -1
    for r in bits(t.g.closed(c.robber)):
        v = t._cop[base + r]
        if v < 0:
            return r
        if v > best_val:
            best, best_val = r, v
    return best


def robber_placement(t: SolveTable, cops: Sequence[int]) -> int:
    """Least escaping placement, otherwise the one that delays capture longest.

    Matches give the cops the first move after placement, so placements are
    scored on the cop-to-move row.  Since the robber may stay put, "every
    robber-to-move entry is a win" holds exactly when every cop-to-move entry
    is, and the worst cases agree, so this is consistent with
    ``cop_win_overall`` and ``capture_time``.
    """
    n = t.g.n
    base = t._index[tuple(sorted(cops))] * n
    best, best_val = 0, -1
    for r in range(n):
        v = t._cop[base + r]
        if v < 0:
            return r
        if v > best_val:
            best, best_val = r, v
    return best


def optimal_playout(t: SolveTable, c: Configuration, limit: int | None = None) -> int | None:
    """Alternate optimal moves from a robber-to-move position; cop turns until capture."""
    if c.to_move is not Side.ROBBER:
        raise ContractError("playout starts with the robber to move")
    limit = t.n_states if limit is None else limit
    rounds = 0
    while not c.captured:
        r = optimal_robber_move(t, c)
        c = Configuration(c.cops, r, Side.COP)
        if c.captured:
            return rounds
        if rounds >= limit or not t.win(c):
            return None
        c = optimal_cop_move(t, c)
        rounds += 1
    return rounds


def cop_team_moves(g: Graph, cops: Sequence[int]) -> Iterable[tuple[int, ...]]:
    """All labelled team moves (each cop stays or steps to a neighbour)."""
    return itertools.product(*(list(bits(g.closed(c))) for c in cops))


def is_dismantlable(g: Graph) -> bool:
    """Corner elimination: delete the least vertex whose closed neighbourhood
    fits inside another's until one vertex is left."""
    if not is_connected(g):
        raise NotConnectedError("dismantlability is checked on connected graphs")
    alive = g.all_vertices
    remaining = g.n
    while remaining > 1:
        nb = {v: g.closed(v) & alive for v in bits(alive)}
        corner = None
        for u in bits(alive):
            if any(v != u and nb[u] & ~nb[v] == 0 for v in bits(alive)):
                corner = u
                break
        if corner is None:
            return False
        alive &= ~(1 << corner)
        remaining -= 1
    return True
