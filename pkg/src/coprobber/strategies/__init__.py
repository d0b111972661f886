"""Executable cop strategies and the match runner."""

from __future__ import annotations

import re

from ..game import SolveTable
from .base import (
    GreedyRobber,
    HalfMove,
    MatchResult,
    OptimalCops,
    OptimalRobber,
    PursuitMemory,
    RobberPolicy,
    ScriptedRobber,
    Strategy,
    check_transcript,
    default_budget,
    run_match,
)
from .guard import GuardRecurse
from .house import HousePartition, HouseTwoCop
from .push import ClawCycle, CycleTrap, PathPush


def path_push_strategy(k: int) -> PathPush:
    return PathPush(k)


def cycle_trap_strategy(l: int) -> CycleTrap:
    return CycleTrap(l)


def claw_cycle_strategy(k: int) -> ClawCycle:
    return ClawCycle(k)


def guard_recurse_strategy(prefix: str, k: int) -> GuardRecurse:
    return GuardRecurse(prefix, k)


def house_two_cop_strategy() -> HouseTwoCop:
    return HouseTwoCop()


_FACTORIES = {
    "path_push": PathPush,
    "cycle_trap": CycleTrap,
    "claw_cycle": ClawCycle,
    "guard_vertex": lambda k: GuardRecurse("vertex", k),
    "guard_edge": lambda k: GuardRecurse("edge", k),
}

STRATEGY_NAMES = sorted(_FACTORIES) + ["house"]


def make_strategy(spec: str) -> Strategy:
    """Build a strategy from ``name:param`` or ``name(param)``, e.g. ``path_push:4``."""
    s = spec.strip()
    if s in ("house", "house_two_cop"):
        return HouseTwoCop()
    m = re.fullmatch(r"(\w+?)(?::|\()(\d+)\)?", s)
    if not m or m.group(1) not in _FACTORIES:
        raise ValueError(f"unknown strategy {spec!r}; choose from {', '.join(STRATEGY_NAMES)}")
    return _FACTORIES[m.group(1)](int(m.group(2)))


__all__ = [
    "ClawCycle", "CycleTrap", "GreedyRobber", "GuardRecurse", "HalfMove", "HousePartition",
    "HouseTwoCop", "MatchResult", "OptimalCops", "OptimalRobber", "PathPush", "PursuitMemory",
    "RobberPolicy", "STRATEGY_NAMES", "ScriptedRobber", "SolveTable", "Strategy",
    "check_transcript", "claw_cycle_strategy", "cycle_trap_strategy", "default_budget",
    "guard_recurse_strategy", "house_two_cop_strategy", "make_strategy", "path_push_strategy",
    "run_match",
]
