"""Exact cops-and-robber solving, induced-pattern matching, pursuit
strategies and a verification harness for cop-number bounds."""

from .errors import (
    BudgetError,
    CannotSatisfyError,
    ContractError,
    CopRobberError,
    Graph6Error,
    NotConnectedError,
    PreconditionViolation,
    StrategyFault,
)
from .game import Configuration, Side, SolveTable, cop_number, is_dismantlable, solve
from .graph import Graph, emit_graph6, from_edges, parse_graph6
from .pattern import Pattern, contains_induced, is_family_free, make_pattern, parse_pattern

__version__ = "0.1.0"

__all__ = [
    "BudgetError", "CannotSatisfyError", "Configuration", "ContractError", "CopRobberError",
    "Graph", "Graph6Error", "NotConnectedError", "Pattern", "PreconditionViolation", "Side",
    "SolveTable", "StrategyFault", "contains_induced", "cop_number", "emit_graph6", "from_edges",
    "is_dismantlable", "is_family_free", "make_pattern", "parse_graph6", "parse_pattern", "solve",
]
