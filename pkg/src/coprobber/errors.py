"""Exception hierarchy shared by every module."""


class CopRobberError(Exception):
    """Base class for all errors raised by this package."""


class VertexRangeError(CopRobberError, ValueError):
    pass


class InvalidEdgeError(CopRobberError, ValueError):
    pass


class Graph6Error(CopRobberError, ValueError):
    """Malformed graph6 text."""


class UnsupportedSizeError(CopRobberError, ValueError):
    """Graph has more vertices than the bit-mask representation allows."""


class NotConnectedError(CopRobberError, ValueError):
    pass


class BudgetError(CopRobberError, RuntimeError):
    """The game state space is larger than the configured budget."""


class ContractError(CopRobberError, RuntimeError):
    """A table query was made outside its precondition."""


class StrategyFault(CopRobberError, RuntimeError):
    """A strategy produced an illegal move."""

    def __init__(self, round_no: int, message: str):
        super().__init__(f"round {round_no}: {message}")
        self.round_no = round_no


class PreconditionViolation(CopRobberError, RuntimeError):
    """A strategy found evidence that the host breaks its freeness hypothesis."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class CannotSatisfyError(CopRobberError, RuntimeError):
    pass
