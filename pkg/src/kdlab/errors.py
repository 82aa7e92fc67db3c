"""Exception types raised across kdlab."""

from __future__ import annotations


class KdlabError(Exception):
    """Base class for all kdlab errors."""


class PreconditionError(KdlabError, ValueError):
    """An operation was called outside its parameter domain."""


class Graph6Error(KdlabError, ValueError):
    """Malformed graph6 input.  ``offset`` is the byte index of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset


class UnsupportedError(KdlabError):
    """Request is outside what the internal machinery handles (e.g. enumeration order)."""


class BudgetExceeded(KdlabError):
    """A search would exceed its configured state-space budget."""


class ConvergenceError(KdlabError):
    """Power iteration hit its cap.  Carries the best estimate seen."""

    def __init__(self, message: str, rho: float, residual: float, iterations: int):
        super().__init__(message)
        self.rho = rho
        self.residual = residual
        self.iterations = iterations
