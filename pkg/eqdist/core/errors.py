"""
异常定义
所有库级错误都从 EqdistError 派生
"""
from typing import Optional


class EqdistError(Exception):
    """Base class for every error raised by eqdist."""


class Graph6Error(EqdistError, ValueError):
    """graph6 text could not be decoded."""

    def __init__(self, message: str, offset: Optional[int] = None):
        self.offset = offset
        self.detail = message
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)


class DisconnectedGraphError(EqdistError):
    """The operation needs a connected graph."""


class GraphDomainError(EqdistError, ValueError):
    """Invalid parameters for a graph family or operation."""


class BudgetExceededError(EqdistError):
    """The exact solver ran out of its branch-node budget."""

    def __init__(self, nodes: int, budget: int):
        self.nodes = nodes
        self.budget = budget
        super().__init__(f"budget exceeded: {nodes} nodes explored, budget {budget}")


class NonSymmetricMatrixError(EqdistError, ValueError):
    """Input matrix is not symmetric within tolerance."""


class ConvergenceError(EqdistError):
    """An iterative kernel did not converge."""


class LPDimensionError(EqdistError, ValueError):
    """Objective and constraint rows disagree on the number of variables."""


class SplitGraphError(EqdistError, ValueError):
    """Reduction gadgets need a non-split input graph."""


class CatalogError(EqdistError, KeyError):
    """Unknown graph name or unreadable catalog entry."""
