"""Node budgets for the backtracking searches."""
from __future__ import annotations

from dataclasses import dataclass


class BudgetExhausted(RuntimeError):
    """Raised on request when a search runs out of nodes; carries the partial result."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = 1_000_000
    max_tilings: int = 10_000

    def __post_init__(self):
        if self.max_nodes <= 0 or self.max_tilings <= 0:
            raise ValueError("budget limits must be positive")


class _Stop(Exception):
    pass


class NodeCounter:
    def __init__(self, budget: SearchBudget):
        self.budget = budget
        self.nodes = 0
        self.exhausted = False

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            self.exhausted = True
            raise _Stop
