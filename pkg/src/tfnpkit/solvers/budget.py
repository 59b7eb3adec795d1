from __future__ import annotations

from dataclasses import dataclass

from ..errors import BudgetExceeded


@dataclass(frozen=True)
class SolveBudget:
    max_elements: int = 1 << 16
    max_evals: int = 1 << 24


class Meter:
    """Counts work against a budget and raises BudgetExceeded past it."""

    def __init__(self, budget: SolveBudget | None = None):
        self.budget = budget or SolveBudget()
        self.evals = 0

    def elements(self, count: int, what: str = "universe"):
        if count > self.budget.max_elements:
            raise BudgetExceeded(f"{what} of size {count} exceeds the cap {self.budget.max_elements}")

    def charge(self, evals: int):
        self.evals += evals
        if self.evals > self.budget.max_evals:
            raise BudgetExceeded(f"more than {self.budget.max_evals} function evaluations")
