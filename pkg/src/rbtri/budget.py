"""Node-count budgets for the exhaustive searches.

Budgets count search nodes rather than seconds so that every result is
reproducible on any machine.
"""

from .errors import BudgetExhausted

DEFAULT_NODES = 10**9


class Budget:
    __slots__ = ("limit", "nodes")

    def __init__(self, limit=DEFAULT_NODES):
        self.limit = limit
        self.nodes = 0

    def tick(self, count=1):
        self.nodes += count
        if self.nodes > self.limit:
            raise BudgetExhausted(nodes=self.nodes)

    @property
    def remaining(self):
        return max(0, self.limit - self.nodes)

    def __repr__(self):
        return f"Budget({self.nodes}/{self.limit})"


def as_budget(budget):
    """Accept a Budget, an int node limit, or None (default limit)."""
    if budget is None:
        return Budget()
    if isinstance(budget, Budget):
        return budget
    return Budget(int(budget))
