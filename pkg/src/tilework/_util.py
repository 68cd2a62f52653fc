"""Shared plumbing: search budgets, errors and an order-preserving parallel map."""

import os
from concurrent.futures import ProcessPoolExecutor

DEFAULT_BUDGET = 10**7
BUDGET_ENV = "TILEWORK_BUDGET"


class BudgetExceeded(RuntimeError):
    """A search visited more nodes than it was allowed to."""

    def __init__(self, budget, what="search"):
        super().__init__(f"{what} exceeded its budget of {budget} nodes")
        self.budget = budget


def default_budget():
    value = os.environ.get(BUDGET_ENV)
    if value is None:
        return DEFAULT_BUDGET
    budget = int(value)
    if budget <= 0:
        raise ValueError(f"{BUDGET_ENV} must be positive, got {value!r}")
    return budget


class Counter:
    """Node counter that raises once a budget is spent."""

    __slots__ = ("budget", "count", "what")

    def __init__(self, budget=None, what="search"):
        self.budget = default_budget() if budget is None else budget
        self.count = 0
        self.what = what

    def tick(self, n=1):
        self.count += n
        if self.count > self.budget:
            raise BudgetExceeded(self.budget, self.what)


def pmap(fn, items, jobs=1):
    """``map`` that may fan out to processes; results keep input order."""
    items = list(items)
    if jobs is None or jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as pool:
        return list(pool.map(fn, items))
