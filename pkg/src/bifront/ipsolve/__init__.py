"""Exact single-objective 0-1 solver built on LP-based branch and bound."""

from .bb import (
    SolveOutcome,
    SolverBudget,
    SolverError,
    Status,
    enumerate_all,
    solve,
    solve_lexicographic,
)
from .lpdata import (
    LinearObjective,
    MinAlphaObjective,
    SingleObjectiveIP,
    ZBound,
)

__all__ = [
    "LinearObjective",
    "MinAlphaObjective",
    "SingleObjectiveIP",
    "SolveOutcome",
    "SolverBudget",
    "SolverError",
    "Status",
    "ZBound",
    "enumerate_all",
    "solve",
    "solve_lexicographic",
]
