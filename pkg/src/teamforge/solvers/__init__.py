"""Interchangeable team optimizers.

Every solver is called as ``solver(instance, view, weights, plan=..., rng=...)``
and returns a :class:`SolverResult` scored under the given view.
"""
from __future__ import annotations

from functools import partial

from .exact import solve_exact
from .ga import GaParams, solve_ga
from .hungarian import hungarian_max
from .objective import BatchObjective, SlotPlan
from .pso import PsoParams, decode_position, solve_pso
from .result import SolverResult

SOLVER_NAMES = ("exact", "ga", "pso")


def get_solver(name: str, ga: GaParams | None = None, pso: PsoParams | None = None):
    """Solver callable by name, with heuristic parameters bound."""
    name = name.lower()
    if name == "exact":
        return solve_exact
    if name == "ga":
        return partial(solve_ga, params=ga or GaParams())
    if name == "pso":
        return partial(solve_pso, params=pso or PsoParams())
    raise ValueError(f"unknown solver {name!r}; expected one of {SOLVER_NAMES}")


__all__ = [
    "BatchObjective",
    "GaParams",
    "PsoParams",
    "SOLVER_NAMES",
    "SlotPlan",
    "SolverResult",
    "decode_position",
    "get_solver",
    "hungarian_max",
    "solve_exact",
    "solve_ga",
    "solve_pso",
]
