from __future__ import annotations

from dataclasses import dataclass, field

from ..model import Team


@dataclass(frozen=True)
class SolverResult:
    team: Team
    perceived_fitness: float
    evaluations: int
    runtime: float = field(default=0.0, compare=False)
    # best fitness after each generation/iteration, starting with the initial population
    trace: tuple[float, ...] = ()
