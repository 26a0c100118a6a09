"""Particle swarm optimization with a greedy assignment decode.

A particle's position is a k x |pool| matrix in [0,1]; row g scores every
candidate for open skill g. Decoding walks the skills in order and takes the
highest-scoring worker not already used (ties go to the lowest id).
"""
from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .. import metrics
from ..model import FitnessWeights, Instance
from .objective import BatchObjective, SlotPlan, check_plan
from .result import SolverResult


@dataclass(frozen=True)
class PsoParams:
    swarm: int = 40
    iterations: int = 200
    inertia: float = 0.72
    cognitive: float = 1.49
    social: float = 1.49
    v_max: float = 0.5

    def check(self):
        if self.swarm < 2:
            raise ValueError("swarm must be at least 2")
        if self.iterations < 0 or self.v_max <= 0:
            raise ValueError(f"invalid PSO parameters {self}")


def decode(positions: np.ndarray) -> np.ndarray:
    """Column indices chosen for each particle, shape ``(swarm, k)``.

    ``positions`` has shape ``(swarm, k, pool_size)``; a 2-d array is treated
    as a single particle.
    """
    X = np.asarray(positions, dtype=float)
    single = X.ndim == 2
    if single:
        X = X[None]
    S, k, n = X.shape
    used = np.zeros((S, n), dtype=bool)
    out = np.empty((S, k), dtype=int)
    rows = np.arange(S)
    for g in range(k):
        scores = np.where(used, -np.inf, X[:, g, :])
        choice = np.argmax(scores, axis=1)
        out[:, g] = choice
        used[rows, choice] = True
    return out[0] if single else out


def decode_position(position, candidates) -> list[int]:
    """Worker ids selected by one particle position."""
    pool = np.asarray(candidates, dtype=int)
    return [int(w) for w in pool[decode(position)]]


def solve_pso(
    instance: Instance,
    view=None,
    weights: FitnessWeights | None = None,
    params: PsoParams | None = None,
    rng: np.random.Generator | None = None,
    plan: SlotPlan | None = None,
) -> SolverResult:
    t0 = time.perf_counter()
    weights = weights or instance.project.weights
    params = params or PsoParams()
    params.check()
    plan = plan or SlotPlan.full(instance)
    check_plan(instance, plan)
    rng = rng if rng is not None else np.random.default_rng(0)
    if plan.k == 0:
        # every slot is pre-assigned; nothing to search
        team = plan.team(())
        fit = metrics.fitness(instance, team, view, weights)
        return SolverResult(team, fit, 1, time.perf_counter() - t0, (fit,))
    obj = BatchObjective(instance, view, weights, plan)
    pool = np.array(plan.candidates, dtype=int)
    S, k, n = params.swarm, plan.k, len(pool)

    X = rng.random((S, k, n))
    V = rng.uniform(-params.v_max, params.v_max, size=(S, k, n))
    fit = obj(pool[decode(X)])
    pbest, pbest_fit = X.copy(), fit.copy()
    g = int(np.argmax(fit))
    gbest, gbest_fit = X[g].copy(), float(fit[g])
    trace = [gbest_fit]

    for _ in range(params.iterations):
        r1 = rng.random((S, k, n))
        r2 = rng.random((S, k, n))
        V = (
            params.inertia * V
            + params.cognitive * r1 * (pbest - X)
            + params.social * r2 * (gbest[None] - X)
        )
        np.clip(V, -params.v_max, params.v_max, out=V)
        X = np.clip(X + V, 0.0, 1.0)
        fit = obj(pool[decode(X)])
        improved = fit > pbest_fit
        pbest[improved] = X[improved]
        pbest_fit[improved] = fit[improved]
        g = int(np.argmax(pbest_fit))
        if pbest_fit[g] > gbest_fit:
            gbest, gbest_fit = pbest[g].copy(), float(pbest_fit[g])
        trace.append(gbest_fit)

    genes = pool[decode(gbest)]
    team = plan.team(genes)
    return SolverResult(
        team=team,
        perceived_fitness=metrics.fitness(instance, team, view, weights),
        evaluations=obj.evaluations,
        runtime=time.perf_counter() - t0,
        trace=tuple(trace),
    )
