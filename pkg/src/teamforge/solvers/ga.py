"""Genetic algorithm over skill-to-worker chromosomes.

A chromosome is a length-k vector of distinct worker ids; gene g is the
worker filling open skill g. Duplicates produced by crossover are repaired
in place, so every individual is feasible.
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
class GaParams:
    population: int = 50
    generations: int = 200
    crossover_rate: float = 0.9
    mutation_rate: float = 0.1
    tournament_size: int = 3
    elitism: int = 1

    def check(self):
        if self.population < 2:
            raise ValueError("population must be at least 2")
        if not (0 <= self.crossover_rate <= 1 and 0 <= self.mutation_rate <= 1):
            raise ValueError("rates must lie in [0,1]")
        if self.generations < 0 or self.tournament_size < 1 or not 0 <= self.elitism < self.population:
            raise ValueError(f"invalid GA parameters {self}")


def repair(child: list[int], pool: list[int], rng: np.random.Generator) -> list[int]:
    """Replace later duplicates with uniformly chosen unused workers."""
    seen = set()
    dup_pos = []
    for g, w in enumerate(child):
        if w in seen:
            dup_pos.append(g)
        else:
            seen.add(w)
    if dup_pos:
        unused = [w for w in pool if w not in seen]
        for g in dup_pos:
            w = unused.pop(int(rng.integers(len(unused))))
            child[g] = w
    return child


def mutate(child: list[int], pool: list[int], rate: float, rng: np.random.Generator) -> list[int]:
    """Each gene, with probability ``rate``, is swapped for an unused worker."""
    k = len(child)
    hits = np.flatnonzero(rng.random(k) < rate)
    if len(hits) == 0:
        return child
    used = set(child)
    unused = [w for w in pool if w not in used]
    for g in hits:
        if not unused:
            break
        j = int(rng.integers(len(unused)))
        old = child[g]
        child[g] = unused[j]
        unused[j] = old
    return child


def one_point(p1, p2, rate: float, rng: np.random.Generator):
    k = len(p1)
    if k < 2 or rng.random() >= rate:
        return list(p1), list(p2)
    cut = int(rng.integers(1, k))
    return list(p1[:cut]) + list(p2[cut:]), list(p2[:cut]) + list(p1[cut:])


def solve_ga(
    instance: Instance,
    view=None,
    weights: FitnessWeights | None = None,
    params: GaParams | None = None,
    rng: np.random.Generator | None = None,
    plan: SlotPlan | None = None,
) -> SolverResult:
    t0 = time.perf_counter()
    weights = weights or instance.project.weights
    params = params or GaParams()
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
    pool = list(plan.candidates)
    k, P = plan.k, params.population

    pop = np.array([rng.permutation(pool)[:k] for _ in range(P)], dtype=int).reshape(P, k)
    fit = obj(pop)
    b = int(np.argmax(fit))
    best, best_fit = pop[b].copy(), float(fit[b])
    trace = [best_fit]

    for _ in range(params.generations):
        contenders = rng.integers(P, size=(P, params.tournament_size))
        winners = contenders[np.arange(P), np.argmax(fit[contenders], axis=1)]
        children = []
        seen = {tuple(x) for x in pop}
        for a in range(0, P, 2):
            p1 = pop[winners[a]]
            p2 = pop[winners[(a + 1) % P]]
            for c in one_point(p1, p2, params.crossover_rate, rng):
                c = repair(c, pool, rng)
                c = mutate(c, pool, params.mutation_rate, rng)
                if k and tuple(c) in seen:
                    # clones add nothing; force one gene out to keep the population diverse
                    c = mutate(c, pool, 1.0 / k, rng)
                seen.add(tuple(c))
                children.append(c)
        elite_idx = np.argsort(-fit, kind="stable")[: params.elitism]
        nxt = np.array(children[: P - params.elitism], dtype=int).reshape(-1, k)
        child_fit = obj(nxt)
        pop = np.concatenate([pop[elite_idx], nxt])
        fit = np.concatenate([fit[elite_idx], child_fit])
        b = int(np.argmax(fit))
        if fit[b] > best_fit:
            best, best_fit = pop[b].copy(), float(fit[b])
        trace.append(float(fit.max()))

    team = plan.team(best)
    return SolverResult(
        team=team,
        perceived_fitness=metrics.fitness(instance, team, view, weights),
        evaluations=obj.evaluations,
        runtime=time.perf_counter() - t0,
        trace=tuple(trace),
    )
