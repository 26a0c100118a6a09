"""Slot plans and the batched fitness evaluator shared by all solvers."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..model import FitnessWeights, Instance, LeaderVariant, Team


@dataclass(frozen=True)
class SlotPlan:
    """Which skill slots are open, who may fill them, and who is already in.

    ``fixed`` holds pre-assigned ``(skill, worker)`` pairs (a member leader);
    ``extra`` holds selected workers without a slot (a supervising leader).
    """

    open_skills: tuple[int, ...]
    candidates: tuple[int, ...]
    fixed: tuple[tuple[int, int], ...] = ()
    extra: tuple[int, ...] = ()
    leader: Optional[int] = None
    leader_variant: LeaderVariant = LeaderVariant.NONE

    @classmethod
    def full(cls, instance: Instance) -> "SlotPlan":
        return cls(tuple(instance.project.required_skills), tuple(range(instance.n)))

    @property
    def k(self) -> int:
        return len(self.open_skills)

    def team(self, genes) -> Team:
        """Team where gene g fills ``open_skills[g]``."""
        assignment = dict(self.fixed)
        for s, w in zip(self.open_skills, genes):
            assignment[s] = int(w)
        return Team(assignment, self.leader, self.leader_variant)


def check_plan(instance: Instance, plan: SlotPlan):
    if instance.project.max_skills_per_worker != 1:
        raise NotImplementedError("solvers support max_skills_per_worker == 1 only")
    if len(plan.candidates) < plan.k:
        raise ValueError(
            f"infeasible: {len(plan.candidates)} candidate workers for {plan.k} open skills"
        )


class BatchObjective:
    """Vectorized fitness over many candidate slot fillings at once.

    A batch is a ``(B, k)`` integer array of worker ids, each row distinct
    and disjoint from the plan's fixed/extra workers.
    """

    def __init__(self, instance: Instance, view, weights: FitnessWeights, plan: SlotPlan):
        self.instance = instance
        self.plan = plan
        self.weights = weights
        if view is None:
            L, S, sigma = instance.skills, instance.strengths, np.zeros(instance.n)
        else:
            L, S, sigma = view.perceived_skills, view.perceived_strengths, np.asarray(view.sigma)
        self.levels = np.asarray(L)[:, list(plan.open_skills)] if plan.k else np.zeros((instance.n, 0))
        self.S = np.asarray(S)
        self.sigma = sigma
        self.cost = instance.worker_costs / instance.cost_cap

        base = [w for _, w in plan.fixed] + list(plan.extra)
        self.base = np.array(base, dtype=int)
        self.m_total = plan.k + len(plan.fixed)
        self.n_team = plan.k + len(base)
        self.n_pairs = self.n_team * (self.n_team - 1) // 2
        self.base_skill = float(sum(np.asarray(L)[w, s] for s, w in plan.fixed))
        self.base_pairs = float(sum(self.S[i, j] for i, j in itertools.combinations(base, 2)))
        self.base_cost = float(self.cost[self.base].sum()) if base else 0.0
        self.base_sigma = float(sigma[self.base].sum()) if base else 0.0
        # strength of each worker to the fixed part of the team
        self.to_base = self.S[:, self.base].sum(axis=1) if base else np.zeros(instance.n)
        self.pair_idx = list(itertools.combinations(range(plan.k), 2))
        self.evaluations = 0

    def set_terms(self, batch: np.ndarray) -> np.ndarray:
        """Everything except the skill term, which depends on the assignment."""
        w = self.weights
        if self.n_pairs:
            rel = self.base_pairs + self.to_base[batch].sum(axis=1)
            for a, b in self.pair_idx:
                rel = rel + self.S[batch[:, a], batch[:, b]]
            rel = rel / self.n_pairs
        else:
            rel = np.ones(len(batch))
        cost = self.base_cost + self.cost[batch].sum(axis=1)
        unc = (self.base_sigma + self.sigma[batch].sum(axis=1)) / self.n_team
        return w.w_rel * rel - w.w_cost * cost - w.w_unc * unc

    def skill_term(self, skill_sum: np.ndarray) -> np.ndarray:
        return self.weights.w_skill * (self.base_skill + skill_sum) / self.m_total

    def __call__(self, batch: np.ndarray) -> np.ndarray:
        """Fitness of each row, gene g on open skill g."""
        batch = np.asarray(batch, dtype=int)
        self.evaluations += len(batch)
        return self.peek(batch)

    def peek(self, batch: np.ndarray) -> np.ndarray:
        """Like calling the objective, without counting evaluations."""
        batch = np.asarray(batch, dtype=int)
        k = self.plan.k
        skill = self.levels[batch, np.arange(k)].sum(axis=1) if k else np.zeros(len(batch))
        return self.set_terms(batch) + self.skill_term(skill)
