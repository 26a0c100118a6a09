"""Recruitment metrics and the composite fitness.

Every metric can be read either from ground truth or through a recruiter's
:class:`~teamforge.strategies.KnowledgeView`; pass ``view=None`` for truth.

Fitness of a team T::

    w_skill * skill(T) + w_rel * relationship(T)
        - w_cost * cost(T) / cost_cap - w_unc * uncertainty(T)

where ``cost_cap = m * max_i(reward_i + travel_rate_i * sqrt(2))`` and the
uncertainty term is the recruiter's mean noise scale over the selected
workers (zero under ground truth, unless a realized error is supplied).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional

import numpy as np

from .model import FitnessWeights, Instance, SocialGraph, Team

if TYPE_CHECKING:
    from .strategies import KnowledgeView


@dataclass(frozen=True)
class MetricsReport:
    skill_level: float
    relationship: float
    cost: float
    cost_normalized: float
    uncertainty_skill: float
    uncertainty_social: float
    uncertainty: float
    fitness: float

    def as_dict(self) -> dict:
        return {
            "skill_level": self.skill_level,
            "relationship": self.relationship,
            "cost": self.cost,
            "cost_normalized": self.cost_normalized,
            "uncertainty_skill": self.uncertainty_skill,
            "uncertainty_social": self.uncertainty_social,
            "uncertainty": self.uncertainty,
            "fitness": self.fitness,
        }


def strength_matrix(graph: SocialGraph) -> np.ndarray:
    """All-pairs maximum path product of edge weights.

    Floyd-Warshall in the (max, *) semiring, which is the same as shortest
    paths under edge length ``-ln(weight)`` without the log round trip.
    Unreachable pairs get 0 and the diagonal is 1.
    """
    S = np.array(graph.weight_matrix, dtype=float)
    np.fill_diagonal(S, 1.0)
    for k in range(graph.node_count):
        np.maximum(S, np.multiply.outer(S[:, k], S[k, :]), out=S)
    return S


def pairwise_strength(graph: SocialGraph, i: int, j: int) -> float:
    if i == j:
        return 1.0
    return float(strength_matrix(graph)[i, j])


def _pairs(workers):
    return list(itertools.combinations(workers, 2))


def _levels(instance: Instance, view: Optional["KnowledgeView"]) -> np.ndarray:
    return instance.skills if view is None else view.perceived_skills


def _strengths(instance: Instance, view: Optional["KnowledgeView"]) -> np.ndarray:
    return instance.strengths if view is None else view.perceived_strengths


def team_skill_level(team: Team, instance: Instance, view: Optional["KnowledgeView"] = None) -> float:
    L = _levels(instance, view)
    vals = [L[w, s] for s, w in team.assignment.items()]
    return float(sum(vals) / len(vals))


def team_cost(team: Team, instance: Instance) -> float:
    c = instance.worker_costs
    return float(sum(c[w] for w in team.workers))


def team_relationship(team: Team, instance: Instance, view: Optional["KnowledgeView"] = None) -> float:
    pairs = _pairs(team.workers)
    if not pairs:
        return 1.0
    S = _strengths(instance, view)
    return float(sum(S[i, j] for i, j in pairs) / len(pairs))


def realized_uncertainty(team: Team, view: "KnowledgeView", instance: Instance) -> tuple[float, float]:
    """Mean absolute perception error on assigned skills and on selected pairs."""
    L, Lp = instance.skills, view.perceived_skills
    errs = [abs(Lp[w, s] - L[w, s]) for s, w in team.assignment.items()]
    u_skill = float(sum(errs) / len(errs))
    pairs = _pairs(team.workers)
    if not pairs:
        return u_skill, 0.0
    S, Sp = instance.strengths, view.perceived_strengths
    u_social = float(sum(abs(Sp[i, j] - S[i, j]) for i, j in pairs) / len(pairs))
    return u_skill, u_social


def mean_sigma(team: Team, view: Optional["KnowledgeView"]) -> float:
    if view is None:
        return 0.0
    ws = team.workers
    return float(sum(view.sigma[w] for w in ws) / len(ws))


def fitness(
    instance: Instance,
    team: Team,
    view: Optional["KnowledgeView"] = None,
    weights: Optional[FitnessWeights] = None,
    uncertainty: Optional[float] = None,
) -> float:
    """Composite fitness of ``team``.

    ``uncertainty`` overrides the penalty term; reporting passes the realized
    error here, solvers leave it to default to the view's mean sigma.
    """
    w = weights or instance.project.weights
    unc = mean_sigma(team, view) if uncertainty is None else uncertainty
    return (
        w.w_skill * team_skill_level(team, instance, view)
        + w.w_rel * team_relationship(team, instance, view)
        - w.w_cost * team_cost(team, instance) / instance.cost_cap
        - w.w_unc * unc
    )


def perceived_report(
    instance: Instance, team: Team, view: Optional["KnowledgeView"], weights: Optional[FitnessWeights] = None
) -> MetricsReport:
    """Metrics as the recruiter sees them; uncertainty fields hold its own noise scales."""
    cost = team_cost(team, instance)
    ws = team.workers
    if view is None:
        us = usoc = 0.0
    else:
        us = float(np.mean([view.sigma[w] for w in team.assignment.values()]))
        pairs = _pairs(ws)
        usoc = float(np.mean([(view.sigma[i] + view.sigma[j]) / 2 for i, j in pairs])) if pairs else 0.0
    return MetricsReport(
        skill_level=team_skill_level(team, instance, view),
        relationship=team_relationship(team, instance, view),
        cost=cost,
        cost_normalized=cost / instance.cost_cap,
        uncertainty_skill=us,
        uncertainty_social=usoc,
        uncertainty=(us + usoc) / 2,
        fitness=fitness(instance, team, view, weights),
    )


def true_report(
    instance: Instance, team: Team, view: Optional["KnowledgeView"], weights: Optional[FitnessWeights] = None
) -> MetricsReport:
    """Ground-truth metrics; uncertainty fields are the realized error of ``view``."""
    cost = team_cost(team, instance)
    us, usoc = (0.0, 0.0) if view is None else realized_uncertainty(team, view, instance)
    unc = (us + usoc) / 2
    return MetricsReport(
        skill_level=team_skill_level(team, instance),
        relationship=team_relationship(team, instance),
        cost=cost,
        cost_normalized=cost / instance.cost_cap,
        uncertainty_skill=us,
        uncertainty_social=usoc,
        uncertainty=unc,
        fitness=fitness(instance, team, None, weights, uncertainty=unc),
    )
