"""Domain types for team formation plus structural validation.

All types are frozen dataclasses; derived numpy arrays are cached on first
access and must be treated as read-only.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Optional, Sequence

import numpy as np


class LeaderVariant(str, enum.Enum):
    MEMBER = "member"
    SUPERVISOR = "supervisor"
    NONE = "none"


@dataclass(frozen=True)
class FitnessWeights:
    w_skill: float = 0.35
    w_rel: float = 0.30
    w_cost: float = 0.20
    w_unc: float = 0.15

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.w_skill, self.w_rel, self.w_cost, self.w_unc)

    @property
    def shift(self) -> float:
        """Offset that makes every fitness value strictly positive."""
        return self.w_cost + self.w_unc


@dataclass(frozen=True)
class Worker:
    id: int
    skill_levels: tuple[float, ...]
    reward_demand: float
    travel_rate: float
    history_count: int
    location: tuple[float, float]

    def travel_cost(self, target: Sequence[float]) -> float:
        return self.travel_rate * math.dist(self.location, target)


@dataclass(frozen=True)
class SocialGraph:
    """Weighted undirected graph; edges are stored as sorted ``(i, j, w)`` with i < j."""

    node_count: int
    edges: tuple[tuple[int, int, float], ...]

    @classmethod
    def from_edges(cls, node_count: int, edges) -> "SocialGraph":
        norm = []
        for i, j, w in edges:
            i, j = int(i), int(j)
            if i > j:
                i, j = j, i
            norm.append((i, j, float(w)))
        return cls(node_count, tuple(sorted(norm)))

    @cached_property
    def weight_matrix(self) -> np.ndarray:
        W = np.zeros((self.node_count, self.node_count))
        for i, j, w in self.edges:
            W[i, j] = W[j, i] = w
        W.flags.writeable = False
        return W

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.node_count)]
        for i, j, _ in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return tuple(tuple(sorted(a)) for a in adj)

    def degree(self, i: int) -> int:
        return len(self.neighbors[i])

    def weighted_degree(self, i: int) -> float:
        return float(self.weight_matrix[i].sum())


@dataclass(frozen=True)
class Project:
    required_skills: tuple[int, ...]
    location: tuple[float, float]
    weights: FitnessWeights = field(default_factory=FitnessWeights)
    max_skills_per_worker: int = 1

    @property
    def m(self) -> int:
        return len(self.required_skills)


@dataclass(frozen=True)
class Team:
    assignment: Mapping[int, int]  # skill id -> worker id
    leader: Optional[int] = None
    leader_variant: LeaderVariant = LeaderVariant.NONE

    def __post_init__(self):
        # canonical ordering so equal teams compare and hash equal
        object.__setattr__(self, "assignment", dict(sorted(self.assignment.items())))

    @property
    def members(self) -> tuple[int, ...]:
        """Distinct workers holding a skill slot, in ascending id order."""
        return tuple(sorted(set(self.assignment.values())))

    @property
    def workers(self) -> tuple[int, ...]:
        """Every selected worker, including a supervising leader."""
        ws = set(self.assignment.values())
        if self.leader is not None:
            ws.add(self.leader)
        return tuple(sorted(ws))


@dataclass(frozen=True)
class Instance:
    roster: tuple[Worker, ...]
    graph: SocialGraph
    project: Project

    def __post_init__(self):
        object.__setattr__(self, "roster", tuple(self.roster))

    @property
    def n(self) -> int:
        return len(self.roster)

    @property
    def skill_count(self) -> int:
        return len(self.roster[0].skill_levels) if self.roster else 0

    @cached_property
    def skills(self) -> np.ndarray:
        """n x skill_count matrix of true skill levels."""
        a = np.array([w.skill_levels for w in self.roster], dtype=float)
        a.flags.writeable = False
        return a

    @cached_property
    def worker_costs(self) -> np.ndarray:
        """Per-worker cost of joining: reward demand plus travel to the project."""
        loc = self.project.location
        a = np.array([w.reward_demand + w.travel_cost(loc) for w in self.roster])
        a.flags.writeable = False
        return a

    @cached_property
    def cost_cap(self) -> float:
        worst = max(w.reward_demand + w.travel_rate * math.sqrt(2.0) for w in self.roster)
        return self.project.m * worst

    @cached_property
    def strengths(self) -> np.ndarray:
        """All-pairs relationship strength matrix (true values)."""
        from .metrics import strength_matrix

        S = strength_matrix(self.graph)
        S.flags.writeable = False
        return S


def _in_unit_square(p) -> bool:
    return len(p) == 2 and all(0.0 <= float(c) <= 1.0 for c in p)


def validate_instance(instance: Instance) -> list[str]:
    """Return every invariant violation of ``instance``; an empty list means valid."""
    out: list[str] = []
    roster, graph, project = instance.roster, instance.graph, instance.project
    if graph.node_count != len(roster):
        out.append(
            f"roster/graph size mismatch: graph has {graph.node_count} nodes, roster has {len(roster)} workers"
        )
    skill_count = len(roster[0].skill_levels) if roster else 0
    for idx, w in enumerate(roster):
        if w.id != idx:
            out.append(f"worker ids not dense: position {idx} holds id {w.id}")
        if len(w.skill_levels) != skill_count:
            out.append(f"worker {w.id}: skill_levels length {len(w.skill_levels)} != {skill_count}")
        if any(not (0.0 <= s <= 1.0) for s in w.skill_levels):
            out.append(f"worker {w.id}: skill level outside [0,1]")
        if not w.reward_demand >= 0:
            out.append(f"worker {w.id}: negative reward_demand")
        if not w.travel_rate >= 0:
            out.append(f"worker {w.id}: negative travel_rate")
        if w.history_count < 0:
            out.append(f"worker {w.id}: negative history_count")
        if not _in_unit_square(w.location):
            out.append(f"worker {w.id}: location outside unit square")

    seen = set()
    for i, j, wt in graph.edges:
        if i == j:
            out.append(f"self-loop on node {i}")
        if not (0 <= i < graph.node_count and 0 <= j < graph.node_count):
            out.append(f"edge ({i},{j}) references node outside 0..{graph.node_count - 1}")
        key = (min(i, j), max(i, j))
        if key in seen:
            out.append(f"duplicate edge ({key[0]},{key[1]})")
        seen.add(key)
        if not (0.0 < wt <= 1.0):
            out.append(f"edge ({i},{j}): edge weight out of (0,1]")

    req = project.required_skills
    if len(req) < 1:
        out.append("project requires no skills")
    if len(set(req)) != len(req):
        out.append("project required_skills not distinct")
    if any(not (0 <= s < skill_count) for s in req):
        out.append("project required skill id outside 0..skill_count-1")
    if not _in_unit_square(project.location):
        out.append("project location outside unit square")
    if project.max_skills_per_worker < 1:
        out.append("max_skills_per_worker must be positive")
    ws = project.weights.as_tuple()
    if any(x < 0 for x in ws) or sum(ws) <= 0:
        out.append("fitness weights must be non-negative with a positive sum")
    return out


def validate_team(team: Team, project: Project, roster: Sequence[Worker]) -> list[str]:
    """Check skill coverage, per-worker slot limits and leader-variant consistency."""
    out: list[str] = []
    n = len(roster)
    required = set(project.required_skills)
    assigned = set(team.assignment)
    if assigned != required:
        missing = sorted(required - assigned)
        extra = sorted(assigned - required)
        if missing:
            out.append(f"required skills not covered: {missing}")
        if extra:
            out.append(f"skills assigned but not required: {extra}")
    load: dict[int, int] = {}
    for s, w in team.assignment.items():
        if not 0 <= w < n:
            out.append(f"skill {s} assigned to unknown worker {w}")
        load[w] = load.get(w, 0) + 1
    for w, c in sorted(load.items()):
        if c > project.max_skills_per_worker:
            out.append(f"worker {w} holds {c} skills, limit {project.max_skills_per_worker}")

    v = team.leader_variant
    if v is LeaderVariant.NONE:
        if team.leader is not None:
            out.append("leader set but leader_variant is None")
    else:
        if team.leader is None:
            out.append(f"leader_variant {v.value} requires a leader")
        elif not 0 <= team.leader < n:
            out.append(f"leader {team.leader} is not a roster worker")
        elif v is LeaderVariant.MEMBER and team.leader not in load:
            out.append("member leader does not hold a skill slot")
        elif v is LeaderVariant.SUPERVISOR and team.leader in load:
            out.append("supervisor leader also holds a skill slot")
    return out
