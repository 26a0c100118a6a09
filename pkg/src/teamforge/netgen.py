"""Synthetic social graphs, worker rosters and projects."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from . import rng as rngmod
from .model import FitnessWeights, Instance, Project, SocialGraph, Worker

MAX_GRAPH_RETRIES = 100


class GenerationError(RuntimeError):
    pass


@dataclass(frozen=True)
class NetGenParams:
    n: int = 20
    k: int = 4
    beta: float = 0.3
    weight_range: tuple[float, float] = (0.0, 1.0)

    def check(self):
        if self.k % 2 or not 0 < self.k < self.n:
            raise ValueError(f"need even k with 0 < k < n, got n={self.n}, k={self.k}")
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError(f"beta must lie in [0,1], got {self.beta}")
        lo, hi = self.weight_range
        if not 0.0 <= lo < hi <= 1.0:
            raise ValueError(f"weight_range must satisfy 0 <= low < high <= 1, got {self.weight_range}")


@dataclass(frozen=True)
class RosterParams:
    """Attribute distributions; all uniform, bounds inclusive except where noted."""

    n: int = 20
    skill_count: int = 7
    skill_range: tuple[float, float] = (0.0, 1.0)
    reward_range: tuple[float, float] = (1.0, 10.0)
    history_range: tuple[int, int] = (0, 50)
    travel_rate_range: tuple[float, float] = (0.5, 2.0)

    def check(self):
        if self.n < 1 or self.skill_count < 1:
            raise ValueError("roster needs n >= 1 and skill_count >= 1")
        lo, hi = self.skill_range
        if not 0.0 <= lo <= hi <= 1.0:
            raise ValueError("skill_range must lie within [0,1]")
        for name in ("reward_range", "travel_rate_range", "history_range"):
            lo, hi = getattr(self, name)
            if not 0 <= lo <= hi:
                raise ValueError(f"{name} must satisfy 0 <= low <= high")


def ring_lattice(n: int, k: int) -> set[tuple[int, int]]:
    edges = set()
    for u in range(n):
        for j in range(1, k // 2 + 1):
            v = (u + j) % n
            edges.add((min(u, v), max(u, v)))
    return edges


def is_connected(n: int, edges) -> bool:
    adj: list[list[int]] = [[] for _ in range(n)]
    for e in edges:
        i, j = e[0], e[1]
        adj[i].append(j)
        adj[j].append(i)
    seen = [False] * n
    seen[0] = True
    q = deque([0])
    count = 1
    while q:
        u = q.popleft()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                count += 1
                q.append(v)
    return count == n


def _rewire(n: int, k: int, beta: float, rng: np.random.Generator) -> list[tuple[int, int]]:
    # Watts-Strogatz rewiring: visit lattice edges (u, u+j) by distance j then
    # node u; with probability beta move the far endpoint to a uniform node
    # that is neither u nor already adjacent to u.
    adj = [set() for _ in range(n)]
    for i, j in ring_lattice(n, k):
        adj[i].add(j)
        adj[j].add(i)
    for j in range(1, k // 2 + 1):
        for u in range(n):
            v = (u + j) % n
            if v not in adj[u]:
                continue  # already rewired away from this slot
            if rng.random() >= beta:
                continue
            choices = [w for w in range(n) if w != u and w not in adj[u]]
            if not choices:
                continue
            w = choices[int(rng.integers(len(choices)))]
            adj[u].discard(v)
            adj[v].discard(u)
            adj[u].add(w)
            adj[w].add(u)
    return sorted((u, v) for u in range(n) for v in adj[u] if u < v)


def watts_strogatz(params: NetGenParams, rng: np.random.Generator) -> SocialGraph:
    """Connected small-world graph with ``n*k/2`` weighted edges.

    Disconnected draws are discarded and redrawn from the same stream;
    :class:`GenerationError` is raised after ``MAX_GRAPH_RETRIES`` failures.
    """
    params.check()
    lo, hi = params.weight_range
    for _ in range(MAX_GRAPH_RETRIES):
        pairs = _rewire(params.n, params.k, params.beta, rng)
        if not is_connected(params.n, pairs):
            continue
        # uniform on (lo, hi]
        weights = hi - (hi - lo) * rng.random(len(pairs))
        return SocialGraph(params.n, tuple((i, j, float(w)) for (i, j), w in zip(pairs, weights)))
    raise GenerationError(
        f"{MAX_GRAPH_RETRIES} consecutive disconnected Watts-Strogatz draws for {params}"
    )


def sample_workers(params: RosterParams, rng: np.random.Generator) -> list[Worker]:
    params.check()
    n, K = params.n, params.skill_count
    skills = rng.uniform(*params.skill_range, size=(n, K))
    reward = rng.uniform(*params.reward_range, size=n)
    hlo, hhi = params.history_range
    history = rng.integers(hlo, hhi + 1, size=n)
    travel = rng.uniform(*params.travel_rate_range, size=n)
    loc = rng.random((n, 2))
    return [
        Worker(
            id=i,
            skill_levels=tuple(float(x) for x in skills[i]),
            reward_demand=float(reward[i]),
            travel_rate=float(travel[i]),
            history_count=int(history[i]),
            location=(float(loc[i, 0]), float(loc[i, 1])),
        )
        for i in range(n)
    ]


def sample_project(
    skill_count: int,
    m: int,
    weights: FitnessWeights | None = None,
    rng: np.random.Generator | None = None,
    max_skills_per_worker: int = 1,
) -> Project:
    if not 1 <= m <= skill_count:
        raise ValueError(f"required skills exceed skill count ({m} > {skill_count})")
    if rng is None:
        rng = np.random.default_rng()
    req = rng.choice(skill_count, size=m, replace=False)
    loc = rng.random(2)
    return Project(
        required_skills=tuple(sorted(int(s) for s in req)),
        location=(float(loc[0]), float(loc[1])),
        weights=weights or FitnessWeights(),
        max_skills_per_worker=max_skills_per_worker,
    )


def generate_instance(
    netgen: NetGenParams,
    roster: RosterParams,
    m: int,
    weights: FitnessWeights | None = None,
    seed: int = 0,
    realization: int = 0,
) -> Instance:
    """One complete instance, each part drawn from its own derived stream."""
    if netgen.n != roster.n:
        raise ValueError(f"graph size {netgen.n} != roster size {roster.n}")
    graph = watts_strogatz(netgen, rngmod.stream(seed, rngmod.GRAPH, realization))
    workers = sample_workers(roster, rngmod.stream(seed, rngmod.ROSTER, realization))
    project = sample_project(
        roster.skill_count, m, weights, rngmod.stream(seed, rngmod.PROJECT, realization)
    )
    return Instance(tuple(workers), graph, project)
