import itertools

import numpy as np
import pytest

from teamforge import metrics
from teamforge.model import FitnessWeights, Instance, Project, SocialGraph, Team, Worker
from teamforge.netgen import NetGenParams, RosterParams, generate_instance
from teamforge.strategies import NoiseParams, build_platform_view


def small_instance(n, m, seed, skill_count=None, weights=None):
    skill_count = skill_count or m
    k = 2 if n < 6 else 4
    return generate_instance(
        NetGenParams(n=n, k=k, beta=0.3),
        RosterParams(n=n, skill_count=skill_count),
        m,
        weights or FitnessWeights(),
        seed=seed,
    )


def noisy_view(inst, seed, sigma_max=0.3):
    return build_platform_view(inst, NoiseParams(sigma_platform_max=sigma_max), np.random.default_rng(seed))


def naive_best(inst, view, weights=None):
    """Best fitness over every injective skill -> worker map (brute force oracle)."""
    req = inst.project.required_skills
    best = -np.inf
    for ws in itertools.permutations(range(inst.n), len(req)):
        team = Team(dict(zip(req, ws)))
        best = max(best, metrics.fitness(inst, team, view, weights))
    return best


def worker(i, skills, reward=1.0, travel=0.0, history=0, loc=(0.0, 0.0)):
    return Worker(i, tuple(skills), reward, travel, history, loc)


@pytest.fixture
def path_instance():
    """Three workers on a path 0 -(0.4)- 1 -(0.5)- 2, project at the origin."""
    roster = (
        worker(0, (0.8, 0.6), reward=5.0, travel=1.0, loc=(0.0, 0.0)),
        worker(1, (0.2, 1.0), reward=3.0, travel=1.0, loc=(0.0, 0.0)),
        worker(2, (0.5, 0.5), reward=2.0, travel=1.0, loc=(0.0, 0.0)),
    )
    graph = SocialGraph.from_edges(3, [(0, 1, 0.4), (1, 2, 0.5)])
    return Instance(roster, graph, Project((0, 1), (0.0, 0.0)))


# acceptance lines, printed once at the end of the session
ACCEPTANCE: list[str] = []


def record_acceptance(criterion: int, ok: bool, detail: str):
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
