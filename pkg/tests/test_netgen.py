from collections import deque

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from teamforge import netgen
from teamforge.netgen import (
    GenerationError,
    NetGenParams,
    RosterParams,
    ring_lattice,
    sample_project,
    sample_workers,
    watts_strogatz,
)


def bfs_connected(n, edges):
    adj = {i: set() for i in range(n)}
    for i, j, _ in edges:
        adj[i].add(j)
        adj[j].add(i)
    seen, q = {0}, deque([0])
    while q:
        for v in adj[q.popleft()]:
            if v not in seen:
                seen.add(v)
                q.append(v)
    return len(seen) == n


def degrees(n, edges):
    d = [0] * n
    for i, j, _ in edges:
        d[i] += 1
        d[j] += 1
    return d


def test_six_cycle():
    g = watts_strogatz(NetGenParams(n=6, k=2, beta=0.0), np.random.default_rng(0))
    assert len(g.edges) == 6
    assert degrees(6, g.edges) == [2] * 6
    # unweighted diameter of C6
    dist = np.full((6, 6), 99)
    np.fill_diagonal(dist, 0)
    for i, j, _ in g.edges:
        dist[i, j] = dist[j, i] = 1
    for k in range(6):
        dist = np.minimum(dist, dist[:, [k]] + dist[[k], :])
    assert dist.max() == 3


def test_ring_lattice_degree():
    g = watts_strogatz(NetGenParams(n=20, k=4, beta=0.0), np.random.default_rng(0))
    assert len(g.edges) == 40
    assert degrees(20, g.edges) == [4] * 20
    assert {(i, j) for i, j, _ in g.edges} == ring_lattice(20, 4)


def test_seeded_rewired_graph_connected():
    g = watts_strogatz(NetGenParams(n=20, k=4, beta=0.3), np.random.default_rng(42))
    assert len(g.edges) == 40
    assert bfs_connected(20, g.edges)
    assert {(i, j) for i, j, _ in g.edges} != ring_lattice(20, 4)


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(5, 30),
    half_k=st.integers(1, 3),
    beta=st.floats(0, 1),
    seed=st.integers(0, 2**32 - 1),
)
def test_edge_count_and_connectivity(n, half_k, beta, seed):
    k = 2 * half_k
    if k >= n:
        k = 2
    try:
        g = watts_strogatz(NetGenParams(n=n, k=k, beta=beta), np.random.default_rng(seed))
    except GenerationError:
        return  # k=2 with heavy rewiring can be pathological; exhaustion is the contract
    assert len(g.edges) == n * k // 2
    assert len({(i, j) for i, j, _ in g.edges}) == len(g.edges)
    assert all(i < j for i, j, _ in g.edges)
    assert all(0 < w <= 1 for *_, w in g.edges)
    assert bfs_connected(n, g.edges)


def test_retry_exhaustion(monkeypatch):
    calls = []

    def never(n, edges):
        calls.append(n)
        return False

    monkeypatch.setattr(netgen, "is_connected", never)
    with pytest.raises(GenerationError):
        watts_strogatz(NetGenParams(n=20, k=4, beta=0.3), np.random.default_rng(0))
    assert len(calls) == netgen.MAX_GRAPH_RETRIES


@pytest.mark.parametrize("bad", [dict(k=3), dict(k=0), dict(k=20), dict(beta=1.5)])
def test_invalid_params(bad):
    with pytest.raises(ValueError):
        watts_strogatz(NetGenParams(n=20, **{"k": 4, **bad}), np.random.default_rng(0))


def test_sample_workers_shapes_and_ranges():
    ws = sample_workers(RosterParams(n=20, skill_count=7), np.random.default_rng(5))
    assert [w.id for w in ws] == list(range(20))
    for w in ws:
        assert len(w.skill_levels) == 7
        assert all(0 <= s <= 1 for s in w.skill_levels)
        assert 1 <= w.reward_demand <= 10
        assert 0.5 <= w.travel_rate <= 2
        assert 0 <= w.history_count <= 50


def test_sample_workers_deterministic():
    a = sample_workers(RosterParams(), np.random.default_rng(9))
    b = sample_workers(RosterParams(), np.random.default_rng(9))
    assert a == b


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_sampled_attributes_in_range(seed):
    for w in sample_workers(RosterParams(n=10, skill_count=4), np.random.default_rng(seed)):
        assert all(0 <= s <= 1 for s in w.skill_levels)
        assert 1 <= w.reward_demand <= 10 and 0.5 <= w.travel_rate <= 2
        assert 0 <= w.history_count <= 50
        assert all(0 <= c <= 1 for c in w.location)


def test_sample_project():
    p = sample_project(7, 7, rng=np.random.default_rng(1))
    assert p.required_skills == tuple(range(7))
    q = sample_project(10, 7, rng=np.random.default_rng(1))
    assert len(set(q.required_skills)) == 7 and max(q.required_skills) < 10
    assert sample_project(10, 7, rng=np.random.default_rng(3)) == sample_project(10, 7, rng=np.random.default_rng(3))
    with pytest.raises(ValueError, match="exceed"):
        sample_project(7, 8, rng=np.random.default_rng(1))
