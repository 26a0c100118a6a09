from dataclasses import replace

import numpy as np
import pytest

from teamforge import metrics
from teamforge.model import Instance, LeaderVariant, Project, SocialGraph, Team, validate_team
from teamforge.solvers import solve_exact
from teamforge.strategies import (
    ZERO_NOISE,
    LeaderPolicy,
    NoiseParams,
    build_leader_view,
    build_platform_view,
    hop_counts,
    leader_sigma,
    platform_sigma,
    recruit_hybrid,
    recruit_leader,
    recruit_platform,
    select_leader,
    swap_refine,
    truth_view,
)

from conftest import small_instance, worker


def path_graph_instance(n=8):
    roster = tuple(worker(i, (0.1 * (i % 10), 0.5), history=i) for i in range(n))
    g = SocialGraph.from_edges(n, [(i, i + 1, 0.9) for i in range(n - 1)])
    return Instance(roster, g, Project((0, 1), (0.0, 0.0)))


def test_platform_sigma_formula():
    inst = path_graph_instance()
    s = platform_sigma(inst, NoiseParams())
    assert s[0] == pytest.approx(0.3)
    assert s[3] == pytest.approx(0.3 / 4)
    assert np.all(np.diff(s) < 0)  # strictly decreasing in history


def test_platform_sigma_large_history_vanishes():
    roster = (worker(0, (0.5,), history=10**9), worker(1, (0.5,)))
    inst = Instance(roster, SocialGraph.from_edges(2, [(0, 1, 0.5)]), Project((0,), (0, 0)))
    view = build_platform_view(inst, NoiseParams(), np.random.default_rng(0))
    assert abs(view.perceived_skills[0, 0] - 0.5) < 1e-6


def test_leader_sigma_hops():
    inst = path_graph_instance()
    assert hop_counts(inst, 0).tolist() == list(range(8))
    s = leader_sigma(inst, 0, NoiseParams())
    assert s[0] == 0.0
    assert s[3] == pytest.approx(0.3)
    assert s[7] == pytest.approx(0.5)  # 0.7 capped
    assert np.all(np.diff(s) >= 0)


def test_leader_sees_itself_exactly():
    inst = small_instance(20, 7, seed=2)
    view = build_leader_view(inst, 5, NoiseParams(), np.random.default_rng(1))
    assert np.array_equal(view.perceived_skills[5], inst.skills[5])


def test_zero_noise_views_equal_truth():
    inst = small_instance(12, 4, seed=3)
    t = truth_view(inst)
    for view in (build_platform_view(inst, ZERO_NOISE, np.random.default_rng(0)),
                 build_leader_view(inst, 2, ZERO_NOISE, np.random.default_rng(0))):
        assert np.array_equal(view.perceived_skills, t.perceived_skills)
        assert np.array_equal(view.perceived_strengths, t.perceived_strengths)


def test_view_is_frozen_and_in_range():
    inst = small_instance(12, 4, seed=3)
    view = build_platform_view(inst, NoiseParams(sigma_platform_max=3.0), np.random.default_rng(0))
    assert view.perceived_skills.min() >= 0 and view.perceived_skills.max() <= 1
    assert np.array_equal(view.perceived_strengths, view.perceived_strengths.T)
    with pytest.raises(ValueError):
        view.perceived_skills[0, 0] = 0.5


def test_select_leader_policies():
    n = 6
    roster = tuple(worker(i, (0.2,), history=50 if i == 4 else i) for i in range(n))
    star = SocialGraph.from_edges(n, [(2, j, 0.5) for j in range(n) if j != 2])
    inst = Instance(roster, star, Project((0,), (0, 0)))
    assert select_leader(inst, LeaderPolicy.MAX_WEIGHTED_DEGREE) == 2
    assert select_leader(inst, "max_history") == 4
    # every worker ties on average skill
    assert select_leader(inst, LeaderPolicy.MAX_AVG_SKILL) == 0


def test_member_leader_single_skill():
    inst = small_instance(10, 1, seed=4)
    out = recruit_leader(inst, noise=ZERO_NOISE)
    assert out.team.workers == (out.leader,)
    assert out.team.leader_variant is LeaderVariant.MEMBER


def test_supervisor_cost_includes_leader():
    inst = small_instance(10, 3, seed=5)
    out = recruit_leader(inst, variant="supervisor", rng=np.random.default_rng(0))
    L = out.leader
    assert L not in out.team.members and L in out.team.workers
    members = sum(inst.worker_costs[w] for w in out.team.members)
    assert out.report_true.cost == pytest.approx(members + inst.worker_costs[L])
    assert validate_team(out.team, inst.project, inst.roster) == []


def test_supervisor_infeasible():
    inst = small_instance(4, 4, seed=1)
    with pytest.raises(ValueError, match="infeasible"):
        recruit_leader(inst, variant="supervisor")


def test_member_leader_takes_perceived_best_skill():
    inst = small_instance(20, 7, seed=6)
    out = recruit_leader(inst, rng=np.random.default_rng(3))
    req = inst.project.required_skills
    lv = build_leader_view(inst, out.leader, NoiseParams(), np.random.default_rng(3))
    own = req[int(np.argmax(lv.perceived_skills[out.leader, list(req)]))]
    assert out.team.assignment[own] == out.leader


def test_platform_zero_noise_matches_truth_solve():
    inst = small_instance(14, 5, seed=7)
    out = recruit_platform(inst, noise=ZERO_NOISE)
    assert out.team == solve_exact(inst, truth_view(inst)).team
    assert out.leader is None
    assert out.report_true == out.report_perceived


def test_platform_forced_team_and_determinism():
    inst = small_instance(5, 5, seed=8)
    out = recruit_platform(inst, rng=np.random.default_rng(0))
    assert sorted(out.team.members) == list(range(5))
    inst = small_instance(20, 7, seed=9)
    a = recruit_platform(inst, rng=np.random.default_rng(1))
    b = recruit_platform(inst, rng=np.random.default_rng(1))
    assert a == b


def test_hybrid_infinite_delta_keeps_proposal():
    inst = small_instance(16, 5, seed=10)
    lv = build_leader_view(inst, select_leader(inst), NoiseParams(), np.random.default_rng(0))
    pv = build_platform_view(inst, NoiseParams(), np.random.default_rng(1))
    proposal = recruit_leader(inst, view=lv)
    hyb = recruit_hybrid(inst, delta=np.inf, leader_view=lv, platform_view=pv)
    assert hyb.team == proposal.team and hyb.swaps == 0


def test_hybrid_fixed_point():
    # leader proposal already swap-optimal for the (noise-free) platform
    inst = small_instance(12, 4, seed=11)
    t = truth_view(inst)
    proposal = recruit_leader(inst, view=t).team
    refined, _ = swap_refine(inst, proposal, t, inst.project.weights, 0.0, protected=proposal.leader)
    hyb = recruit_hybrid(inst, delta=1e-12, leader_view=t, platform_view=t)
    # with zero noise the result is at least as good as the swap fixed point
    f = lambda team: metrics.fitness(inst, team, t)
    assert f(hyb.team) >= f(refined) - 1e-12
    again, swaps = swap_refine(inst, refined, t, inst.project.weights, 0.0, protected=proposal.leader)
    assert again == refined and swaps == 0


def test_swap_refine_protects_leader_and_terminates():
    inst = small_instance(20, 7, seed=12)
    pv = build_platform_view(inst, NoiseParams(), np.random.default_rng(2))
    start = recruit_leader(inst, rng=np.random.default_rng(5)).team
    team, swaps = swap_refine(inst, start, pv, inst.project.weights, 0.01, protected=start.leader)
    assert start.leader in team.members
    assert swaps <= 1.0 / 0.01 + 1
    with pytest.raises(ValueError):
        swap_refine(inst, start, pv, inst.project.weights, -1.0)


@pytest.mark.parametrize("seed", range(8))
def test_leader_in_team(seed):
    inst = small_instance(20, 7, seed=100 + seed)
    out = recruit_leader(inst, rng=np.random.default_rng(seed))
    assert out.leader in out.team.members
    hyb = recruit_hybrid(inst, rng=np.random.default_rng(seed))
    # the leader stays unless the platform replaced the whole proposal
    assert hyb.leader in hyb.team.members or hyb.team.leader_variant is LeaderVariant.NONE
    assert validate_team(hyb.team, inst.project, inst.roster) == []


@pytest.mark.parametrize("seed", range(10))
def test_zero_noise_collapse(seed):
    inst = small_instance(20, 7, seed=200 + seed)
    rng = np.random.default_rng(seed)
    plat = recruit_platform(inst, noise=ZERO_NOISE, rng=rng)
    # delta -> 0+: any strict platform improvement is recommended
    hyb = recruit_hybrid(inst, noise=ZERO_NOISE, delta=1e-12, rng=rng)
    assert hyb.report_perceived.fitness == pytest.approx(plat.report_perceived.fitness, abs=1e-12)
    # at the default threshold the platform tolerates a gap of at most delta
    loose = recruit_hybrid(inst, noise=ZERO_NOISE, rng=rng)
    assert 0 <= plat.report_perceived.fitness - loose.report_perceived.fitness <= 0.05 + 1e-12
    for out in (plat, hyb, loose, recruit_leader(inst, noise=ZERO_NOISE, rng=rng)):
        r = out.report_true
        assert r.uncertainty_skill == 0 and r.uncertainty_social == 0 and r.uncertainty == 0
