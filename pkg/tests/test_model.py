from dataclasses import replace

from teamforge.model import LeaderVariant, Project, SocialGraph, Team, validate_instance, validate_team

from conftest import small_instance


def test_generated_instance_is_valid():
    inst = small_instance(20, 7, seed=1)
    assert len(inst.graph.edges) == 40
    assert validate_instance(inst) == []


def test_zero_edge_weight_is_flagged():
    inst = small_instance(20, 7, seed=1)
    i, j, _ = inst.graph.edges[0]
    bad = replace(inst, graph=SocialGraph(20, ((i, j, 0.0),) + inst.graph.edges[1:]))
    assert any("edge weight out of (0,1]" in v for v in validate_instance(bad))


def test_graph_roster_size_mismatch():
    inst = small_instance(20, 7, seed=1)
    bad = replace(inst, graph=SocialGraph(19, tuple(e for e in inst.graph.edges if max(e[:2]) < 19)))
    assert any("roster/graph size mismatch" in v for v in validate_instance(bad))


def test_self_loop_and_duplicate_edges():
    inst = small_instance(6, 2, seed=3)
    bad = replace(inst, graph=SocialGraph(6, inst.graph.edges + ((2, 2, 0.5), inst.graph.edges[0])))
    problems = validate_instance(bad)
    assert any("self-loop" in p for p in problems)
    assert any("duplicate edge" in p for p in problems)


def test_validation_is_pure():
    inst = small_instance(8, 3, seed=2)
    assert validate_instance(inst) == validate_instance(inst)


def test_team_one_worker_per_skill_ok():
    inst = small_instance(20, 7, seed=1)
    team = Team({s: s for s in inst.project.required_skills})
    assert validate_team(team, inst.project, inst.roster) == []


def test_team_worker_on_two_skills():
    proj = Project((0, 1), (0.5, 0.5))
    inst = small_instance(4, 2, seed=0)
    problems = validate_team(Team({0: 3, 1: 3}), proj, inst.roster)
    assert any("holds 2 skills" in p for p in problems)
    relaxed = replace(proj, max_skills_per_worker=2)
    assert validate_team(Team({0: 3, 1: 3}), relaxed, inst.roster) == []


def test_team_coverage():
    inst = small_instance(6, 3, seed=0)
    req = inst.project.required_skills
    problems = validate_team(Team({req[0]: 0, req[1]: 1}), inst.project, inst.roster)
    assert any("not covered" in p for p in problems)


def test_supervisor_holding_slot_is_flagged():
    inst = small_instance(6, 2, seed=0)
    a, b = inst.project.required_skills
    team = Team({a: 0, b: 1}, leader=1, leader_variant=LeaderVariant.SUPERVISOR)
    assert any("supervisor" in p for p in validate_team(team, inst.project, inst.roster))
    ok = Team({a: 0, b: 1}, leader=2, leader_variant=LeaderVariant.SUPERVISOR)
    assert validate_team(ok, inst.project, inst.roster) == []


def test_member_leader_must_hold_slot():
    inst = small_instance(6, 2, seed=0)
    a, b = inst.project.required_skills
    bad = Team({a: 0, b: 1}, leader=4, leader_variant=LeaderVariant.MEMBER)
    assert validate_team(bad, inst.project, inst.roster)
    good = Team({a: 0, b: 1}, leader=1, leader_variant=LeaderVariant.MEMBER)
    assert validate_team(good, inst.project, inst.roster) == []


def test_team_workers_include_supervisor():
    team = Team({1: 5, 0: 2}, leader=7, leader_variant=LeaderVariant.SUPERVISOR)
    assert team.members == (2, 5)
    assert team.workers == (2, 5, 7)
    assert list(team.assignment) == [0, 1]
