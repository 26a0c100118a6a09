"""Recruiter knowledge models and the platform, leader and hybrid strategies."""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from . import metrics
from .metrics import MetricsReport
from .model import FitnessWeights, Instance, LeaderVariant, Team
from .solvers import SlotPlan, SolverResult, solve_exact


class Strategy(str, enum.Enum):
    PLATFORM = "platform"
    LEADER = "leader"
    HYBRID = "hybrid"


class LeaderPolicy(str, enum.Enum):
    MAX_WEIGHTED_DEGREE = "max_weighted_degree"
    MAX_HISTORY = "max_history"
    MAX_AVG_SKILL = "max_avg_skill"


@dataclass(frozen=True)
class NoiseParams:
    sigma_platform_max: float = 0.3
    sigma_hop: float = 0.1
    sigma_cap: float = 0.5

    def check(self):
        if min(self.sigma_platform_max, self.sigma_hop, self.sigma_cap) < 0:
            raise ValueError("noise scales must be non-negative")


ZERO_NOISE = NoiseParams(0.0, 0.0, 0.0)


@dataclass(frozen=True, eq=False)
class KnowledgeView:
    """A recruiter's perception of the roster, drawn once and then fixed.

    ``recruiter`` is ``"platform"``, ``"leader:<id>"``, ``"hybrid"`` or ``"truth"``.
    """

    recruiter: str
    perceived_skills: np.ndarray
    perceived_strengths: np.ndarray
    sigma: np.ndarray

    def __post_init__(self):
        for a in (self.perceived_skills, self.perceived_strengths, self.sigma):
            a.flags.writeable = False


def truth_view(instance: Instance) -> KnowledgeView:
    return KnowledgeView(
        "truth",
        np.array(instance.skills),
        np.array(instance.strengths),
        np.zeros(instance.n),
    )


def perceive(instance: Instance, sigma: np.ndarray, rng: np.random.Generator, recruiter: str) -> KnowledgeView:
    """Perturb true skills and strengths with per-worker Gaussian noise, clipped to [0,1].

    Skill (i, s) gets scale sigma_i; the pair (i, j) gets (sigma_i + sigma_j) / 2.
    """
    n = instance.n
    sigma = np.asarray(sigma, dtype=float)
    z_skill = rng.standard_normal(instance.skills.shape)
    z_pair = rng.standard_normal((n, n))
    skills = np.clip(instance.skills + z_skill * sigma[:, None], 0.0, 1.0)
    pair_scale = (sigma[:, None] + sigma[None, :]) / 2
    noise = np.triu(z_pair * pair_scale, 1)
    noise = noise + noise.T
    strengths = np.clip(instance.strengths + noise, 0.0, 1.0)
    np.fill_diagonal(strengths, 1.0)
    return KnowledgeView(recruiter, skills, strengths, sigma.copy())


def platform_sigma(instance: Instance, noise: NoiseParams) -> np.ndarray:
    h = np.array([w.history_count for w in instance.roster], dtype=float)
    return noise.sigma_platform_max / (1.0 + h)


def hop_counts(instance: Instance, source: int) -> np.ndarray:
    """Unweighted BFS distance from ``source``; unreachable nodes get -1."""
    nbrs = instance.graph.neighbors
    dist = np.full(instance.n, -1, dtype=int)
    dist[source] = 0
    q = deque([source])
    while q:
        u = q.popleft()
        for v in nbrs[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                q.append(v)
    return dist


def leader_sigma(instance: Instance, leader: int, noise: NoiseParams) -> np.ndarray:
    hops = hop_counts(instance, leader).astype(float)
    hops[hops < 0] = np.inf
    return np.minimum(noise.sigma_hop * hops, noise.sigma_cap)


def build_platform_view(instance: Instance, noise: NoiseParams, rng: np.random.Generator) -> KnowledgeView:
    return perceive(instance, platform_sigma(instance, noise), rng, "platform")


def build_leader_view(
    instance: Instance, leader: int, noise: NoiseParams, rng: np.random.Generator
) -> KnowledgeView:
    return perceive(instance, leader_sigma(instance, leader, noise), rng, f"leader:{leader}")


def select_leader(instance: Instance, policy: LeaderPolicy | str = LeaderPolicy.MAX_WEIGHTED_DEGREE) -> int:
    policy = LeaderPolicy(policy)
    if policy is LeaderPolicy.MAX_WEIGHTED_DEGREE:
        score = instance.graph.weight_matrix.sum(axis=1)
    elif policy is LeaderPolicy.MAX_HISTORY:
        score = np.array([w.history_count for w in instance.roster], dtype=float)
    else:
        score = instance.skills.mean(axis=1)
    return int(np.argmax(score))  # first maximum = lowest id


@dataclass(frozen=True)
class RecruitmentOutcome:
    strategy: Strategy
    team: Team
    report_true: MetricsReport
    report_perceived: MetricsReport
    leader: Optional[int] = None
    solver_result: Optional[SolverResult] = field(default=None, compare=False)
    swaps: int = 0


Solver = Callable[..., SolverResult]


def _outcome(strategy, instance, team, view, weights, leader=None, result=None, swaps=0):
    return RecruitmentOutcome(
        strategy=strategy,
        team=team,
        report_true=metrics.true_report(instance, team, view, weights),
        report_perceived=metrics.perceived_report(instance, team, view, weights),
        leader=leader,
        solver_result=result,
        swaps=swaps,
    )


def recruit_platform(
    instance: Instance,
    solver: Solver = solve_exact,
    noise: NoiseParams = NoiseParams(),
    rng: np.random.Generator | None = None,
    *,
    view: KnowledgeView | None = None,
    weights: FitnessWeights | None = None,
) -> RecruitmentOutcome:
    rng = rng if rng is not None else np.random.default_rng(0)
    weights = weights or instance.project.weights
    if view is None:
        view = build_platform_view(instance, noise, rng)
    res = solver(instance, view, weights, plan=SlotPlan.full(instance), rng=rng)
    return _outcome(Strategy.PLATFORM, instance, res.team, view, weights, result=res)


def leader_plan(instance: Instance, leader: int, view: KnowledgeView, variant: LeaderVariant) -> SlotPlan:
    req = tuple(instance.project.required_skills)
    others = tuple(i for i in range(instance.n) if i != leader)
    if variant is LeaderVariant.MEMBER:
        own = req[int(np.argmax(view.perceived_skills[leader, list(req)]))]
        open_skills = tuple(s for s in req if s != own)
        if len(others) < len(open_skills):
            raise ValueError("infeasible: too few workers besides the leader")
        return SlotPlan(open_skills, others, fixed=((own, leader),), leader=leader,
                        leader_variant=LeaderVariant.MEMBER)
    if variant is LeaderVariant.SUPERVISOR:
        if len(others) < len(req):
            raise ValueError(
                f"infeasible: {len(others)} workers besides the supervisor for {len(req)} skills"
            )
        return SlotPlan(req, others, extra=(leader,), leader=leader,
                        leader_variant=LeaderVariant.SUPERVISOR)
    raise ValueError(f"leader strategy needs a Member or Supervisor variant, got {variant}")


def recruit_leader(
    instance: Instance,
    solver: Solver = solve_exact,
    noise: NoiseParams = NoiseParams(),
    policy: LeaderPolicy | str = LeaderPolicy.MAX_WEIGHTED_DEGREE,
    variant: LeaderVariant | str = LeaderVariant.MEMBER,
    rng: np.random.Generator | None = None,
    *,
    view: KnowledgeView | None = None,
    weights: FitnessWeights | None = None,
) -> RecruitmentOutcome:
    """Delegate recruitment to a leader who sees the roster through hop-based noise.

    A member leader takes the required skill it perceives itself best at and
    the solver fills the remaining slots from the other workers. A supervisor
    fills no slot but is paid and counts as a team member for relationship
    and uncertainty.
    """
    rng = rng if rng is not None else np.random.default_rng(0)
    weights = weights or instance.project.weights
    variant = LeaderVariant(variant)
    leader = select_leader(instance, policy)
    if view is None:
        view = build_leader_view(instance, leader, noise, rng)
    plan = leader_plan(instance, leader, view, variant)
    res = solver(instance, view, weights, plan=plan, rng=rng)
    return _outcome(Strategy.LEADER, instance, res.team, view, weights, leader=leader, result=res)


def swap_refine(
    instance: Instance,
    team: Team,
    view: KnowledgeView,
    weights: FitnessWeights,
    delta: float,
    protected: int | None = None,
    max_iter: int = 10_000,
) -> tuple[Team, int]:
    """Greedy best single-member replacement while the gain exceeds ``delta``.

    A swap puts a non-member on a member's skill slot. The slot held by
    ``protected`` is never touched. Returns the refined team and the number
    of swaps applied.
    """
    if delta < 0:
        raise ValueError("delta must be non-negative")
    current = team
    f_cur = metrics.fitness(instance, current, view, weights)
    swaps = 0
    while swaps < max_iter:
        in_team = set(current.workers)
        outsiders = [w for w in range(instance.n) if w not in in_team]
        best_gain, best_team = -np.inf, None
        for s, w_old in current.assignment.items():
            if w_old == protected:
                continue
            for w_new in outsiders:
                trial = replace(current, assignment={**current.assignment, s: w_new})
                gain = metrics.fitness(instance, trial, view, weights) - f_cur
                if gain > best_gain:
                    best_gain, best_team = gain, trial
        if best_team is None or not best_gain > delta:
            break
        current = best_team
        f_cur = metrics.fitness(instance, current, view, weights)
        swaps += 1
    return current, swaps


def attribution_view(
    team: Team, vouched_by_leader: set[int], leader_view: KnowledgeView, platform_view: KnowledgeView
) -> KnowledgeView:
    """Per-member perception of whichever recruiter put the member on the team.

    Pairs use the leader's perception only when both workers came from it.
    """
    skills = np.array(platform_view.perceived_skills)
    strengths = np.array(platform_view.perceived_strengths)
    sigma = np.array(platform_view.sigma)
    lv = sorted(vouched_by_leader)
    skills[lv] = leader_view.perceived_skills[lv]
    sigma[lv] = leader_view.sigma[lv]
    strengths[np.ix_(lv, lv)] = leader_view.perceived_strengths[np.ix_(lv, lv)]
    return KnowledgeView("hybrid", skills, strengths, sigma)


def recruit_hybrid(
    instance: Instance,
    solver: Solver = solve_exact,
    noise: NoiseParams = NoiseParams(),
    policy: LeaderPolicy | str = LeaderPolicy.MAX_WEIGHTED_DEGREE,
    delta: float = 0.05,
    rng: np.random.Generator | None = None,
    *,
    leader_view: KnowledgeView | None = None,
    platform_view: KnowledgeView | None = None,
    weights: FitnessWeights | None = None,
    platform_solution: SolverResult | None = None,
) -> RecruitmentOutcome:
    """Leader proposes, platform validates.

    1. The leader recruits as a member leader under its own view.
    2. The platform, under its view, applies greedy member swaps that gain
       more than ``delta`` (the leader's slot is kept).
    3. If the platform's own solution still beats the refined team by more
       than ``delta``, the platform's team is recommended instead; the
       delegate then stays on only if that team includes it.

    ``platform_solution`` may carry an already computed step-3 solve on
    ``platform_view`` so paired experiments do not repeat it.
    """
    rng = rng if rng is not None else np.random.default_rng(0)
    weights = weights or instance.project.weights
    if not delta >= 0:
        raise ValueError("delta must be non-negative")
    leader = select_leader(instance, policy)
    if leader_view is None:
        leader_view = build_leader_view(instance, leader, noise, rng)
    if platform_view is None:
        platform_view = build_platform_view(instance, noise, rng)

    proposal = recruit_leader(instance, solver, noise, policy, LeaderVariant.MEMBER, rng,
                              view=leader_view, weights=weights)
    team, swaps = swap_refine(instance, proposal.team, platform_view, weights, delta, protected=leader)
    vouched = set(proposal.team.workers) & set(team.workers)

    if np.isfinite(delta):
        own = platform_solution or solver(
            instance, platform_view, weights, plan=SlotPlan.full(instance), rng=rng
        )
        f_team = metrics.fitness(instance, team, platform_view, weights)
        if own.perceived_fitness - f_team > delta:
            ids = set(own.team.assignment.values())
            if leader in ids:
                team = replace(own.team, leader=leader, leader_variant=LeaderVariant.MEMBER)
            else:
                team = own.team
            vouched = set()
            swaps += 1

    view = attribution_view(team, vouched, leader_view, platform_view)
    return _outcome(Strategy.HYBRID, instance, team, view, weights, leader=leader,
                    result=proposal.solver_result, swaps=swaps)
