"""Monte Carlo harness for the strategy and solver comparisons.

Each realization derives its own random streams from ``(master_seed,
realization, tag)``, so rows do not depend on execution order or on how
many worker processes ran them.
"""
from __future__ import annotations

import hashlib
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Optional, Sequence

import numpy as np

from . import rng as R
from .metrics import MetricsReport
from .model import FitnessWeights, Instance, LeaderVariant
from .netgen import NetGenParams, RosterParams, generate_instance
from .solvers import GaParams, PsoParams, get_solver, solve_exact
from .strategies import (
    LeaderPolicy,
    NoiseParams,
    Strategy,
    build_leader_view,
    build_platform_view,
    recruit_hybrid,
    recruit_leader,
    recruit_platform,
    select_leader,
)

DEFAULT_SEED = 20201
STRATEGY_ORDER = ("platform", "leader", "hybrid")
SOLVER_ORDER = ("exact", "ga", "pso")
METRICS = (
    "skill_level",
    "relationship",
    "cost",
    "cost_normalized",
    "uncertainty_skill",
    "uncertainty_social",
    "uncertainty",
    "fitness_true",
    "fitness_perceived",
    "approx_factor",
)
Z95 = 1.96


@dataclass(frozen=True)
class ExperimentConfig:
    realizations: int = 1000
    n_workers: int = 20
    skill_count: int = 7
    m_required: int = 7
    netgen: NetGenParams = NetGenParams()
    roster: RosterParams = RosterParams()
    noise: NoiseParams = NoiseParams()
    weights: FitnessWeights = FitnessWeights()
    strategies: tuple[str, ...] = STRATEGY_ORDER
    solvers: tuple[str, ...] = SOLVER_ORDER
    master_seed: int = DEFAULT_SEED
    ga: GaParams = GaParams()
    pso: PsoParams = PsoParams()
    leader_policy: str = LeaderPolicy.MAX_WEIGHTED_DEGREE.value
    leader_variant: str = LeaderVariant.MEMBER.value
    hybrid_delta: float = 0.05
    # list of {"k": .., "beta": ..} overrides for sweep mode
    sweep: tuple[dict, ...] = ()
    record_runtime: bool = False

    def __post_init__(self):
        # the top-level sizes are authoritative
        object.__setattr__(self, "netgen", replace(self.netgen, n=self.n_workers))
        object.__setattr__(
            self, "roster", replace(self.roster, n=self.n_workers, skill_count=self.skill_count)
        )
        object.__setattr__(self, "strategies", tuple(s.lower() for s in self.strategies))
        object.__setattr__(self, "solvers", tuple(s.lower() for s in self.solvers))
        object.__setattr__(self, "sweep", tuple(dict(p) for p in self.sweep))

    def check(self):
        if self.realizations < 1:
            raise ValueError("realizations must be >= 1")
        if not 1 <= self.m_required <= self.skill_count:
            raise ValueError(
                f"required skills exceed skill count ({self.m_required} > {self.skill_count})"
            )
        need = self.m_required + (1 if self.leader_variant == LeaderVariant.SUPERVISOR.value else 0)
        if need > self.n_workers:
            raise ValueError(f"{self.n_workers} workers cannot cover {self.m_required} skills")
        for s in self.strategies:
            Strategy(s)
        for s in self.solvers:
            if s not in SOLVER_ORDER:
                raise ValueError(f"unknown solver {s!r}")
        LeaderPolicy(self.leader_policy)
        LeaderVariant(self.leader_variant)
        self.netgen.check()
        self.roster.check()
        self.noise.check()
        self.ga.check()
        self.pso.check()

    def to_dict(self) -> dict:
        d = asdict(self)
        d["strategies"] = list(self.strategies)
        d["solvers"] = list(self.solvers)
        d["sweep"] = [dict(p) for p in self.sweep]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        nested = {
            "netgen": NetGenParams,
            "roster": RosterParams,
            "noise": NoiseParams,
            "weights": FitnessWeights,
            "ga": GaParams,
            "pso": PsoParams,
        }
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        kw = {}
        for k, v in d.items():
            if k in nested:
                sub_known = {f.name for f in fields(nested[k])}
                bad = set(v) - sub_known
                if bad:
                    raise ValueError(f"unknown keys in {k}: {sorted(bad)}")
                v = {a: tuple(b) if isinstance(b, list) else b for a, b in v.items()}
                kw[k] = nested[k](**v)
            elif k in ("strategies", "solvers", "sweep"):
                kw[k] = tuple(v)
            else:
                kw[k] = v
        return cls(**kw)


@dataclass(frozen=True)
class Row:
    realization: int
    strategy: str
    solver: str
    true: MetricsReport
    perceived: MetricsReport
    approx_factor: float = math.nan
    runtime: float = field(default=math.nan, compare=False)
    instance_digest: str = field(default="", compare=False)

    def metric(self, name: str) -> float:
        if name == "fitness_true":
            return self.true.fitness
        if name == "fitness_perceived":
            return self.perceived.fitness
        if name == "approx_factor":
            return self.approx_factor
        return getattr(self.true, name)


@dataclass(frozen=True)
class Aggregate:
    strategy: str
    solver: str
    metric: str
    count: int
    mean: float
    sd: float
    ci_half_width: float
    sd_defined: bool

    @property
    def ci_low(self) -> float:
        return self.mean - self.ci_half_width

    @property
    def ci_high(self) -> float:
        return self.mean + self.ci_half_width


@dataclass(frozen=True)
class ExperimentResult:
    mode: str
    config: ExperimentConfig
    rows: tuple[Row, ...]
    aggregates: tuple[Aggregate, ...]
    approximation: dict
    fitness_shift: float
    label: str = ""

    def get(self, strategy: str, solver: str, metric: str) -> Aggregate:
        for a in self.aggregates:
            if (a.strategy, a.solver, a.metric) == (strategy, solver, metric):
                return a
        raise KeyError((strategy, solver, metric))


def instance_digest(instance: Instance) -> str:
    h = hashlib.sha256()
    h.update(np.ascontiguousarray(instance.skills).tobytes())
    h.update(np.ascontiguousarray(instance.worker_costs).tobytes())
    h.update(repr(instance.graph.edges).encode())
    h.update(repr(instance.project).encode())
    return h.hexdigest()[:16]


def make_instance(config: ExperimentConfig, r: int) -> Instance:
    return generate_instance(
        config.netgen, config.roster, config.m_required, config.weights, config.master_seed, r
    )


def approximation_factor(exact_fitness: float, heuristic_fitness: float, shift: float) -> float:
    """Ratio of shifted fitness values; >= 1 whenever the exact value dominates."""
    return (exact_fitness + shift) / (heuristic_fitness + shift)


def strategy_realization(config: ExperimentConfig, r: int) -> list[Row]:
    """All enabled strategies, exact solver, one shared instance and shared views."""
    inst = make_instance(config, r)
    digest = instance_digest(inst)
    seed = config.master_seed
    pview = build_platform_view(inst, config.noise, R.stream(seed, R.NOISE_PLATFORM, r))
    leader = select_leader(inst, config.leader_policy)
    lview = build_leader_view(inst, leader, config.noise, R.stream(seed, R.NOISE_LEADER, r))
    srng = R.stream(seed, R.SOLVER, r)
    platform = None
    if "platform" in config.strategies or "hybrid" in config.strategies:
        platform = recruit_platform(inst, solve_exact, config.noise, srng, view=pview,
                                    weights=config.weights)
    rows = []
    for s in STRATEGY_ORDER:
        if s not in config.strategies:
            continue
        if s == "platform":
            out = platform
        elif s == "leader":
            out = recruit_leader(inst, solve_exact, config.noise, config.leader_policy,
                                 config.leader_variant, srng, view=lview, weights=config.weights)
        else:
            out = recruit_hybrid(inst, solve_exact, config.noise, config.leader_policy,
                                 config.hybrid_delta, srng, leader_view=lview, platform_view=pview,
                                 weights=config.weights, platform_solution=platform.solver_result)
        res = out.solver_result
        rows.append(Row(r, s, "exact", out.report_true, out.report_perceived,
                        runtime=res.runtime if res else math.nan, instance_digest=digest))
    return rows


def solver_realization(config: ExperimentConfig, r: int) -> list[Row]:
    """Platform strategy under every enabled solver, on one shared view."""
    inst = make_instance(config, r)
    digest = instance_digest(inst)
    seed = config.master_seed
    pview = build_platform_view(inst, config.noise, R.stream(seed, R.NOISE_PLATFORM, r))
    shift = config.weights.shift
    outs = {}
    for name in SOLVER_ORDER:
        if name not in config.solvers:
            continue
        solver = get_solver(name, config.ga, config.pso)
        outs[name] = recruit_platform(inst, solver, config.noise, R.stream(seed, f"solver/{name}", r),
                                      view=pview, weights=config.weights)
    exact_fit = outs["exact"].solver_result.perceived_fitness if "exact" in outs else None
    rows = []
    for name, out in outs.items():
        fit = out.solver_result.perceived_fitness
        af = approximation_factor(exact_fit, fit, shift) if exact_fit is not None else math.nan
        rows.append(Row(r, "platform", name, out.report_true, out.report_perceived, af,
                        runtime=out.solver_result.runtime, instance_digest=digest))
    return rows


def _run_chunk(args):
    kind, config, indices = args
    fn = strategy_realization if kind == "strategies" else solver_realization
    out = []
    for r in indices:
        out.extend(fn(config, r))
    return out


def _sort_key(row: Row):
    return (row.realization, STRATEGY_ORDER.index(row.strategy), SOLVER_ORDER.index(row.solver))


def run_rows(kind: str, config: ExperimentConfig, threads: int = 1, progress=None) -> list[Row]:
    idx = list(range(config.realizations))
    if threads <= 1:
        rows = []
        for r in idx:
            rows.extend(_run_chunk((kind, config, [r])))
            if progress:
                progress(r + 1, len(idx))
    else:
        chunks = [idx[i::threads * 4] for i in range(threads * 4)]
        chunks = [c for c in chunks if c]
        rows = []
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for done, part in enumerate(pool.map(_run_chunk, [(kind, config, c) for c in chunks]), 1):
                rows.extend(part)
                if progress:
                    progress(done, len(chunks))
    return sorted(rows, key=_sort_key)


def aggregate(rows: Sequence[Row], metrics: Sequence[str] = METRICS) -> list[Aggregate]:
    """Mean, sample sd and normal-approximation 95% CI per (strategy, solver, metric).

    A metric with no finite values in a group is skipped. With one value
    the sd is reported as 0 and flagged undefined.
    """
    if not rows:
        raise ValueError("cannot aggregate an empty row set")
    rows = sorted(rows, key=_sort_key)
    groups: dict[tuple[str, str], list[Row]] = {}
    for row in rows:
        groups.setdefault((row.strategy, row.solver), []).append(row)
    out = []
    for (st, so), grp in sorted(
        groups.items(), key=lambda kv: (STRATEGY_ORDER.index(kv[0][0]), SOLVER_ORDER.index(kv[0][1]))
    ):
        for m in metrics:
            vals = np.array([row.metric(m) for row in grp], dtype=float)
            vals = vals[np.isfinite(vals)]
            if len(vals) == 0:
                continue
            mean = float(np.mean(vals))
            if len(vals) > 1:
                sd, defined = float(np.std(vals, ddof=1)), True
            else:
                sd, defined = 0.0, False
            out.append(Aggregate(st, so, m, len(vals), mean, sd, Z95 * sd / math.sqrt(len(vals)), defined))
    return out


def _approximation(rows: Sequence[Row]) -> dict:
    out = {}
    for name in SOLVER_ORDER[1:]:
        af = [r.approx_factor for r in rows if r.solver == name and math.isfinite(r.approx_factor)]
        if af:
            out[name] = {"mean": float(np.mean(af)), "max": float(np.max(af)), "count": len(af)}
    return out


def _result(mode, config, rows, label=""):
    return ExperimentResult(
        mode=mode,
        config=config,
        rows=tuple(rows),
        aggregates=tuple(aggregate(rows)),
        approximation=_approximation(rows),
        fitness_shift=config.weights.shift,
        label=label,
    )


def run_strategy_experiment(config: ExperimentConfig, threads: int = 1, progress=None) -> ExperimentResult:
    config.check()
    return _result("strategies", config, run_rows("strategies", config, threads, progress))


def run_solver_experiment(config: ExperimentConfig, threads: int = 1, progress=None) -> ExperimentResult:
    config.check()
    if "exact" not in config.solvers:
        raise ValueError("the solver experiment needs the exact solver as its baseline")
    return _result("solvers", config, run_rows("solvers", config, threads, progress))


def sweep_label(point: dict) -> str:
    return "_".join(f"{k}{point[k]}" for k in sorted(point))


def run_sweep(config: ExperimentConfig, threads: int = 1, progress=None) -> list[ExperimentResult]:
    """Strategy experiment once per sweep point, each overriding graph parameters."""
    points = config.sweep or ({"k": config.netgen.k, "beta": config.netgen.beta},)
    results = []
    for p in points:
        bad = set(p) - {"k", "beta"}
        if bad:
            raise ValueError(f"sweep points may set only k and beta, got {sorted(bad)}")
        cfg = replace(config, netgen=replace(config.netgen, **p), sweep=())
        cfg.check()
        rows = run_rows("strategies", cfg, threads, progress)
        results.append(_result("strategies", cfg, rows, label=sweep_label(p)))
    return results
