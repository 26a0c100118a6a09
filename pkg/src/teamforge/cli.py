"""Command line: ``teamforge generate | solve | experiment | report``."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from . import rng as R
from .experiment import ExperimentConfig, run_solver_experiment, run_strategy_experiment, run_sweep
from .files import (
    ScenarioError,
    read_config,
    read_scenario,
    write_bundle,
    write_scenario,
    write_sweep_bundle,
)
from .metrics import MetricsReport
from .model import FitnessWeights, LeaderVariant
from .netgen import GenerationError, NetGenParams, RosterParams, generate_instance
from .report import render
from .solvers import SOLVER_NAMES, get_solver
from .strategies import LeaderPolicy, NoiseParams, recruit_hybrid, recruit_leader, recruit_platform

EXIT_USAGE = 2
EXIT_FAILURE = 1


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_FAILURE):
        super().__init__(message)
        self.code = code


def cmd_generate(args) -> int:
    if args.required > args.skills:
        raise CliError("required skills exceed skill count", EXIT_USAGE)
    if args.workers < args.required:
        raise CliError("fewer workers than required skills", EXIT_USAGE)
    netgen = NetGenParams(n=args.workers, k=args.wsk, beta=args.wsbeta)
    roster = RosterParams(n=args.workers, skill_count=args.skills)
    try:
        netgen.check()
        inst = generate_instance(netgen, roster, args.required, FitnessWeights(), args.seed)
    except (ValueError, GenerationError) as e:
        raise CliError(str(e), EXIT_USAGE) from e
    meta = {
        "seed": args.seed,
        "generator": {"workers": args.workers, "skills": args.skills, "required": args.required,
                      "k": args.wsk, "beta": args.wsbeta},
    }
    write_scenario(args.output, inst, meta)
    return 0


def _report_text(title: str, rep: MetricsReport) -> list[str]:
    lines = [title]
    for k, v in rep.as_dict().items():
        lines.append(f"  {k:<20}{v:>14.6f}")
    return lines


def cmd_solve(args) -> int:
    try:
        inst = read_scenario(args.scenario)
    except ScenarioError as e:
        raise CliError(str(e), EXIT_USAGE) from e
    solver = get_solver(args.solver)
    noise = NoiseParams()
    rng = R.stream(args.seed, "cli/solve")
    try:
        if args.strategy == "platform":
            out = recruit_platform(inst, solver, noise, rng)
        elif args.strategy == "leader":
            out = recruit_leader(inst, solver, noise, args.leader_policy, args.variant, rng)
        else:
            out = recruit_hybrid(inst, solver, noise, args.leader_policy, args.delta, rng)
    except (ValueError, NotImplementedError) as e:
        raise CliError(str(e)) from e

    team = out.team
    if args.json:
        doc = {
            "strategy": out.strategy.value,
            "solver": args.solver,
            "team": {
                "assignment": {str(s): w for s, w in team.assignment.items()},
                "leader": team.leader,
                "leader_variant": team.leader_variant.value,
                "workers": list(team.workers),
            },
            "metrics_true": out.report_true.as_dict(),
            "metrics_perceived": out.report_perceived.as_dict(),
        }
        print(json.dumps(doc, indent=1))
        return 0
    lines = [f"strategy {out.strategy.value}  solver {args.solver}  team size {len(team.workers)}"]
    if team.leader is not None:
        lines.append(f"leader   worker {team.leader} ({team.leader_variant.value})")
    lines.append("skill  worker")
    for s, w in team.assignment.items():
        lines.append(f"{s:>5}  {w:>6}")
    lines += _report_text("true metrics", out.report_true)
    lines += _report_text("perceived metrics", out.report_perceived)
    lines.append(f"fitness {out.report_perceived.fitness:.6f} (perceived)  {out.report_true.fitness:.6f} (true)")
    print("\n".join(lines))
    return 0


def _progress(done, total):
    print(f"\r{done}/{total}", end="" if done < total else "\n", file=sys.stderr, flush=True)


def cmd_experiment(args) -> int:
    try:
        cfg = read_config(args.config) if args.config else ExperimentConfig()
        if args.realizations is not None:
            cfg = replace(cfg, realizations=args.realizations)
        if args.record_runtime:
            cfg = replace(cfg, record_runtime=True)
        cfg.check()
    except (OSError, ValueError, TypeError, json.JSONDecodeError) as e:
        raise CliError(f"invalid config: {e}", EXIT_USAGE) from e
    progress = None if args.quiet else _progress
    if args.mode == "strategies":
        write_bundle(args.output, run_strategy_experiment(cfg, args.threads, progress))
    elif args.mode == "solvers":
        write_bundle(args.output, run_solver_experiment(cfg, args.threads, progress))
    else:
        write_sweep_bundle(args.output, run_sweep(cfg, args.threads, progress))
    return 0


def cmd_report(args) -> int:
    try:
        path = render(args.results_dir, args.figure, args.output)
    except FileNotFoundError as e:
        raise CliError(str(e)) from e
    print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="teamforge", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a synthetic scenario file")
    g.add_argument("--workers", type=int, default=20)
    g.add_argument("--skills", type=int, default=7)
    g.add_argument("--required", type=int, default=7)
    g.add_argument("--wsk", type=int, default=4, help="Watts-Strogatz ring degree (even)")
    g.add_argument("--wsbeta", type=float, default=0.3, help="Watts-Strogatz rewiring probability")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output", required=True)
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("solve", help="recruit a team for one scenario")
    s.add_argument("scenario")
    s.add_argument("--strategy", choices=("platform", "leader", "hybrid"), default="platform")
    s.add_argument("--solver", choices=SOLVER_NAMES, default="exact")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--leader-policy", choices=[x.value for x in LeaderPolicy],
                   default=LeaderPolicy.MAX_WEIGHTED_DEGREE.value)
    s.add_argument("--variant", choices=(LeaderVariant.MEMBER.value, LeaderVariant.SUPERVISOR.value),
                   default=LeaderVariant.MEMBER.value)
    s.add_argument("--delta", type=float, default=0.05, help="hybrid swap threshold")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_solve)

    e = sub.add_parser("experiment", help="run a Monte Carlo experiment")
    e.add_argument("--config", help="JSON experiment config; defaults when omitted")
    e.add_argument("--mode", choices=("strategies", "solvers", "sweep"), required=True)
    e.add_argument("-o", "--output", required=True)
    e.add_argument("--threads", type=int, default=1)
    e.add_argument("--realizations", type=int, help="override the config's realization count")
    e.add_argument("--record-runtime", action="store_true",
                   help="fill runtime_ms (makes rows.csv timing dependent)")
    e.add_argument("--quiet", action="store_true")
    e.set_defaults(func=cmd_experiment)

    r = sub.add_parser("report", help="render SVG charts from a results directory")
    r.add_argument("results_dir")
    r.add_argument("--figure", choices=("strategies", "solvers"), required=True)
    r.add_argument("-o", "--output", required=True)
    r.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        print(f"teamforge {args.command}: error: {e}", file=sys.stderr)
        return e.code


if __name__ == "__main__":
    sys.exit(main())
