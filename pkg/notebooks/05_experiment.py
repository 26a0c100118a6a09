"""A short Monte Carlo run, written to disk and charted.

Run: python notebooks/05_experiment.py [out_dir]
"""
import sys
from pathlib import Path

from teamforge.experiment import ExperimentConfig, run_solver_experiment, run_strategy_experiment
from teamforge.files import write_bundle
from teamforge.report import render
from teamforge.solvers import GaParams, PsoParams

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_results")
cfg = ExperimentConfig(realizations=30, ga=GaParams(generations=50), pso=PsoParams(iterations=50))

strat = run_strategy_experiment(cfg)
for s in ("platform", "leader", "hybrid"):
    a = strat.get(s, "exact", "skill_level")
    print(f"{s:<9} skill {a.mean:.3f} [{a.ci_low:.3f}, {a.ci_high:.3f}]")

solv = run_solver_experiment(cfg)
print("approximation:", {k: round(v["mean"], 4) for k, v in solv.approximation.items()})

write_bundle(out / "strategies", strat)
write_bundle(out / "solvers", solv)
print(render(out / "strategies", "strategies", out))
print(render(out / "solvers", "solvers", out))
