"""Scoring a team: skill, relationship, cost and uncertainty.

Run: python notebooks/02_fitness.py
"""
import numpy as np

from teamforge import metrics
from teamforge.model import FitnessWeights, Team
from teamforge.netgen import NetGenParams, RosterParams, generate_instance
from teamforge.strategies import NoiseParams, build_platform_view

inst = generate_instance(NetGenParams(), RosterParams(), 7, FitnessWeights(), seed=11)
print(inst.n, "workers,", inst.project.m, "required skills, cost cap", round(inst.cost_cap, 2))

# the first seven workers, one per skill in order
team = Team(dict(zip(inst.project.required_skills, range(7))))
print("true report:")
for k, v in metrics.true_report(inst, team, None).as_dict().items():
    print(f"  {k:<20}{v:9.4f}")

# the platform sees skills and ties through noise that shrinks with history
view = build_platform_view(inst, NoiseParams(), np.random.default_rng(0))
print("platform sigma (first 5):", view.sigma[:5].round(4))
print("perceived fitness", round(metrics.fitness(inst, team, view), 4),
      "vs true", round(metrics.fitness(inst, team), 4))
