"""Platform, leader and hybrid recruitment on the same instance.

Run: python notebooks/04_strategies.py
"""
import numpy as np

from teamforge.model import FitnessWeights
from teamforge.netgen import NetGenParams, RosterParams, generate_instance
from teamforge.strategies import (
    ZERO_NOISE,
    recruit_hybrid,
    recruit_leader,
    recruit_platform,
    select_leader,
)

inst = generate_instance(NetGenParams(), RosterParams(), 7, FitnessWeights(), seed=8)
print("leader by weighted degree:", select_leader(inst))

outs = [
    recruit_platform(inst, rng=np.random.default_rng(0)),
    recruit_leader(inst, rng=np.random.default_rng(0)),
    recruit_leader(inst, variant="supervisor", rng=np.random.default_rng(0)),
    recruit_hybrid(inst, rng=np.random.default_rng(0)),
]
print(f"{'strategy':<10}{'skill':>8}{'rel':>8}{'cost':>8}{'unc':>8}{'fit':>8}")
for o in outs:
    r = o.report_true
    tag = o.strategy.value + ("*" if o.team.leader_variant.value == "supervisor" else "")
    print(f"{tag:<10}{r.skill_level:8.3f}{r.relationship:8.3f}{r.cost:8.2f}{r.uncertainty:8.3f}{r.fitness:8.3f}")
print("* supervisor leader: paid, fills no skill slot")

# without noise every recruiter sees the truth and nothing is uncertain
p = recruit_platform(inst, noise=ZERO_NOISE)
h = recruit_hybrid(inst, noise=ZERO_NOISE, delta=1e-12)
print("zero noise:", round(p.report_perceived.fitness, 6), round(h.report_perceived.fitness, 6),
      "uncertainty", p.report_true.uncertainty)
