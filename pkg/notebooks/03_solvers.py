"""Exact, genetic and particle-swarm recruitment on one instance.

Run: python notebooks/03_solvers.py
"""
import numpy as np

from teamforge.model import FitnessWeights
from teamforge.netgen import NetGenParams, RosterParams, generate_instance
from teamforge.solvers import hungarian_max, solve_exact, solve_ga, solve_pso
from teamforge.strategies import NoiseParams, build_platform_view

# the assignment step on its own: rows are skills, columns workers
A = np.array([[1.0, 2.0], [3.0, 1.0]])
print("hungarian:", hungarian_max(A))

inst = generate_instance(NetGenParams(), RosterParams(), 7, FitnessWeights(), seed=5)
view = build_platform_view(inst, NoiseParams(), np.random.default_rng(1))
shift = FitnessWeights().shift

exact = solve_exact(inst, view)
print(f"exact  {exact.perceived_fitness:.4f}  evaluated {exact.evaluations} subsets "
      f"in {exact.runtime * 1000:.0f} ms")
for name, solve in (("ga", solve_ga), ("pso", solve_pso)):
    res = solve(inst, view, rng=np.random.default_rng(2))
    ratio = (exact.perceived_fitness + shift) / (res.perceived_fitness + shift)
    print(f"{name:<6} {res.perceived_fitness:.4f}  approx factor {ratio:.4f}  "
          f"trace start {res.trace[0]:.4f} -> end {res.trace[-1]:.4f}")
print("exact team:", exact.team.assignment)
