"""Small-world worker graphs and trust between workers.

Run: python notebooks/01_social_graph.py
"""
import numpy as np

from teamforge.metrics import strength_matrix
from teamforge.netgen import NetGenParams, ring_lattice, watts_strogatz

rng = np.random.default_rng(3)

# a ring where everyone knows their two nearest neighbours on each side
lattice = watts_strogatz(NetGenParams(n=10, k=4, beta=0.0), rng)
print("lattice edges:", len(lattice.edges), "(n*k/2 =", 10 * 4 // 2, ")")
assert {(i, j) for i, j, _ in lattice.edges} == ring_lattice(10, 4)

# rewire 30% of them: still 20 edges, still connected, shorter paths
g = watts_strogatz(NetGenParams(n=10, k=4, beta=0.3), rng)
print("rewired edges:", len(g.edges))
print("degrees:", [g.degree(i) for i in range(g.node_count)])

# strength = best product of edge weights along any path
S = strength_matrix(g)
np.set_printoptions(precision=2, suppress=True)
print(S)
print("weakest tie between two workers:", S[np.triu_indices(10, 1)].min().round(4))
