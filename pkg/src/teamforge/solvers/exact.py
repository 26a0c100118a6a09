r"""Exact team selection by subset enumeration with an optimal inner assignment.

The problem solved is the integer program below (shown for the plain case
with every required skill open and no leader; a member leader fixes one
``z`` variable, a supervising leader fixes one ``x`` variable to 1).
With workers i in N, required skills s in R (|R| = m), perceived levels
L[i,s], perceived strengths P[i,j], noise scales sigma[i] and per-worker
normalized cost c[i]::

    maximize   w_skill/m * sum_{i,s} L[i,s] z[i,s]
             + w_rel/C(m,2) * sum_{i<j} P[i,j] y[i,j]
             - w_cost * sum_i c[i] x[i]
             - w_unc/m * sum_i sigma[i] x[i]

    subject to sum_i z[i,s] = 1                  for every skill s
               sum_s z[i,s] <= x[i]              for every worker i
               sum_i x[i] = m
               y[i,j] <= x[i],  y[i,j] <= x[j]
               y[i,j] >= x[i] + x[j] - 1         (y = x_i * x_j)
               x, y, z binary

Every term except the first depends only on the selected set {i : x[i] = 1},
so the search enumerates m-subsets in lexicographic order, computes the set
terms once per subset, and maximizes the skill term with an assignment
solver. Subsets are processed in blocks; a block's candidates are pruned
when their set terms plus a per-skill column-maximum bound on the skill term
cannot beat the incumbent. The winner's assignment is recovered with
:func:`hungarian_max`, which breaks ties towards the lexicographically
smallest permutation.
"""
from __future__ import annotations

import math
import time
from functools import lru_cache
from itertools import combinations

import numpy as np

from .. import metrics
from ..model import FitnessWeights, Instance
from .hungarian import hungarian_max
from .objective import BatchObjective, SlotPlan, check_plan
from .result import SolverResult

BLOCK = 8192
PRUNE_EPS = 1e-12


@lru_cache(maxsize=32)
def subset_table(n: int, k: int) -> np.ndarray:
    """All k-subsets of range(n) in lexicographic order, one per row."""
    count = math.comb(n, k)
    flat = np.fromiter(
        (x for c in combinations(range(n), k) for x in c), dtype=np.int64, count=count * k
    )
    out = flat.reshape(-1, k) if k else np.zeros((1, 0), dtype=np.int64)
    out.flags.writeable = False
    return out


@lru_cache(maxsize=16)
def _mask_plan(k: int):
    # masks grouped by popcount; for each, the skills it contains
    by_count = [[] for _ in range(k + 1)]
    for mask in range(1 << k):
        bits = [s for s in range(k) if mask >> s & 1]
        by_count[len(bits)].append((mask, bits))
    return by_count


def best_assignment_sums(A: np.ndarray) -> np.ndarray:
    """Max over bijections of sum_t A[b, t, perm(t)], for every b.

    Subset dynamic program over skill masks: worker t takes one skill not
    used by workers 0..t-1.
    """
    B, k, _ = A.shape
    if k == 0:
        return np.zeros(B)
    dp = np.full((B, 1 << k), -np.inf)
    dp[:, 0] = 0.0
    plan = _mask_plan(k)
    for t in range(1, k + 1):
        At = A[:, t - 1, :]
        for mask, bits in plan[t]:
            best = dp[:, mask ^ (1 << bits[0])] + At[:, bits[0]]
            for s in bits[1:]:
                np.maximum(best, dp[:, mask ^ (1 << s)] + At[:, s], out=best)
            dp[:, mask] = best
    return dp[:, -1]


def greedy_fill(levels: np.ndarray, pool: np.ndarray) -> np.ndarray:
    """Per skill in order, the best still-unused candidate."""
    used = np.zeros(len(pool), dtype=bool)
    genes = []
    for g in range(levels.shape[1]):
        col = np.where(used, -np.inf, levels[pool, g])
        j = int(np.argmax(col))
        used[j] = True
        genes.append(pool[j])
    return np.array(genes, dtype=int)


def solve_exact(
    instance: Instance,
    view=None,
    weights: FitnessWeights | None = None,
    plan: SlotPlan | None = None,
    rng=None,
    prune: bool = True,
) -> SolverResult:
    """Globally optimal team under the recruiter's perceived fitness.

    ``rng`` is accepted for interface symmetry with the heuristics and unused.
    """
    t0 = time.perf_counter()
    weights = weights or instance.project.weights
    plan = plan or SlotPlan.full(instance)
    check_plan(instance, plan)
    obj = BatchObjective(instance, view, weights, plan)
    pool = np.array(plan.candidates, dtype=int)
    k = plan.k
    subsets = subset_table(len(pool), k)

    best_row = -1
    best_val = -np.inf
    # a feasible greedy team only seeds the pruning threshold; it is never returned
    bar = float(obj.peek(greedy_fill(obj.levels, pool)[None])[0]) if prune and k else -np.inf
    evaluated = 0
    for start in range(0, len(subsets), BLOCK):
        idx = subsets[start:start + BLOCK]
        batch = pool[idx]
        base = obj.set_terms(batch)
        A = obj.levels[batch]  # (B, k workers, k skills)
        bar = max(bar, best_val)
        if prune and bar > -np.inf and k:
            ub = base + obj.skill_term(A.max(axis=1).sum(axis=1))
            keep = np.flatnonzero(ub >= bar - PRUNE_EPS)
            if len(keep) == 0:
                continue
        else:
            keep = np.arange(len(batch))
        vals = base[keep] + obj.skill_term(best_assignment_sums(A[keep]))
        evaluated += len(keep)
        j = int(np.argmax(vals))
        if vals[j] > best_val:
            best_val = float(vals[j])
            best_row = start + int(keep[j])

    workers = pool[subsets[best_row]]
    # rows = open skills, columns = chosen workers in ascending id order
    score = obj.levels[workers].T if k else np.zeros((0, 0))
    perm, _ = hungarian_max(score)
    genes = [workers[perm[r]] for r in range(k)]
    team = plan.team(genes)
    return SolverResult(
        team=team,
        perceived_fitness=metrics.fitness(instance, team, view, weights),
        evaluations=evaluated,
        runtime=time.perf_counter() - t0,
    )
