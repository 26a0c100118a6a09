"""Maximum-weight perfect assignment on a square score matrix."""
from __future__ import annotations

import numpy as np


def _min_cost_assignment(cost: np.ndarray) -> np.ndarray:
    # Kuhn-Munkres with row/column potentials (shortest augmenting path), O(n^3).
    n = cost.shape[0]
    INF = float("inf")
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    p = np.zeros(n + 1, dtype=int)  # p[j]: row matched to column j (1-based, 0 = free)
    way = np.zeros(n + 1, dtype=int)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = np.full(n + 1, INF)
        used = np.zeros(n + 1, dtype=bool)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = INF
            j1 = 0
            for j in range(1, n + 1):
                if not used[j]:
                    cur = cost[i0 - 1, j - 1] - u[i0] - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while True:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
            if j0 == 0:
                break
    perm = np.empty(n, dtype=int)
    for j in range(1, n + 1):
        if p[j]:
            perm[p[j] - 1] = j - 1
    return perm


def _best_total(score: np.ndarray) -> float:
    if score.shape[0] == 0:
        return 0.0
    perm = _min_cost_assignment(-score)
    return float(sum(score[r, perm[r]] for r in range(len(perm))))


def hungarian_max(score, tol: float = 1e-9) -> tuple[list[int], float]:
    """Permutation ``perm`` (row r -> column perm[r]) maximizing the total score.

    Among optimal permutations the lexicographically smallest is returned:
    rows are fixed one at a time to the lowest column that still admits an
    optimal completion (within ``tol`` relative to the optimum's scale).
    """
    score = np.asarray(score, dtype=float)
    if score.ndim != 2 or score.shape[0] != score.shape[1]:
        raise ValueError(f"score matrix must be square, got shape {score.shape}")
    if not np.all(np.isfinite(score)):
        raise ValueError("score matrix must be finite")
    n = score.shape[0]
    if n == 0:
        return [], 0.0
    target = _best_total(score)
    eps = tol * max(1.0, float(np.abs(score).max()) * n)
    rows = list(range(n))
    cols = list(range(n))
    perm: list[int] = []
    acc = 0.0
    for r in range(n):
        rest_rows = rows[r + 1:]
        for j in cols:
            rest_cols = [c for c in cols if c != j]
            sub = score[np.ix_(rest_rows, rest_cols)]
            if acc + score[r, j] + _best_total(sub) >= target - eps:
                perm.append(j)
                acc += score[r, j]
                cols = rest_cols
                break
    total = float(sum(score[r, perm[r]] for r in range(n)))
    return perm, total
