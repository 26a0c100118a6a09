import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from teamforge.solvers.hungarian import hungarian_max


def brute_max(A):
    n = A.shape[0]
    return max(sum(A[i, p[i]] for i in range(n)) for p in itertools.permutations(range(n)))


def test_identity():
    perm, total = hungarian_max(np.eye(3))
    assert perm == [0, 1, 2] and total == pytest.approx(3.0)


def test_two_by_two():
    perm, total = hungarian_max(np.array([[1.0, 2.0], [3.0, 1.0]]))
    assert perm == [1, 0] and total == pytest.approx(5.0)


def test_ties_pick_lexicographically_smallest():
    perm, total = hungarian_max(np.ones((4, 4)))
    assert perm == [0, 1, 2, 3] and total == pytest.approx(4.0)


def test_single_cell_and_negative_entries():
    assert hungarian_max(np.array([[-2.5]])) == ([0], -2.5)
    perm, total = hungarian_max(np.array([[-1.0, -5.0], [-5.0, -1.0]]))
    assert perm == [0, 1] and total == pytest.approx(-2.0)


@pytest.mark.parametrize("bad", [np.ones((2, 3)), np.array([[1.0, np.nan], [0.0, 1.0]])])
def test_rejects_bad_input(bad):
    with pytest.raises(ValueError):
        hungarian_max(bad)


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 6))
def test_matches_brute_force(seed, n):
    A = np.random.default_rng(seed).random((n, n))
    perm, total = hungarian_max(A)
    assert sorted(perm) == list(range(n))
    assert total == pytest.approx(sum(A[i, perm[i]] for i in range(n)), abs=1e-12)
    assert total == pytest.approx(brute_max(A), abs=1e-9)


def test_integer_ties_on_random_matrices():
    rng = np.random.default_rng(3)
    for _ in range(50):
        A = rng.integers(0, 3, (5, 5)).astype(float)
        perm, total = hungarian_max(A)
        best = brute_max(A)
        assert total == best
        optimal = [p for p in itertools.permutations(range(5))
                   if sum(A[i, p[i]] for i in range(5)) == best]
        assert tuple(perm) == min(optimal)
