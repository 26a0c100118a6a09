"""Seeded, per-purpose random streams.

Every stream is a PCG64 generator keyed by ``(master_seed, realization, tag)``
through :class:`numpy.random.SeedSequence`, so a realization's draws do not
depend on which other realizations ran, or in what order.
"""
from __future__ import annotations

import zlib

import numpy as np

GRAPH = "graph"
ROSTER = "roster"
PROJECT = "project"
NOISE_PLATFORM = "noise/platform"
NOISE_LEADER = "noise/leader"
SOLVER = "solver"


def tag_key(tag: str) -> int:
    return zlib.crc32(tag.encode("utf-8"))


def stream(master_seed: int, tag: str, *path: int) -> np.random.Generator:
    """Independent generator for ``tag`` under ``master_seed`` and an optional index path."""
    ss = np.random.SeedSequence(int(master_seed), spawn_key=(*map(int, path), tag_key(tag)))
    return np.random.Generator(np.random.PCG64(ss))
