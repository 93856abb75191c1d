"""Fast non-dominated sorting and the critical front.

Classical domination-count bookkeeping, vectorized over the
pairwise domination matrix; O(N^2 m) time, fine at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class FrontPartition:
    """Ordered fronts as index arrays into the sorted pool."""

    fronts: list[np.ndarray]

    def sizes(self) -> list[int]:
        return [f.size for f in self.fronts]


def strict_domination_matrix(fitness: np.ndarray) -> np.ndarray:
    """Boolean (N, N) matrix: entry [i, j] iff row i strictly dominates row j."""
    ge = (fitness[:, None, :] >= fitness[None, :, :]).all(axis=2)
    gt = (fitness[:, None, :] > fitness[None, :, :]).any(axis=2)
    return ge & gt


def non_dominated_sort(fitness: np.ndarray) -> FrontPartition:
    """Partition pool rows into non-dominated fronts.

    Front 1 holds all non-dominated rows; front i the rows dominated only
    by earlier fronts.  Equal fitness vectors never dominate each other and
    share a front.
    """
    npop = fitness.shape[0]
    if npop == 0:
        raise ValueError("pool is empty")
    dom = strict_domination_matrix(fitness)
    counts = dom.sum(axis=0, dtype=np.int64)  # how many rows dominate me
    fronts: list[np.ndarray] = []
    remaining = np.ones(npop, dtype=bool)
    while remaining.any():
        current = np.flatnonzero(remaining & (counts == 0))
        fronts.append(current)
        remaining[current] = False
        counts -= dom[current].sum(axis=0, dtype=np.int64)
    return FrontPartition(fronts)


def critical_front_index(partition: FrontPartition, mu: int) -> int:
    """1-based index i* of the first front whose prefix sum reaches mu."""
    total = 0
    for i, front in enumerate(partition.fronts, start=1):
        total += front.size
        if total >= mu:
            return i
    raise ValueError(f"pool of size {total} is smaller than mu={mu}")
