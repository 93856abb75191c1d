"""The m-objective OneMinMax benchmark family.

The bit string splits into m/2 equal blocks of 2n/m bits; objectives
2j-1 and 2j count the ones and zeros of block j.  All objectives of any
genotype sum to n, so every search point is Pareto-optimal and any two
distinct fitness vectors are mutually incomparable.
"""

from __future__ import annotations

import itertools
from enum import Enum
from fractions import Fraction

import numpy as np

from .population import FitnessKey, Population

MAX_FRONT_SIZE = 10**7


class Domination(Enum):
    STRICT = "strict"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def dominates(u, v) -> Domination:
    """Classify u against v under componentwise maximization.

    STRICT: u >= v everywhere with at least one strict inequality.
    EQUAL: identical.  INCOMPARABLE: anything else (including v > u).
    On integer vectors "weak" domination is exactly EQUAL-or-STRICT; see
    :func:`weakly_dominates`.
    """
    if len(u) != len(v):
        raise ValueError("fitness vectors differ in length")
    ge = all(a >= b for a, b in zip(u, v))
    gt = any(a > b for a, b in zip(u, v))
    if ge and gt:
        return Domination.STRICT
    if ge:
        return Domination.EQUAL
    return Domination.INCOMPARABLE


def weakly_dominates(u, v) -> bool:
    return dominates(u, v) in (Domination.STRICT, Domination.EQUAL)


class OneMinMax:
    """m-OMM instance with problem size n and an even number m of objectives."""

    def __init__(self, m: int, n: int):
        if m < 2 or m % 2 != 0:
            raise ValueError("objective count m must be a positive even integer")
        if n < 1 or (2 * n) % m != 0:
            raise ValueError("problem size n must be a positive multiple of m/2")
        self.m = m
        self.n = n
        self.block_len = 2 * n // m  # bits per block
        self.f_max = n

    @property
    def front_size(self) -> int:
        return (self.block_len + 1) ** (self.m // 2)

    def evaluate(self, bits: np.ndarray) -> FitnessKey:
        """Fitness vector of one genotype."""
        if bits.ndim != 1 or bits.size != self.n:
            raise ValueError(f"genotype length {bits.size} != n={self.n}")
        return tuple(int(v) for v in self.evaluate_many(bits[None, :])[0])

    def evaluate_many(self, bits: np.ndarray) -> np.ndarray:
        """Fitness matrix (rows align with ``bits`` rows)."""
        if bits.ndim != 2 or bits.shape[1] != self.n:
            raise ValueError(f"genotype length {bits.shape[-1]} != n={self.n}")
        blocks = bits.reshape(bits.shape[0], self.m // 2, self.block_len)
        ones = blocks.sum(axis=2, dtype=np.int64)
        out = np.empty((bits.shape[0], self.m), dtype=np.int64)
        out[:, 0::2] = ones
        out[:, 1::2] = self.block_len - ones
        return out

    def pareto_front(self) -> set[FitnessKey]:
        """All realizable fitness vectors, (block_len+1)^(m/2) of them."""
        if self.front_size > MAX_FRONT_SIZE:
            raise ValueError(
                f"Pareto front of size {self.front_size} exceeds the "
                f"{MAX_FRONT_SIZE} enumeration guard"
            )
        per_block = range(self.block_len + 1)
        front = set()
        for combo in itertools.product(per_block, repeat=self.m // 2):
            v = []
            for a in combo:
                v.append(a)
                v.append(self.block_len - a)
            front.add(tuple(v))
        return front

    def pareto_front_sorted(self) -> list[FitnessKey]:
        """Front in lexicographic order, for stable reports."""
        return sorted(self.pareto_front())


def coverage(
    pop: Population, front: set[FitnessKey]
) -> tuple[int, Fraction]:
    """How many front vectors appear in ``pop`` (count and fraction)."""
    present = {tuple(int(v) for v in row) for row in np.unique(pop.fitness, axis=0)}
    covered = len(present & front)
    return covered, Fraction(covered, len(front))
