"""Core population types and cover-number accounting.

A population is stored column-major-friendly as two aligned arrays: a
``(size, n)`` uint8 bit matrix and a ``(size, m)`` int64 fitness matrix.
Fitness is evaluated once at creation and cached; nothing ever re-evaluates
a genotype.  Arrays are frozen (non-writeable) after construction, so
populations can be shared freely.

Duplicates are allowed: a population is an ordered multiset.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

FitnessKey = tuple[int, ...]


@dataclass(frozen=True)
class Individual:
    """One evaluated search point (bit vector plus cached fitness)."""

    genotype: np.ndarray  # shape (n,), uint8
    fitness: FitnessKey

    @property
    def ones(self) -> int:
        return int(self.genotype.sum())

    @property
    def zeros(self) -> int:
        return int(self.genotype.size - self.genotype.sum())


class Population:
    """Ordered multiset of evaluated individuals."""

    __slots__ = ("bits", "fitness")

    def __init__(self, bits: np.ndarray, fitness: np.ndarray):
        bits = np.ascontiguousarray(bits, dtype=np.uint8)
        fitness = np.ascontiguousarray(fitness, dtype=np.int64)
        if bits.ndim != 2 or fitness.ndim != 2 or bits.shape[0] != fitness.shape[0]:
            raise ValueError("bits and fitness must be aligned 2-d arrays")
        bits.setflags(write=False)
        fitness.setflags(write=False)
        self.bits = bits
        self.fitness = fitness

    def __len__(self) -> int:
        return self.bits.shape[0]

    @property
    def n(self) -> int:
        return self.bits.shape[1]

    @property
    def m(self) -> int:
        return self.fitness.shape[1]

    def __getitem__(self, i: int) -> Individual:
        return Individual(self.bits[i], tuple(int(v) for v in self.fitness[i]))

    def take(self, indices: np.ndarray) -> "Population":
        """Sub-population at ``indices`` (order preserved, repeats allowed)."""
        return Population(self.bits[indices], self.fitness[indices])

    def ones_counts(self) -> np.ndarray:
        return self.bits.sum(axis=1, dtype=np.int64)

    def fitness_keys(self) -> list[FitnessKey]:
        return [tuple(int(v) for v in row) for row in self.fitness]


def concat(a: Population, b: Population) -> Population:
    """Merged pool, parents first then offspring (fixed order for replay)."""
    return Population(
        np.concatenate([a.bits, b.bits]), np.concatenate([a.fitness, b.fitness])
    )


def random_population(problem, mu: int, rng: np.random.Generator) -> Population:
    """Initial population: mu genotypes with independent fair-coin bits."""
    if mu < 1:
        raise ValueError("population size must be positive")
    bits = (rng.random((mu, problem.n)) < 0.5).astype(np.uint8)
    return Population(bits, problem.evaluate_many(bits))


def cover_numbers(pop: Population) -> dict[FitnessKey, int]:
    """Multiplicity of each distinct fitness vector in ``pop``.

    Counts always sum to ``len(pop)``.
    """
    if len(pop) == 0:
        raise ValueError("population is empty")
    uniq, counts = np.unique(pop.fitness, axis=0, return_counts=True)
    return {
        tuple(int(v) for v in row): int(c) for row, c in zip(uniq, counts)
    }


def max_cover_number(pop: Population) -> int:
    """Largest multiplicity over all fitness vectors (the beta observable)."""
    return max(cover_numbers(pop).values())
