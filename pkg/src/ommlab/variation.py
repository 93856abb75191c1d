"""Offspring generation: uniform parent choice plus standard bit mutation.

The RNG stream order per generation is fixed: for each of the mu offspring,
one parent-index draw, immediately followed by the n uniform variates of
its mutation mask (one variate per bit, no binomial shortcut).
"""

from __future__ import annotations

import numpy as np

from .population import Population


def sample_parent_index(pop: Population, rng: np.random.Generator) -> int:
    """Uniform draw (with replacement) over the population."""
    return int(rng.integers(len(pop)))


def standard_bit_mutation(bits: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Flip each bit independently with probability 1/n; parent untouched."""
    n = bits.size
    mask = rng.random(n) < 1.0 / n
    return np.where(mask, 1 - bits, bits).astype(np.uint8)


def produce_offspring(
    pop: Population, problem, rng: np.random.Generator
) -> Population:
    """mu offspring from independent (parent draw, mutation) pairs, in order."""
    mu = len(pop)
    out = np.empty((mu, pop.n), dtype=np.uint8)
    for i in range(mu):
        parent = pop.bits[sample_parent_index(pop, rng)]
        out[i] = standard_bit_mutation(parent, rng)
    return Population(out, problem.evaluate_many(out))
