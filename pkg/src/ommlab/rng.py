"""Seeded randomness for reproducible runs.

Every run owns a single ``numpy.random.Generator`` (PCG64) created from a
64-bit seed.  All stochastic choices within one generation consume this
stream in a fixed order:

1. the mu parent draws, each immediately followed by its mutation mask,
2. survival-selection tie-breaks, in the order the selection loop
   encounters them.

Independent repetitions of an experiment derive their per-run seeds from a
master seed with :func:`mix_seed` (a splitmix64 finalizer), so runs are
decorrelated without any coordination between workers.
"""

from __future__ import annotations

import numpy as np

_MASK64 = 0xFFFFFFFFFFFFFFFF
_GOLDEN = 0x9E3779B97F4A7C15


def mix_seed(master_seed: int, index: int) -> int:
    """Derive the seed of run ``index`` from ``master_seed``.

    splitmix64 finalizer applied to ``master_seed + (index + 1) * golden``;
    the +1 keeps run 0 distinct from the raw master seed.
    """
    z = (master_seed + (index + 1) * _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def make_rng(seed: int) -> np.random.Generator:
    """A fresh PCG64 generator for one run."""
    return np.random.Generator(np.random.PCG64(seed))
