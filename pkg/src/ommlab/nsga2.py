"""NSGA-II baseline survival selection (crowding distance).

Classical single-pass crowding: computed once on the full critical front,
no removal-and-recompute.  Sorting is stable, keyed by objective value then
input index, so duplicated fitness vectors get well-defined values.
"""

from __future__ import annotations

import numpy as np

from .population import Population
from .sorting import critical_front_index, non_dominated_sort


def crowding_distance(fitness: np.ndarray) -> np.ndarray:
    """Per-member crowding distance of one front (inf at the boundaries).

    Interior member i accumulates, per objective, the value gap between its
    sorted neighbours divided by the objective's range; zero-range
    objectives contribute nothing.
    """
    size, m = fitness.shape
    if size == 0:
        raise ValueError("front is empty")
    dist = np.zeros(size)
    if size <= 2:
        return np.full(size, np.inf)
    for j in range(m):
        order = np.argsort(fitness[:, j], kind="stable")
        values = fitness[order, j]
        span = float(values[-1] - values[0])
        dist[order[0]] = np.inf
        dist[order[-1]] = np.inf
        if span > 0:
            dist[order[1:-1]] += (values[2:] - values[:-2]) / span
    return dist


def nsga2_survival(
    pool: Population, mu: int, rng: np.random.Generator
) -> Population:
    """Whole fronts while they fit; critical front by descending crowding.

    Ties in crowding distance are broken uniformly at random (pre-drawn
    random keys, see the niching module for why that is equivalent).
    """
    partition = non_dominated_sort(pool.fitness)
    i_star = critical_front_index(partition, mu)
    prefix = (
        np.concatenate(partition.fronts[: i_star - 1])
        if i_star > 1
        else np.empty(0, dtype=np.int64)
    )
    crit = partition.fronts[i_star - 1]
    slots = mu - prefix.size
    if slots == crit.size:
        return pool.take(np.concatenate([prefix, crit]))

    crowd = crowding_distance(pool.fitness[crit])
    tie_keys = rng.random(crit.size)
    order = np.lexsort((tie_keys, -crowd))
    return pool.take(np.concatenate([prefix, crit[order[:slots]]]))
