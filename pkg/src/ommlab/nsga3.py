"""NSGA-III survival selection: reference points, normalization, niching.

The niching loop repeatedly serves the active reference point with the
fewest already-selected associates (ties uniform at random) and takes, from
that niche, the not-yet-selected candidate whose normalized fitness vector
is closest in Euclidean distance to the reference point itself (again
uniform random ties).  A point with no remaining candidates is retired.

Random ties are realized by pre-drawn uniform keys: picking the argmin
with a fresh uniform tie-break at every step is distributionally identical
to ordering tied entries by independent random priorities up front.  All
draws come from the single per-run generator, so runs replay exactly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .population import Population
from .sorting import critical_front_index, non_dominated_sort

MAX_REFERENCE_POINTS = 10**7


def default_resolution(m: int, n: int) -> int:
    """Lattice resolution p = ceil(2 m^(3/2) f_max) with f_max = n."""
    return math.ceil(2.0 * m**1.5 * n)


class ReferencePointSet:
    """Simplex lattice points (a_1/p, ..., a_m/p) with sum a_i = p.

    Coordinates are kept as exact integer numerators over the common
    denominator p; the float view is derived once.  Points are in
    lexicographic numerator order.
    """

    def __init__(self, coords: np.ndarray, p: int):
        self.coords = np.ascontiguousarray(coords, dtype=np.int64)
        self.coords.setflags(write=False)
        self.p = p
        self.points = self.coords / float(p)
        self.points.setflags(write=False)

    def __len__(self) -> int:
        return self.coords.shape[0]


def generate_reference_points(m: int, p: int) -> ReferencePointSet:
    """All C(p+m-1, m-1) lattice points, each exactly once."""
    if m < 2:
        raise ValueError("m must be at least 2")
    if p < 1:
        raise ValueError("resolution p must be positive")
    count = math.comb(p + m - 1, m - 1)
    if count > MAX_REFERENCE_POINTS:
        raise ValueError(
            f"reference point set of size {count} exceeds the "
            f"{MAX_REFERENCE_POINTS} guard"
        )
    coords = np.empty((count, m), dtype=np.int64)
    for i, head in enumerate(_compositions(p, m)):
        coords[i] = head
    return ReferencePointSet(coords, p)


def _compositions(total: int, parts: int):
    """All length-``parts`` compositions of ``total``, lexicographic."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head, *tail)


@dataclass
class NormalizationState:
    """Cumulative ideal/worst trackers and the nadir rule.

    y_min and y_max run over every search point seen so far (parents and
    offspring of all generations).  The nadir is the componentwise max of
    the pool's first front, floored at eps_nad; with the recommended
    eps_nad = f_max this makes the denominator a constant f_max - y_min.
    """

    m: int
    eps_nad: float
    y_min: np.ndarray = field(init=False)
    y_max: np.ndarray = field(init=False)

    def __post_init__(self):
        self.y_min = np.full(self.m, np.inf)
        self.y_max = np.full(self.m, -np.inf)

    def update(self, fitness: np.ndarray) -> None:
        np.minimum(self.y_min, fitness.min(axis=0), out=self.y_min)
        np.maximum(self.y_max, fitness.max(axis=0), out=self.y_max)

    def nadir(self, front1_max: np.ndarray) -> np.ndarray:
        return np.maximum(self.eps_nad, front1_max.astype(float))

    def normalize(self, fitness: np.ndarray, front1_max: np.ndarray) -> np.ndarray:
        """(f - y_min) / (y_nad - y_min), denominator floored at 1."""
        denom = np.maximum(1.0, self.nadir(front1_max) - self.y_min)
        return (fitness - self.y_min) / denom


def update_and_normalize(
    state: NormalizationState, pool: Population
) -> np.ndarray:
    """Fold the pool into the state, then normalize the pool's fitness."""
    state.update(pool.fitness)
    front1 = non_dominated_sort(pool.fitness).fronts[0]
    front1_max = pool.fitness[front1].max(axis=0)
    return state.normalize(pool.fitness, front1_max)


def perpendicular_distance(fn: np.ndarray, r: np.ndarray) -> float:
    """Distance from fn to the line through the origin and r.

    Computed from the squared 2x2 minors of (fn, r) rather than by
    projection: the minors of a vector against itself vanish exactly in
    floating point, so a lattice-exact fn has distance exactly 0 to its
    own reference point and genuine symmetric ties stay exact.
    """
    fn = np.asarray(fn, dtype=float)
    r = np.asarray(r, dtype=float)
    minors2 = 0.0
    for i in range(fn.size):
        for j in range(i + 1, fn.size):
            minors2 += (fn[i] * r[j] - fn[j] * r[i]) ** 2
    return math.sqrt(minors2) / float(np.linalg.norm(r))


def associate(
    fn: np.ndarray, rps: ReferencePointSet, rng: np.random.Generator
) -> np.ndarray:
    """Niche index per row: the reference point whose line is closest.

    Exact ties (equal squared distance, epsilon 0) are broken uniformly at
    random, consumed in row order, but consistently within one call: rows
    with identical normalized fitness share the same draw.  Per-individual
    tie-breaking would let copies of one fitness vector scatter over
    several niches and collect extra selections, destroying the
    cover-number protection the niching loop otherwise guarantees.
    """
    pts = rps.points
    m = fn.shape[1]
    d2 = np.zeros((fn.shape[0], len(rps)))
    for i in range(m):  # squared minors, see perpendicular_distance
        for j in range(i + 1, m):
            d2 += (fn[:, i, None] * pts[None, :, j]
                   - fn[:, j, None] * pts[None, :, i]) ** 2
    d2 /= (pts**2).sum(axis=1)[None, :]
    niche = np.asarray(d2.argmin(axis=1))
    row_min = d2[np.arange(d2.shape[0]), niche]
    tie_rows = np.flatnonzero((d2 == row_min[:, None]).sum(axis=1) > 1)
    drawn: dict[bytes, int] = {}
    for i in tie_rows:
        key = fn[i].tobytes()
        if key not in drawn:
            choices = np.flatnonzero(d2[i] == row_min[i])
            drawn[key] = int(choices[rng.integers(choices.size)])
        niche[i] = drawn[key]
    return niche


def niching_select(
    cand_niches: np.ndarray,
    cand_point_dist: np.ndarray,
    prefix_niches: np.ndarray,
    slots: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """Pick ``slots`` critical-front candidates by the niching loop.

    ``cand_point_dist[i]`` is the Euclidean distance between candidate i's
    normalized fitness and its own reference point vector.  Niche counts
    start from the already-selected prefix's associations.  Returns the
    selected candidate positions in selection order.
    """
    if slots > cand_niches.size:
        raise ValueError("critical front cannot fill the population")
    if slots == 0:
        return np.empty(0, dtype=np.int64)

    # Per-niche candidate queues, nearest first, random keys ordering ties.
    tie_keys = rng.random(cand_niches.size)
    order = np.lexsort((tie_keys, cand_point_dist))
    queues: dict[int, list[int]] = {}
    for pos in order[::-1]:  # reversed so list.pop() yields nearest first
        queues.setdefault(int(cand_niches[pos]), []).append(int(pos))

    # Active niches: any with a candidate, plus any pre-counted by the prefix.
    rho: dict[int, int] = {niche: 0 for niche in queues}
    for niche in prefix_niches:
        rho[int(niche)] = rho.get(int(niche), 0) + 1

    buckets: dict[int, list[int]] = {}
    for niche, count in rho.items():
        buckets.setdefault(count, []).append(niche)
    current = min(buckets)

    selected = np.empty(slots, dtype=np.int64)
    taken = 0
    while taken < slots:
        while current not in buckets or not buckets[current]:
            buckets.pop(current, None)
            current += 1
        bucket = buckets[current]
        i = int(rng.integers(len(bucket)))
        niche = bucket[i]
        queue = queues.get(niche)
        if not queue:
            bucket[i] = bucket[-1]  # retire the niche
            bucket.pop()
            continue
        selected[taken] = queue.pop()
        taken += 1
        bucket[i] = bucket[-1]
        bucket.pop()
        buckets.setdefault(current + 1, []).append(niche)
    return selected


def nsga3_survival(
    pool: Population,
    mu: int,
    rps: ReferencePointSet,
    norm_state: NormalizationState,
    rng: np.random.Generator,
) -> Population:
    """One survival step: whole lower fronts plus niched critical-front fill."""
    partition = non_dominated_sort(pool.fitness)
    i_star = critical_front_index(partition, mu)
    prefix = (
        np.concatenate(partition.fronts[: i_star - 1])
        if i_star > 1
        else np.empty(0, dtype=np.int64)
    )
    crit = partition.fronts[i_star - 1]

    norm_state.update(pool.fitness)
    slots = mu - prefix.size
    if slots == crit.size:
        return pool.take(np.concatenate([prefix, crit]))

    front1_max = pool.fitness[partition.fronts[0]].max(axis=0)
    members = np.concatenate([prefix, crit])
    fn = norm_state.normalize(pool.fitness[members], front1_max)
    niches = associate(fn, rps, rng)

    cand_fn = fn[prefix.size:]
    cand_niches = niches[prefix.size:]
    cand_point_dist = np.linalg.norm(
        cand_fn - rps.points[cand_niches], axis=1
    )
    chosen = niching_select(
        cand_niches, cand_point_dist, niches[: prefix.size], slots, rng
    )
    return pool.take(np.concatenate([prefix, crit[chosen]]))
