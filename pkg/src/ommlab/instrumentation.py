"""Per-generation observables and the cover-number invariant checker.

The checker turns the protected-survival properties of reference-point
selection on OneMinMax into runtime assertions: covered front vectors stay
covered, per-vector counts never fall below min(previous count, floor of
mu / front size), any drop caps every other count, and the maximum cover
number never increases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .benchmark import coverage
from .population import (
    FitnessKey,
    Population,
    cover_numbers,
)


@dataclass
class GenerationMetrics:
    t: int
    beta: int
    covered: int
    coverage_fraction: Fraction
    max_ones: int
    min_ones: int
    distinct_fitness: int
    cover_histogram: dict[FitnessKey, int] | None = None


@dataclass
class TargetDistance:
    target: FitnessKey
    d_t: int


class InvariantViolation(RuntimeError):
    """Raised in strict mode when a cover-number invariant fails."""


def snapshot(
    pop: Population,
    front: set[FitnessKey],
    t: int,
    with_histogram: bool = False,
) -> GenerationMetrics:
    """All observables of one generation, computed exactly from ``pop``."""
    histogram = cover_numbers(pop)
    covered, fraction = coverage(pop, front)
    ones = pop.ones_counts()
    return GenerationMetrics(
        t=t,
        beta=max(histogram.values()),
        covered=covered,
        coverage_fraction=fraction,
        max_ones=int(ones.max()),
        min_ones=int(ones.min()),
        distinct_fitness=len(histogram),
        cover_histogram=histogram if with_histogram else None,
    )


def check_cover_invariants(
    prev: Population,
    nxt: Population,
    front: set[FitnessKey],
    mu: int,
    front_size: int,
) -> list[str]:
    """Violations of the cover-number invariants between two generations.

    On OneMinMax every fitness vector is Pareto-optimal, so the checks run
    over all observed vectors.  The per-vector floor min(prev count,
    floor(mu / front_size)) covers the whole family of thresholds alpha <=
    mu / front_size at once.  An empty list means all four properties held.
    """
    prev_counts = cover_numbers(prev)
    next_counts = cover_numbers(nxt)
    violations: list[str] = []

    # (1) covered vectors stay covered
    lost = set(prev_counts) - set(next_counts)
    if lost:
        violations.append(f"covered vectors lost: {sorted(lost)}")

    # (2) counts never fall below min(previous count, floor(mu / front size))
    cap = mu // front_size
    for v, c in prev_counts.items():
        floor = min(c, cap)
        if next_counts.get(v, 0) < floor:
            violations.append(
                f"count of {v} fell below floor {floor}: "
                f"{c} -> {next_counts.get(v, 0)}"
            )

    # (3) any drop bounds every next count by the dropped vector's old count
    drops = [
        (v, c)
        for v, c in prev_counts.items()
        if next_counts.get(v, 0) < c
    ]
    if drops:
        next_max = max(next_counts.values())
        for v, c in drops:
            if next_max > c:
                violations.append(
                    f"count of {v} dropped from {c} while another vector "
                    f"reached {next_max}"
                )

    # (4) the maximum cover number never increases
    if max(next_counts.values()) > max(prev_counts.values()):
        violations.append(
            f"max cover number increased: "
            f"{max(prev_counts.values())} -> {max(next_counts.values())}"
        )
    return violations


def distance_to_target(pop: Population, target: FitnessKey) -> int:
    """Minimum over pop of blockwise L1 distance between odd objectives and the target."""
    odd = pop.fitness[:, 0::2]
    goal = [target[j] for j in range(0, len(target), 2)]
    return int(abs(odd - goal).sum(axis=1).min())
