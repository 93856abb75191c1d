from fractions import Fraction

import numpy as np

from ommlab.benchmark import OneMinMax
from ommlab.instrumentation import (
    check_cover_invariants,
    distance_to_target,
    snapshot,
)
from ommlab.population import random_population
from ommlab.rng import make_rng

from test_population import pop_from_fitness


FRONT_N4 = OneMinMax(2, 4).pareto_front()


def test_snapshot_identical_population():
    pop = pop_from_fitness([(2, 2)] * 5)
    metrics = snapshot(pop, FRONT_N4, t=3)
    assert metrics.t == 3
    assert metrics.beta == 5
    assert metrics.distinct_fitness == 1
    assert metrics.covered == 1
    assert metrics.coverage_fraction == Fraction(1, 5)


def test_snapshot_full_front():
    pop = pop_from_fitness(sorted(FRONT_N4))
    metrics = snapshot(pop, FRONT_N4, t=0)
    assert metrics.coverage_fraction == 1
    assert metrics.beta == 1


def test_snapshot_matches_recomputation():
    problem = OneMinMax(2, 8)
    front = problem.pareto_front()
    rng = make_rng(1)
    for t in range(20):
        pop = random_population(problem, 15, rng)
        metrics = snapshot(pop, front, t, with_histogram=True)
        keys = pop.fitness_keys()
        assert metrics.distinct_fitness == len(set(keys))
        assert metrics.beta == max(keys.count(k) for k in set(keys))
        assert metrics.covered == len(set(keys) & front)
        ones = [int(row.sum()) for row in pop.bits]
        assert metrics.max_ones == max(ones)
        assert metrics.min_ones == min(ones)
        assert sum(metrics.cover_histogram.values()) == 15


def check(prev_rows, next_rows, mu=4, front_size=5):
    return check_cover_invariants(
        pop_from_fitness(prev_rows), pop_from_fitness(next_rows),
        FRONT_N4, mu, front_size,
    )


def test_no_violation_when_unchanged():
    rows = [(2, 2), (3, 1), (1, 3), (2, 2)]
    assert check(rows, rows) == []


def test_detects_lost_coverage():
    violations = check([(2, 2), (3, 1)], [(3, 1), (3, 1)])
    assert any("lost" in v for v in violations)


def test_detects_floor_breach():
    # mu/front_size = 2: a count at the floor may not fall below it
    violations = check(
        [(2, 2), (2, 2), (3, 1), (1, 3)],
        [(2, 2), (3, 1), (1, 3), (1, 3)],
        mu=4, front_size=2,
    )
    assert any("floor" in v for v in violations)


def test_detects_unbalanced_drop():
    # (2,2) drops 2 -> 1 while (3,1) climbs to 3 > 2
    violations = check(
        [(2, 2), (2, 2), (3, 1), (3, 1)],
        [(2, 2), (3, 1), (3, 1), (3, 1)],
    )
    assert any("dropped" in v for v in violations)


def test_detects_beta_increase():
    violations = check(
        [(2, 2), (3, 1), (1, 3), (0, 4)],
        [(2, 2), (2, 2), (1, 3), (0, 4)],
    )
    assert any("max cover number increased" in v for v in violations)


def test_allowed_rebalancing_passes():
    # a drop that leaves every count at or below the dropped value
    violations = check(
        [(2, 2), (2, 2), (3, 1), (1, 3)],
        [(2, 2), (3, 1), (3, 1), (1, 3)],
        mu=4, front_size=5,
    )
    assert violations == []


def test_distance_to_target_examples():
    assert distance_to_target(pop_from_fitness([(4, 0), (2, 2)]), (4, 0)) == 0
    assert distance_to_target(pop_from_fitness([(2, 2)]), (4, 0)) == 2


def test_distance_to_target_matches_min_scan():
    problem = OneMinMax(4, 8)
    rng = make_rng(2)
    target = (3, 1, 2, 2)
    for _ in range(20):
        pop = random_population(problem, 10, rng)
        oracle = min(
            abs(k[0] - target[0]) + abs(k[2] - target[2])
            for k in pop.fitness_keys()
        )
        assert distance_to_target(pop, target) == oracle
