import math
from fractions import Fraction

import numpy as np
import pytest

from ommlab.benchmark import OneMinMax
from ommlab.nsga3 import (
    NormalizationState,
    associate,
    default_resolution,
    generate_reference_points,
    niching_select,
    nsga3_survival,
    perpendicular_distance,
    update_and_normalize,
)
from ommlab.population import Population, concat, random_population
from ommlab.rng import make_rng
from ommlab.variation import produce_offspring


def test_reference_points_m2_p4():
    rps = generate_reference_points(2, 4)
    as_fractions = {
        (Fraction(int(a), 4), Fraction(int(b), 4)) for a, b in rps.coords
    }
    assert as_fractions == {
        (Fraction(0), Fraction(1)),
        (Fraction(1, 4), Fraction(3, 4)),
        (Fraction(1, 2), Fraction(1, 2)),
        (Fraction(3, 4), Fraction(1, 4)),
        (Fraction(1), Fraction(0)),
    }


def test_reference_points_m4_p4_count():
    assert len(generate_reference_points(4, 4)) == 35  # C(7, 3)


def test_reference_points_m2_p1_boundary():
    rps = generate_reference_points(2, 1)
    assert rps.coords.tolist() == [[0, 1], [1, 0]]


def test_reference_points_on_simplex_and_lex_ordered():
    rps = generate_reference_points(3, 5)
    assert len(rps) == math.comb(5 + 3 - 1, 3 - 1)
    assert (rps.coords.sum(axis=1) == 5).all()
    assert (rps.coords >= 0).all()
    assert rps.coords.tolist() == sorted(rps.coords.tolist())
    assert np.allclose(rps.points.sum(axis=1), 1.0)


def test_reference_points_guard():
    with pytest.raises(ValueError):
        generate_reference_points(8, 2000)


def test_default_resolution_matches_m2_rule():
    # 2 * 2^(3/2) = 4 sqrt(2)
    assert default_resolution(2, 32) == math.ceil(4 * math.sqrt(2) * 32)


def test_normalize_formula_instantiation():
    state = NormalizationState(2, eps_nad=4.0)
    state.y_min = np.array([0.0, 0.0])
    fn = state.normalize(np.array([[2, 2]]), front1_max=np.array([4, 4]))
    assert np.allclose(fn, [[0.5, 0.5]])


def test_normalize_with_nonzero_ideal():
    state = NormalizationState(2, eps_nad=4.0)
    state.y_min = np.array([1.0, 0.0])
    fn = state.normalize(np.array([[3, 1]]), front1_max=np.array([4, 4]))
    assert np.allclose(fn, [[2 / 3, 1 / 4]])


def test_normalize_in_unit_range_with_eps_nad_n():
    problem = OneMinMax(2, 16)
    rng = make_rng(1)
    state = NormalizationState(2, eps_nad=16.0)
    pool = random_population(problem, 40, rng)
    fn = update_and_normalize(state, pool)
    assert (fn >= 0).all() and (fn <= 1).all()


def test_perpendicular_distance_examples():
    assert perpendicular_distance(np.array([0.5, 0.5]), np.array([1.0, 0.0])) == pytest.approx(0.5)
    assert perpendicular_distance(
        np.array([0.6, 0.4]), np.array([0.5, 0.5])
    ) == pytest.approx(math.sqrt(0.02))
    assert perpendicular_distance(np.array([0.3, 0.3]), np.array([0.5, 0.5])) == pytest.approx(0.0)


def test_perpendicular_distance_exact_zero_on_lattice():
    rps = generate_reference_points(2, 7)
    assert all(perpendicular_distance(p, p) == 0.0 for p in rps.points)


def test_associate_exact_hits():
    rps = generate_reference_points(2, 4)
    rng = make_rng(2)
    fn = np.array([[1.0, 0.0], [0.5, 0.5]])
    niches = associate(fn, rps, rng)
    assert rps.coords[niches[0]].tolist() == [4, 0]
    assert rps.coords[niches[1]].tolist() == [2, 2]


def test_associate_matches_argmin_oracle():
    rps = generate_reference_points(2, 7)
    rng = make_rng(3)
    fn = make_rng(4).random((10**4, 2))
    niches = associate(fn, rps, rng)
    for i in range(0, 10**4, 37):  # spot-check against the scalar oracle
        dists = [perpendicular_distance(fn[i], r) for r in rps.points]
        best = min(dists)
        ties = [j for j, d in enumerate(dists) if d == best]
        if len(ties) == 1:
            assert niches[i] == ties[0]


def _select_from_normalized(fn, p, slots, rng):
    rps = generate_reference_points(2, p)
    niches = associate(fn, rps, rng)
    dist = np.linalg.norm(fn - rps.points[niches], axis=1)
    return niching_select(niches, dist, np.empty(0, dtype=np.int64), slots, rng)


def test_niching_hand_simulated_instance():
    # Four niches get served once each before any niche is served twice.
    fn = np.array([
        [1.0, 0.0],    # A
        [0.75, 0.25],  # B
        [0.5, 0.5],    # C
        [0.0, 1.0],    # D
        [0.5, 0.5],    # E
    ])
    chosen = set(_select_from_normalized(fn, 4, 4, make_rng(5)).tolist())
    assert {0, 1, 3} <= chosen
    assert len(chosen & {2, 4}) == 1


def test_niching_forced_full_front():
    fn = np.array([[1.0, 0.0], [0.5, 0.5], [0.0, 1.0]])
    chosen = _select_from_normalized(fn, 4, 3, make_rng(6))
    assert sorted(chosen) == [0, 1, 2]


def test_niching_single_candidate():
    fn = np.array([[0.25, 0.75]])
    assert _select_from_normalized(fn, 4, 1, make_rng(7)).tolist() == [0]


def test_niching_overfull_rejected():
    fn = np.array([[0.25, 0.75]])
    with pytest.raises(ValueError):
        _select_from_normalized(fn, 4, 2, make_rng(8))


def test_niching_balance_across_niches():
    # 3 niches x 5 duplicates, 7 slots: counts must be (3, 2, 2)
    fn = np.repeat(np.array([[1.0, 0.0], [0.5, 0.5], [0.0, 1.0]]), 5, axis=0)
    rng = make_rng(9)
    rps = generate_reference_points(2, 4)
    niches = associate(fn, rps, rng)
    dist = np.linalg.norm(fn - rps.points[niches], axis=1)
    chosen = niching_select(niches, dist, np.empty(0, dtype=np.int64), 7, rng)
    counts = np.bincount(niches[chosen], minlength=len(rps))
    assert sorted(c for c in counts if c) == [2, 2, 3]


def test_niching_respects_prefix_counts():
    # Prefix already served niche (2,2) twice; fresh niches go first.
    fn = np.repeat(np.array([[1.0, 0.0], [0.5, 0.5], [0.0, 1.0]]), 2, axis=0)
    rng = make_rng(10)
    rps = generate_reference_points(2, 4)
    niches = associate(fn, rps, rng)
    dist = np.linalg.norm(fn - rps.points[niches], axis=1)
    prefix = np.array([niches[2], niches[2]])
    chosen = niching_select(niches, dist, prefix, 4, rng)
    counts = np.bincount(niches[chosen], minlength=len(rps))
    assert counts[niches[0]] == 2 and counts[niches[4]] == 2
    assert counts[niches[2]] == 0


def _survival_setup(seed, n=8, mu=6):
    problem = OneMinMax(2, n)
    rng = make_rng(seed)
    pop = random_population(problem, mu, rng)
    pool = concat(pop, produce_offspring(pop, problem, rng))
    rps = generate_reference_points(2, default_resolution(2, n))
    norm = NormalizationState(2, eps_nad=float(n))
    return pool, rps, norm, rng, mu


def test_survival_size_and_multiset_inclusion():
    for seed in range(20):
        pool, rps, norm, rng, mu = _survival_setup(seed)
        nxt = nsga3_survival(pool, mu, rps, norm, rng)
        assert len(nxt) == mu
        pool_rows = [tuple(r) for r in pool.bits]
        for row in nxt.bits:
            assert tuple(row) in pool_rows


def test_survival_duplicate_pool():
    problem = OneMinMax(2, 4)
    bits = np.tile(np.array([1, 0, 1, 0], dtype=np.uint8), (8, 1))
    pool = Population(bits, problem.evaluate_many(bits))
    rps = generate_reference_points(2, 23)
    norm = NormalizationState(2, eps_nad=4.0)
    nxt = nsga3_survival(pool, 4, rps, norm, make_rng(11))
    assert len(nxt) == 4
    assert {tuple(r) for r in nxt.fitness} == {(2, 2)}


def test_survival_deterministic():
    pool, rps, norm, rng, mu = _survival_setup(3)
    b = nsga3_survival(pool, mu, rps, norm, rng)
    pool, rps, norm, rng, mu = _survival_setup(3)
    c = nsga3_survival(pool, mu, rps, norm, rng)
    assert np.array_equal(b.bits, c.bits)
