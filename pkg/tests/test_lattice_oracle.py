import itertools
from collections import Counter
from fractions import Fraction

import pytest

from racerank.combinatorics import binomial, stirling_diagonal
from racerank.lattice_oracle import (
    below_diagonal_points,
    brute_force_composition,
    brute_force_score,
    brute_force_two_race,
    count_compatible_subsets,
)
from racerank.two_race import full_distribution


def test_below_diagonal_worked_example():
    expected = {(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 1)}
    for n_b in (4, 5, 8):
        assert below_diagonal_points(n_b, 5) == expected


def test_below_diagonal_edges():
    assert below_diagonal_points(5, 2) == set()
    assert below_diagonal_points(3, 7) == {
        (x, y) for x in (1, 2, 3) for y in (1, 2, 3)
    }


def test_count_compatible_subsets_worked_example():
    assert [count_compatible_subsets(4, 5, i) for i in range(5)] == [1, 6, 7, 1, 0]


def test_count_compatible_subsets_by_direct_subset_filter():
    # independent in-test recount: filter all subsets explicitly
    for n_t in range(2, 7):
        pts = sorted(below_diagonal_points(n_t - 1, n_t))
        for size in range(n_t):
            direct = sum(
                1
                for sub in itertools.combinations(pts, size)
                if all(
                    p[0] != q[0] and p[1] != q[1]
                    for p, q in itertools.combinations(sub, 2)
                )
            )
            assert count_compatible_subsets(n_t - 1, n_t, size) == direct


def test_count_compatible_subsets_matches_diagonal_stirling():
    for n_t in range(2, 9):
        for n_b in (n_t - 1, n_t, n_t + 2):
            for i in range(n_t - 1):
                assert count_compatible_subsets(n_b, n_t, i) == stirling_diagonal(
                    n_t, i + 1
                )


def test_count_compatible_subsets_rejects_clipped_lattice():
    with pytest.raises(ValueError):
        count_compatible_subsets(3, 5, 2)


def test_partition_recurrence_on_oracle_counts():
    # cnt(s, i) plays the diagonal count for diagonal s, i placed points
    def cnt(s, i):
        return count_compatible_subsets(s, s + 1, i)

    for n_t in range(2, 9):
        for i in range(n_t - 1):
            rhs = sum(
                cnt(n_t - kp - 1, i - kp) * binomial(n_t - 1, kp)
                for kp in range(i + 1)
                if n_t - kp >= 2
            )
            assert cnt(n_t, i) == rhs
        assert cnt(n_t, n_t - 1) == 1


def test_brute_force_two_race_examples():
    assert brute_force_two_race(3, 4).probs == (
        Fraction(1, 6),
        Fraction(2, 3),
        Fraction(1, 6),
        Fraction(0),
    )
    assert brute_force_two_race(3, 3).probs == (Fraction(2, 3), Fraction(1, 3), 0, 0)
    assert brute_force_two_race(2, 2).probs == (1, 0, 0)


def test_brute_force_two_race_budget_and_range():
    with pytest.raises(ValueError, match="budget"):
        brute_force_two_race(9, 5, budget=1000)
    with pytest.raises(ValueError):
        brute_force_two_race(3, 8)


def test_brute_force_matches_closed_form():
    for n_b in range(1, 7):
        for n_t in range(2, 2 * n_b + 2):
            assert brute_force_two_race(n_b, n_t) == full_distribution(n_b, n_t)


def test_brute_force_score_consistency_at_two_races():
    for n_t in range(2, 8):
        assert brute_force_score(3, 2, n_t) == brute_force_two_race(3, n_t)


def test_brute_force_score_frozen_values():
    # frozen from the oracle, cross-checked against a full unrelabeled
    # enumeration of all (n_b!)^n_r configurations
    assert brute_force_score(3, 3, 6).probs == (
        Fraction(1, 18),
        Fraction(7, 9),
        Fraction(1, 6),
        Fraction(0),
    )
    assert brute_force_score(2, 3, 4).probs == (Fraction(3, 4), Fraction(1, 4), 0)


def test_brute_force_score_unrelabeled_crosscheck():
    n_b, n_r, n_t = 3, 3, 6
    perms = list(itertools.permutations(range(1, n_b + 1)))
    counts = Counter()
    for races in itertools.product(perms, repeat=n_r):
        m = 1 + sum(
            1 for i in range(n_b) if sum(r[i] for r in races) < n_t
        )
        counts[m] += 1
    total = len(perms) ** n_r
    expected = tuple(Fraction(counts[m], total) for m in range(1, n_b + 2))
    assert brute_force_score(n_b, n_r, n_t).probs == expected


def test_brute_force_score_budget():
    with pytest.raises(ValueError, match="budget"):
        brute_force_score(6, 5, 12, budget=10**6)


def test_brute_force_composition_dependence():
    d_equal = brute_force_composition(3, (2, 2, 2))
    d_split = brute_force_composition(3, (1, 2, 3))
    assert d_equal.n_t == d_split.n_t == 6
    assert d_equal.probs == (0, 1, 0)
    assert d_split.probs == (Fraction(1, 4), Fraction(3, 4), 0)
    assert d_equal.probs != d_split.probs


def test_brute_force_composition_trivial_and_errors():
    assert brute_force_composition(2, (1, 1)).probs == (1, 0)
    with pytest.raises(ValueError):
        brute_force_composition(3, (0, 2, 2))
    with pytest.raises(ValueError):
        brute_force_composition(3, (4, 2, 2))
    with pytest.raises(ValueError, match="budget"):
        brute_force_composition(8, (1,) * 8, budget=10**3)


def test_distributions_sum_to_one():
    for dist in (
        brute_force_two_race(4, 6),
        brute_force_score(3, 3, 7),
        brute_force_composition(4, (2, 3)),
    ):
        assert sum(dist.probs) == 1
