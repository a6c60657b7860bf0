import itertools
from collections import Counter
from fractions import Fraction

import pytest

from racerank.combinatorics import eulerian, factorial
from racerank.two_race import (
    RankDistribution,
    distribution_moments,
    excedance_distribution,
    full_distribution,
    p_exact,
    p_middle,
    p_reflected,
    p_stirling_form,
    reflect_distribution,
    stirling_form_distribution,
)


def brute_distribution(n_b, n_t):
    """In-test oracle: enumerate second-race permutations with the first race
    fixed to the identity (boat i scores i + a(i))."""
    counts = Counter()
    for a in itertools.permutations(range(1, n_b + 1)):
        m = 1 + sum(1 for i, ai in enumerate(a, start=1) if i + ai < n_t)
        counts[m] += 1
    total = factorial(n_b)
    return tuple(Fraction(counts[m], total) for m in range(1, n_b + 2))


def test_p_exact_examples():
    assert p_exact(3, 3, 1) == Fraction(2, 3)  # == brute force over S_3
    assert p_exact(3, 4, 2) == Fraction(2, 3)  # Eulerian row {1,4,1} / 3!
    for n_b in (1, 2, 5, 9):
        assert p_exact(n_b, 2, 1) == 1


def test_p_exact_matches_brute_force():
    for n_b in range(1, 7):
        for n_t in range(2, n_b + 2):
            expected = brute_distribution(n_b, n_t)
            for m in range(1, n_b + 2):
                assert p_exact(n_b, n_t, m) == expected[m - 1]


def test_p_exact_rejects_out_of_range():
    with pytest.raises(ValueError):
        p_exact(3, 5, 1)  # upper range needs p_reflected
    with pytest.raises(ValueError):
        p_exact(3, 1, 1)
    with pytest.raises(ValueError):
        p_exact(3, 3, 5)


def test_p_reflected():
    assert p_reflected(3, 7, 4) == 1  # highest score -> always last
    for m in range(1, 5):
        assert p_reflected(3, 5, m) == p_exact(3, 4, 5 - m)
    assert p_reflected(4, 6, 3) == p_exact(4, 5, 3)
    # both sides against brute force
    expected = brute_distribution(4, 6)
    for m in range(1, 6):
        assert p_reflected(4, 6, m) == expected[m - 1]
    with pytest.raises(ValueError):
        p_reflected(3, 4, 1)
    with pytest.raises(ValueError):
        p_reflected(3, 8, 1)


def test_p_middle_rows():
    assert [p_middle(4, m) for m in range(1, 6)] == [
        Fraction(c, 24) for c in (1, 11, 11, 1, 0)
    ]
    assert [p_middle(1, m) for m in (1, 2)] == [1, 0]
    assert p_middle(6, 3) == Fraction(302, 720)


def test_p_middle_identity_and_agreement():
    for n_b in range(1, 11):
        for m in range(1, n_b + 2):
            assert p_middle(n_b, m) * factorial(n_b) == eulerian(n_b, m - 1)
    for n_b in range(1, 8):
        for m in range(1, n_b + 2):
            assert p_middle(n_b, m) == p_exact(n_b, n_b + 1, m)


def test_middle_score_alternating_sum_specialization():
    # the middle-score specialization (1+n)(sum (-1)^k (m-k)^n / k!(1+n-k)!)
    # as a third independent route
    for n_b in range(1, 9):
        for m in range(1, n_b + 2):
            total = Fraction(0)
            for k in range(m):
                term = Fraction(
                    (m - k) ** n_b, factorial(k) * factorial(1 + n_b - k)
                )
                total += -term if k % 2 else term
            assert (1 + n_b) * total == p_middle(n_b, m)


def test_p_stirling_form_examples():
    assert p_stirling_form(3, 3, 1) == Fraction(2, 3)  # (6 - 2) / 6
    assert p_stirling_form(3, 4, 2) == Fraction(2, 3)
    for n_b in (1, 2, 5):
        assert p_stirling_form(n_b, 2, 1) == 1


def test_forms_agree_everywhere():
    for n_b in range(1, 9):
        for n_t in range(2, n_b + 2):
            for m in range(1, n_b + 2):
                assert p_exact(n_b, n_t, m) == p_stirling_form(n_b, n_t, m)


def test_full_distribution_examples():
    assert full_distribution(3, 4).probs == (
        Fraction(1, 6),
        Fraction(2, 3),
        Fraction(1, 6),
        Fraction(0),
    )
    assert full_distribution(3, 3).probs == (Fraction(2, 3), Fraction(1, 3), 0, 0)
    assert full_distribution(2, 2).probs == (1, 0, 0)
    assert full_distribution(3, 7).probs == (0, 0, 0, 1)


def test_full_distribution_normalization_and_last_slot():
    for n_b in range(1, 9):
        for n_t in range(2, 2 * n_b + 2):
            d = full_distribution(n_b, n_t)
            assert sum(d.probs) == 1
            if n_t <= n_b + 1:
                assert d.probs[-1] == 0


def test_full_distribution_rejects_out_of_range():
    with pytest.raises(ValueError):
        full_distribution(3, 1)
    with pytest.raises(ValueError):
        full_distribution(3, 8)


def test_stirling_form_distribution_agrees():
    for n_b in range(1, 7):
        for n_t in range(2, 2 * n_b + 2):
            assert stirling_form_distribution(n_b, n_t) == full_distribution(n_b, n_t)


def test_reflection_involution():
    for n_b in range(1, 7):
        for n_t in range(2, 2 * n_b + 2):
            d = full_distribution(n_b, n_t)
            r = reflect_distribution(d)
            assert r == full_distribution(n_b, r.n_t)
            assert reflect_distribution(r) == d


def test_distribution_moments():
    mean, var = distribution_moments(full_distribution(3, 4))
    assert mean == 2 and var == Fraction(1, 3)
    for n_b in range(1, 11):
        mean, _ = distribution_moments(full_distribution(n_b, n_b + 1))
        assert mean == Fraction(n_b + 1, 2)  # palindromic middle row
    for n_b in (1, 3, 5):
        mean, var = distribution_moments(full_distribution(n_b, 2))
        assert mean == 1 and var == 0


def test_rank_distribution_validation():
    with pytest.raises(ValueError):
        RankDistribution(2, 3, (Fraction(1, 2), Fraction(1, 3), Fraction(0)))
    with pytest.raises(ValueError):
        RankDistribution(2, 3, (Fraction(3, 2), Fraction(-1, 2), Fraction(0)))
    d = full_distribution(3, 4)
    assert d.p(2) == Fraction(2, 3)
    with pytest.raises(ValueError):
        d.p(5)


def test_excedance_small_cases():
    # per-permutation counts for n=3 are 1,1,2,1,1,0 -> histogram (1,4,1)
    assert excedance_distribution(3).counts == (1, 4, 1)
    assert excedance_distribution(1).counts == (1,)
    assert excedance_distribution(4).counts == (1, 11, 11, 1)


def test_excedance_matches_eulerian_rows():
    for n in range(1, 9):
        hist = excedance_distribution(n)
        assert sum(hist.counts) == factorial(n)
        assert list(hist.counts) == [eulerian(n, k) for k in range(n)]


def test_excedance_cap():
    with pytest.raises(ValueError):
        excedance_distribution(11)
    # configurable
    assert excedance_distribution(6, cap=6).n == 6
