from fractions import Fraction

import pytest

from racerank.combinatorics import (
    binomial,
    eulerian,
    eulerian_from_stirling,
    eulerian_triangle,
    factorial,
    stirling2,
    stirling_binomial_sum,
    stirling_diagonal,
    stirling_triangle,
)

# Reference triangle rows (row 7 is the palindromic completion forced by
# the recurrence: 7 entries summing to 7!).
EULERIAN_ROWS = [
    [1],
    [1, 1],
    [1, 4, 1],
    [1, 11, 11, 1],
    [1, 26, 66, 26, 1],
    [1, 57, 302, 302, 57, 1],
    [1, 120, 1191, 2416, 1191, 120, 1],
]


def test_factorial_values():
    assert factorial(0) == 1
    assert factorial(4) == 24
    assert factorial(7) == 5040


def test_factorial_rejects_negative():
    with pytest.raises(ValueError):
        factorial(-1)


@pytest.mark.parametrize(
    "n, k, expected",
    [(4, 2, 6), (2, 3, 0), (4, 1, 4), (0, 0, 1), (-1, 0, 0), (5, -2, 0)],
)
def test_binomial(n, k, expected):
    assert binomial(n, k) == expected


def test_eulerian_values():
    assert eulerian(3, 1) == 4
    assert eulerian(6, 2) == 302
    assert eulerian(5, 4) == 1
    assert eulerian(4, -1) == 0
    assert eulerian(4, 4) == 0
    with pytest.raises(ValueError):
        eulerian(0, 0)


def test_eulerian_triangle_matches_reference():
    assert eulerian_triangle(7) == EULERIAN_ROWS


def test_eulerian_row_sum_and_palindrome_to_12():
    for n in range(1, 13):
        row = eulerian_triangle(n)[-1]
        assert sum(row) == factorial(n)
        assert row == row[::-1]


def test_stirling2_values():
    assert stirling2(4, 2) == 7
    assert stirling2(4, 3) == 6
    for n in range(13):
        assert stirling2(n, n) == 1
    assert stirling2(5, 0) == 0
    assert stirling2(5, 6) == 0
    assert stirling2(0, 0) == 1


def test_stirling_triangle_row4():
    assert stirling_triangle(4)[3] == [1, 7, 6, 1]


def _bell_numbers(n_max):
    # Bell triangle, independent of the module's recurrence; returns B_0..B_n_max
    rows = [[1]]
    for _ in range(n_max):
        prev = rows[-1]
        new = [prev[-1]]
        for v in prev:
            new.append(new[-1] + v)
        rows.append(new)
    return [r[0] for r in rows]


def test_stirling_rows_sum_to_bell():
    bell = _bell_numbers(10)
    for n in range(1, 11):
        assert sum(stirling_triangle(n)[-1]) == bell[n]


def test_stirling_diagonal_worked_list():
    assert [stirling_diagonal(5, i) for i in (1, 2, 3, 4)] == [1, 6, 7, 1]


def test_stirling_diagonal_rejects_out_of_range():
    with pytest.raises(ValueError):
        stirling_diagonal(5, 0)
    with pytest.raises(ValueError):
        stirling_diagonal(5, 5)
    with pytest.raises(ValueError):
        stirling_diagonal(1, 1)


def test_stirling_diagonal_reconciles_with_stirling2():
    for score in range(2, 13):
        for i in range(1, score):
            assert stirling_diagonal(score, i) == stirling2(score - 1, score - i)


def test_eulerian_from_stirling_values():
    # -C(2,1)*1!*S(3,1) + C(1,1)*2!*S(3,2) = -2 + 6
    assert eulerian_from_stirling(3, 1) == 4
    assert eulerian_from_stirling(3, 0) == 1
    assert eulerian_from_stirling(4, 1) == 11


def test_eulerian_from_stirling_matches_eulerian_to_10():
    for n in range(1, 11):
        for k in range(n):
            assert eulerian_from_stirling(n, k) == eulerian(n, k)


def test_eulerian_from_stirling_rejects_out_of_range():
    with pytest.raises(ValueError):
        eulerian_from_stirling(4, 4)
    with pytest.raises(ValueError):
        eulerian_from_stirling(4, -1)


def test_stirling_binomial_sum_values():
    # S(1,1)C(4,1) + S(2,1)C(4,2) + S(3,1)C(4,3) + S(4,1)C(4,4) = 4+6+4+1
    assert stirling_binomial_sum(4, 1) == 15
    assert stirling_binomial_sum(3, 1) == 7
    for n in range(13):
        assert stirling_binomial_sum(n, n) == 1


def test_stirling_binomial_sum_collapses_to_12():
    for n in range(13):
        for k in range(n + 1):
            assert stirling_binomial_sum(n, k) == stirling2(n + 1, k + 1)


def test_fraction_arithmetic_is_canonical():
    # the exact-rational carrier used across the package
    pairs = [(1, 2), (-3, 7), (10, 4), (6, -8), (123456789, 987654321)]
    for a, b in pairs:
        x = Fraction(a, b)
        assert x * (1 / x) == 1
        assert Fraction(x.numerator, x.denominator) == x  # normalization idempotent
        assert x.denominator > 0
    assert Fraction(2, 4) == Fraction(1, 2)
