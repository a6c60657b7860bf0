"""Exact special-number engines: factorials, binomials, Eulerian numbers and
Stirling numbers of the second kind, plus the identities tying them together.

Everything returns Python ints, so results are exact at any size.  The
triangle caches grow on demand and never beyond the deepest row requested.
"""

from __future__ import annotations

import math

__all__ = [
    "factorial",
    "binomial",
    "eulerian",
    "eulerian_triangle",
    "stirling2",
    "stirling_triangle",
    "stirling_diagonal",
    "eulerian_from_stirling",
    "stirling_binomial_sum",
]


def factorial(n: int) -> int:
    """n! with 0! = 1; rejects negative n."""
    if n < 0:
        raise ValueError(f"factorial: n must be >= 0, got {n}")
    return math.factorial(n)


def binomial(n: int, k: int) -> int:
    """Binomial coefficient C(n, k), defined as 0 whenever k < 0, k > n or n < 0.

    The zero convention lets the alternating sums below run over their full
    index range without boundary special cases.
    """
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


# Rows cached incrementally; Eulerian row n holds E(n, k) for k = 0..n-1,
# Stirling row n holds S(n, k) for k = 0..n.
_eulerian_rows: list[list[int]] = [[1]]
_stirling_rows: list[list[int]] = [[1]]


def _eulerian_row(n: int) -> list[int]:
    while len(_eulerian_rows) < n:
        prev = _eulerian_rows[-1]
        order = len(prev) + 1
        row = [
            (k + 1) * (prev[k] if k < len(prev) else 0)
            + (order - k) * (prev[k - 1] if k >= 1 else 0)
            for k in range(order)
        ]
        _eulerian_rows.append(row)
    return _eulerian_rows[n - 1]


def _stirling_row(n: int) -> list[int]:
    while len(_stirling_rows) <= n:
        prev = _stirling_rows[-1]
        order = len(_stirling_rows)
        row = [
            k * (prev[k] if k < len(prev) else 0) + (prev[k - 1] if k >= 1 else 0)
            for k in range(order + 1)
        ]
        _stirling_rows.append(row)
    return _stirling_rows[n]


def eulerian(n: int, k: int) -> int:
    """Eulerian number E(n, k): permutations of 1..n with exactly k ascents
    (equivalently, k excedances).  0 outside 0 <= k < n; requires n >= 1.

    Computed by the two-term recurrence
    E(n, k) = (k + 1) E(n-1, k) + (n - k) E(n-1, k-1), E(1, 0) = 1.
    """
    if n < 1:
        raise ValueError(f"eulerian: n must be >= 1, got {n}")
    if k < 0 or k >= n:
        return 0
    return _eulerian_row(n)[k]


def eulerian_triangle(n_max: int) -> list[list[int]]:
    """Rows 1..n_max of the Eulerian triangle; row n is E(n, 0..n-1)."""
    if n_max < 1:
        raise ValueError(f"eulerian_triangle: n_max must be >= 1, got {n_max}")
    _eulerian_row(n_max)
    return [list(row) for row in _eulerian_rows[:n_max]]


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind S(n, k): partitions of an n-set
    into k nonempty blocks.  0 outside 0 <= k <= n; S(0, 0) = 1.

    Computed by S(n, k) = k S(n-1, k) + S(n-1, k-1).
    """
    if n < 0:
        raise ValueError(f"stirling2: n must be >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return _stirling_row(n)[k]


def stirling_triangle(n_max: int) -> list[list[int]]:
    """Rows 1..n_max of the Stirling triangle; row n is S(n, 1..n)."""
    if n_max < 1:
        raise ValueError(f"stirling_triangle: n_max must be >= 1, got {n_max}")
    _stirling_row(n_max)
    return [list(_stirling_rows[n][1:]) for n in range(1, n_max + 1)]


def stirling_diagonal(score: int, i: int) -> int:
    """Stirling count in diagonal indexing: the number of ways to place
    i - 1 mutually non-attacking rooks strictly below the lattice diagonal
    x + y = score; equals ``stirling2(score - 1, score - i)``.

    Evaluated from the explicit alternating sum

        (1 / (score-1-i)!) * sum_{j=1}^{score-1}
            j^(score-2) * (-1)^(score-i-j) * C(score-1-i, j-1)

    which is independent of the recurrence behind :func:`stirling2`, so the
    two routes can cross-check each other.  Requires 1 <= i <= score - 1.
    """
    if score < 2:
        raise ValueError(f"stirling_diagonal: score must be >= 2, got {score}")
    if not 1 <= i <= score - 1:
        raise ValueError(f"stirling_diagonal: i must be in [1, {score - 1}], got {i}")
    acc = 0
    for j in range(1, score):
        c = binomial(score - 1 - i, j - 1)
        if c == 0:
            continue
        term = j ** (score - 2) * c
        acc += -term if (score - i - j) % 2 else term
    quotient, remainder = divmod(acc, factorial(score - 1 - i))
    if remainder:
        raise ArithmeticError("stirling_diagonal: alternating sum not divisible")
    return quotient


def eulerian_from_stirling(n: int, k: int) -> int:
    """E(n, k) through the Stirling transform

        sum_{j=1}^{k+1} (-1)^(k-j+1) * C(n-j, n-k-1) * j! * S(n, j),

    an independent route to the same triangle as :func:`eulerian`.
    Requires 0 <= k <= n - 1.
    """
    if n < 1:
        raise ValueError(f"eulerian_from_stirling: n must be >= 1, got {n}")
    if not 0 <= k <= n - 1:
        raise ValueError(f"eulerian_from_stirling: k must be in [0, {n - 1}], got {k}")
    acc = 0
    for j in range(1, k + 2):
        term = binomial(n - j, n - k - 1) * factorial(j) * stirling2(n, j)
        acc += -term if (k - j + 1) % 2 else term
    return acc


def stirling_binomial_sum(n: int, k: int) -> int:
    """The binomial-weighted Stirling sum  sum_{j=k}^{n} S(j, k) * C(n, j),
    which collapses to S(n+1, k+1).  Returned from the sum itself so tests
    can pit it against the recurrence value.  Requires 0 <= k <= n.
    """
    if not 0 <= k <= n:
        raise ValueError(f"stirling_binomial_sum: k must be in [0, {n}], got {k}")
    return sum(stirling2(j, k) * binomial(n, j) for j in range(k, n + 1))
