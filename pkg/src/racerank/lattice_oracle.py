"""Independent brute-force oracles for the closed forms elsewhere.

Everything here counts finite configurations directly -- lattice points,
non-attacking placements, exhaustive race outcomes -- without consulting the
formulas in `combinatorics` or `two_race`, so agreement between the two
routes is meaningful evidence.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from fractions import Fraction
from typing import Sequence

from .two_race import RankDistribution

__all__ = [
    "DEFAULT_BUDGET",
    "LatticePoint",
    "below_diagonal_points",
    "count_compatible_subsets",
    "brute_force_two_race",
    "brute_force_score",
    "brute_force_composition",
]

# Maximum number of elementary configurations an enumeration may touch.
DEFAULT_BUDGET = 10**8

LatticePoint = tuple[int, int]


def below_diagonal_points(n_b: int, n_t: int) -> set[LatticePoint]:
    """All (x, y) with 1 <= x, y <= n_b and x + y < n_t: the two-race rank
    pairs scoring strictly below n_t."""
    if n_b < 1:
        raise ValueError(f"n_b must be >= 1, got {n_b}")
    if n_t < 2:
        raise ValueError(f"n_t must be >= 2, got {n_t}")
    return {
        (x, y)
        for x in range(1, n_b + 1)
        for y in range(1, n_b + 1)
        if x + y < n_t
    }


def count_compatible_subsets(n_b: int, n_t: int, size: int) -> int:
    """Number of ``size``-element sets of below-diagonal points that share no
    row and no column (partial non-attacking rook placements).  The empty
    placement counts once by convention.

    Requires n_t <= n_b + 1 so the triangle of points is not clipped by the
    lattice edge.  Counts by backtracking row by row; no closed form is
    consulted, keeping this an independent check of ``stirling_diagonal``.
    """
    if n_t > n_b + 1:
        raise ValueError(
            f"need n_t <= n_b + 1 for an unclipped point set; got n_t={n_t}, n_b={n_b}"
        )
    if size < 0:
        raise ValueError(f"size must be >= 0, got {size}")
    cols_by_row: dict[int, list[int]] = defaultdict(list)
    for x, y in below_diagonal_points(n_b, n_t):
        cols_by_row[x].append(y)
    rows = sorted(cols_by_row)

    def place(row_idx: int, left: int, used: set[int]) -> int:
        if left == 0:
            return 1
        if len(rows) - row_idx < left:
            return 0
        total = place(row_idx + 1, left, used)
        for y in cols_by_row[rows[row_idx]]:
            if y not in used:
                used.add(y)
                total += place(row_idx + 1, left - 1, used)
                used.remove(y)
        return total

    return place(0, size, set())


def brute_force_two_race(
    n_b: int, n_t: int, budget: int = DEFAULT_BUDGET
) -> RankDistribution:
    """Exact final-rank distribution of a score-n_t competitor by enumerating
    every second-race permutation, the first race relabeled to the identity
    (boat i scores i + a(i))."""
    if n_b < 1:
        raise ValueError(f"n_b must be >= 1, got {n_b}")
    if not 2 <= n_t <= 2 * n_b + 1:
        raise ValueError(f"score n_t must be in [2, {2 * n_b + 1}], got {n_t}")
    need = math.factorial(n_b)
    if need > budget:
        raise ValueError(f"enumeration needs {need} configurations, budget is {budget}")
    counts = [0] * (n_b + 2)
    for a in itertools.permutations(range(1, n_b + 1)):
        m = 1 + sum(1 for i, ai in enumerate(a, start=1) if i + ai < n_t)
        counts[m] += 1
    return RankDistribution(n_b, n_t, tuple(Fraction(c, need) for c in counts[1:]))


def brute_force_score(
    n_b: int, n_r: int, n_t: int, budget: int = DEFAULT_BUDGET
) -> RankDistribution:
    """Exact final-rank distribution of a score-n_t competitor over n_r races:
    the first race is relabeled to the identity and the other n_r - 1 races
    run over all permutation tuples ((n_b!)^(n_r - 1) configurations)."""
    if n_b < 1 or n_r < 1:
        raise ValueError("n_b and n_r must be >= 1")
    need = math.factorial(n_b) ** (n_r - 1)
    if need > budget:
        raise ValueError(f"enumeration needs {need} configurations, budget is {budget}")
    perms = list(itertools.permutations(range(1, n_b + 1)))
    counts = [0] * (n_b + 2)
    for races in itertools.product(perms, repeat=n_r - 1):
        m = 1
        for i in range(1, n_b + 1):
            if i + sum(race[i - 1] for race in races) < n_t:
                m += 1
        counts[m] += 1
    return RankDistribution(n_b, n_t, tuple(Fraction(c, need) for c in counts[1:]))


def brute_force_composition(
    n_b: int, ranks: Sequence[int], budget: int = DEFAULT_BUDGET
) -> RankDistribution:
    """Exact final-rank distribution of a real tracked boat whose per-race
    ranks are fixed, while in every race the other n_b - 1 boats permute
    over the leftover rank values (((n_b - 1)!)^n_r configurations).

    The tracked boat's rank runs over 1..n_b and counts only strictly
    smaller scores, so boats tying it do not push it down.
    """
    if n_b < 1:
        raise ValueError(f"n_b must be >= 1, got {n_b}")
    n_r = len(ranks)
    if n_r < 1:
        raise ValueError("need at least one race")
    if any(not 1 <= r <= n_b for r in ranks):
        raise ValueError(f"tracked ranks must lie in [1, {n_b}], got {tuple(ranks)}")
    need = math.factorial(n_b - 1) ** n_r
    if need > budget:
        raise ValueError(f"enumeration needs {need} configurations, budget is {budget}")
    tracked_score = sum(ranks)
    race_perms = [
        list(itertools.permutations([v for v in range(1, n_b + 1) if v != r]))
        for r in ranks
    ]
    counts = [0] * (n_b + 1)
    for assignment in itertools.product(*race_perms):
        m = 1
        for j in range(n_b - 1):
            if sum(race[j] for race in assignment) < tracked_score:
                m += 1
        counts[m] += 1
    return RankDistribution(
        n_b, tracked_score, tuple(Fraction(c, need) for c in counts[1:])
    )
