"""Seeded, reproducible Monte Carlo regattas.

Each trial draws one uniform random permutation of ranks 1..n_b per race,
scores every boat by the sum of its ranks (optionally dropping each boat's
single worst rank) and records the final rank of the competitor under
study: either a virtual competitor holding a fixed score n_t, or a tracked
real boat holding fixed per-race ranks while the other boats permute over
the leftover rank values.

Reproducibility contract
------------------------
All randomness comes from Philox4x64-10 counter streams (numpy's
``np.random.Philox``).  A run is addressed by ``(seed, stream)`` through
the 128-bit Philox key ``seed + (stream << 64)``.  Every trial owns a
fixed, disjoint slice of the counter space: trial t reads counter blocks
``[t * B, (t + 1) * B)``, where B is the per-trial block quota implied by
the configuration, and raw 64-bit outputs become doubles as
``(word >> 11) * 2**-53``.  Chunk size and worker count therefore cannot
change any result: a SimConfig determines its SimResult bit for bit.

Uniform variates are turned into rank permutations by ranking them within
each row; the sort is stable, so even the astronomically unlikely exact tie
resolves deterministically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .asymptotics import (
    AsymptoticParams,
    centered_score,
    mean_final_rank,
    variance_final_rank,
)

__all__ = [
    "SimConfig",
    "SimResult",
    "RankMomentsEstimate",
    "CurvePoint",
    "random_permutation",
    "simulate",
    "empirical_rank_moments",
    "curve_sweep",
    "middle_band_grid",
]

_MASK64 = (1 << 64) - 1
_CHUNK_DOUBLES = 1 << 22  # ~4.2M doubles (~34 MB) generated per chunk


def _philox_key(seed: int, stream: int) -> int:
    return (seed & _MASK64) | ((stream & _MASK64) << 64)


def _trial_uniforms(
    seed: int, stream: int, first_trial: int, n_trials: int, per_trial: int
) -> np.ndarray:
    """Uniform doubles for trials [first_trial, first_trial + n_trials),
    shape (n_trials, per_trial).

    Trial t always reads the same counter blocks (4 raw words per block,
    padding wasted when per_trial is not a multiple of 4), so any split of
    a run into separate calls returns identical rows.
    """
    if n_trials == 0:
        return np.empty((0, per_trial))
    blocks = -(-per_trial // 4)
    bitgen = np.random.Philox(
        key=_philox_key(seed, stream), counter=first_trial * blocks
    )
    raw = bitgen.random_raw(n_trials * blocks * 4)
    u = (raw >> np.uint64(11)) * 2.0**-53
    return u.reshape(n_trials, blocks * 4)[:, :per_trial]


def _rank_rows(u: np.ndarray) -> np.ndarray:
    """Each row of iid uniforms becomes a uniform random permutation of
    1..n: position j receives the rank of u[j] within its row."""
    order = np.argsort(u, axis=-1, kind="stable")
    ranks = np.empty(u.shape, dtype=np.int64)
    np.put_along_axis(
        ranks, order, np.arange(1, u.shape[-1] + 1, dtype=np.int64), axis=-1
    )
    return ranks


def _chunked(trials: int, per_trial: int) -> Iterator[tuple[int, int]]:
    step = max(1, _CHUNK_DOUBLES // max(per_trial, 1))
    for start in range(0, trials, step):
        yield start, min(step, trials - start)


def random_permutation(n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform random permutation of 1..n via the generator's in-place
    Fisher-Yates shuffle; deterministic for a fixed generator state."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    out = np.arange(1, n + 1, dtype=np.int64)
    rng.shuffle(out)
    return out


@dataclass(frozen=True)
class SimConfig:
    """Parameters of one simulation run.

    ``n_t`` is the virtual competitor's score and is required unless
    ``tracked_ranks`` is given, in which case the tracked boat's fixed
    per-race ranks define its score and ``n_t`` is ignored.  ``stream``
    selects an independent substream of the same seed (curve sweeps use the
    grid index).  With ``drop_worst`` every real boat's score drops its
    single worst rank; a virtual competitor's ``n_t`` is compared as given,
    i.e. it is taken to be an already-improved score.
    """

    n_b: int
    n_r: int
    trials: int
    seed: int
    n_t: int | None = None
    drop_worst: bool = False
    tracked_ranks: tuple[int, ...] | None = None
    stream: int = 0

    def __post_init__(self) -> None:
        if self.n_b < 1:
            raise ValueError("n_b must be >= 1")
        if self.n_r < 1:
            raise ValueError("n_r must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 0 <= self.seed <= _MASK64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.tracked_ranks is None:
            if self.n_t is None:
                raise ValueError("n_t is required unless tracked_ranks is given")
        else:
            object.__setattr__(self, "tracked_ranks", tuple(self.tracked_ranks))
            if len(self.tracked_ranks) != self.n_r:
                raise ValueError("tracked_ranks must list one rank per race")
            if any(not 1 <= r <= self.n_b for r in self.tracked_ranks):
                raise ValueError("tracked ranks must lie in [1, n_b]")


@dataclass(frozen=True)
class SimResult:
    """Empirical final-rank distribution: counts[m - 1] tallies rank m.

    ``variance`` is the plain empirical variance of m; the standard errors
    come from the samples themselves (``std_error_mean`` from the Bessel
    sample variance, ``std_error_variance`` from the fourth central
    moment, SE^2 = (m4 - var^2) / trials).
    """

    config: SimConfig
    counts: tuple[int, ...]
    empirical_probs: tuple[float, ...]
    mean: float
    variance: float
    std_error_mean: float
    std_error_variance: float


def _result_from_counts(config: SimConfig, counts: np.ndarray) -> SimResult:
    t = config.trials
    m_values = np.arange(1, len(counts) + 1, dtype=np.float64)
    probs = counts / t
    mean = float(m_values @ probs)
    var = float(((m_values - mean) ** 2) @ probs)
    m4 = float(((m_values - mean) ** 4) @ probs)
    sample_var = var * t / (t - 1) if t > 1 else 0.0
    return SimResult(
        config=config,
        counts=tuple(int(c) for c in counts),
        empirical_probs=tuple(float(p) for p in probs),
        mean=mean,
        variance=var,
        std_error_mean=math.sqrt(sample_var / t),
        std_error_variance=math.sqrt(max(m4 - var * var, 0.0) / t),
    )


def simulate(config: SimConfig) -> SimResult:
    """Run the configured trials (see the module docstring for the exact
    randomness layout).  Virtual mode tallies m = 1 + #{boats scoring
    strictly below n_t}; tracked mode m = 1 + #{other boats scoring
    strictly below the tracked boat}."""
    if config.tracked_ranks is None:
        counts = _simulate_virtual(config)
    else:
        counts = _simulate_tracked(config)
    return _result_from_counts(config, counts)


def _simulate_virtual(config: SimConfig) -> np.ndarray:
    n_b, n_r, n_t = config.n_b, config.n_r, config.n_t
    per_trial = n_r * n_b
    counts = np.zeros(n_b + 2, dtype=np.int64)
    for start, n in _chunked(config.trials, per_trial):
        u = _trial_uniforms(config.seed, config.stream, start, n, per_trial)
        ranks = _rank_rows(u.reshape(n * n_r, n_b)).reshape(n, n_r, n_b)
        if config.drop_worst:
            scores = ranks.sum(axis=1) - ranks.max(axis=1)
        else:
            scores = ranks.sum(axis=1)
        m = 1 + (scores < n_t).sum(axis=1)
        counts += np.bincount(m, minlength=n_b + 2)
    return counts[1:]


def _simulate_tracked(config: SimConfig) -> np.ndarray:
    n_b, n_r = config.n_b, config.n_r
    others = n_b - 1
    assert config.tracked_ranks is not None
    tracked = config.tracked_ranks
    tracked_score = sum(tracked) - (max(tracked) if config.drop_worst else 0)
    counts = np.zeros(n_b + 1, dtype=np.int64)
    if others == 0:
        counts[1] = config.trials
        return counts[1:]
    leftover = np.array(
        [[v for v in range(1, n_b + 1) if v != r] for r in tracked], dtype=np.int64
    )
    per_trial = n_r * others
    for start, n in _chunked(config.trials, per_trial):
        u = _trial_uniforms(config.seed, config.stream, start, n, per_trial)
        order = np.argsort(u.reshape(n, n_r, others), axis=-1, kind="stable")
        vals = np.take_along_axis(
            np.broadcast_to(leftover, (n, n_r, others)), order, axis=-1
        )
        if config.drop_worst:
            scores = vals.sum(axis=1) - vals.max(axis=1)
        else:
            scores = vals.sum(axis=1)
        m = 1 + (scores < tracked_score).sum(axis=1)
        counts += np.bincount(m, minlength=n_b + 1)
    return counts[1:]


@dataclass(frozen=True)
class RankMomentsEstimate:
    """Sampled one-race rank moments with batch-means standard errors: the
    trials are cut into equal batches, the statistic is computed per batch,
    and the quoted value / SE are the mean / SE of the batch values."""

    n_b: int
    trials: int
    mean: float
    var_diag: float
    cov_offdiag: float
    se_mean: float
    se_var: float
    se_cov: float


def empirical_rank_moments(
    n_b: int, trials: int, seed: int, stream: int = 0, batches: int = 50
) -> RankMomentsEstimate:
    """Estimate the mean and variance of one boat's race rank and the
    covariance between two boats' ranks from ``trials`` sampled
    permutations.

    The estimators watch the fixed coordinates of boats 1 and 2: averaging
    over all boats would be pinned by the exact sum rule and estimate
    nothing.  Requires n_b >= 2 and trials >= 1000.
    """
    if n_b < 2:
        raise ValueError("need n_b >= 2 for a pair covariance")
    if trials < 1000:
        raise ValueError("need trials >= 1000")
    if batches < 2 or trials // batches < 2:
        raise ValueError("too few trials per batch")
    x01 = np.empty((trials, 2), dtype=np.int64)
    for start, n in _chunked(trials, n_b):
        u = _trial_uniforms(seed, stream, start, n, n_b)
        x01[start : start + n] = _rank_rows(u)[:, :2]
    size = trials // batches
    used = batches * size
    x0 = x01[:used, 0].reshape(batches, size).astype(np.float64)
    x1 = x01[:used, 1].reshape(batches, size).astype(np.float64)
    b_mean = x0.mean(axis=1)
    b_var = x0.var(axis=1, ddof=1)
    d0 = x0 - x0.mean(axis=1, keepdims=True)
    d1 = x1 - x1.mean(axis=1, keepdims=True)
    b_cov = (d0 * d1).sum(axis=1) / (size - 1)

    def _se(values: np.ndarray) -> float:
        return float(values.std(ddof=1) / math.sqrt(batches))

    return RankMomentsEstimate(
        n_b=n_b,
        trials=trials,
        mean=float(b_mean.mean()),
        var_diag=float(b_var.mean()),
        cov_offdiag=float(b_cov.mean()),
        se_mean=_se(b_mean),
        se_var=_se(b_var),
        se_cov=_se(b_cov),
    )


@dataclass(frozen=True)
class CurvePoint:
    """One sweep row: Monte Carlo vs normal-limit mean/variance at score n_t."""

    n_t: int
    centered: float
    mean_theory: float
    mean_mc: float
    var_theory: float
    var_mc: float
    stderr_mean: float
    stderr_var: float


def middle_band_grid(
    n_b: int, n_r: int, points: int = 21, half_width_sigmas: float = 3.2
) -> list[int]:
    """Evenly spaced integer scores centered on the middle score, spanning
    +- half_width_sigmas * sqrt(lam) and clipped to the attainable range.
    Duplicates after rounding are merged, so very narrow ranges may return
    fewer than ``points`` values."""
    params = AsymptoticParams(n_b, n_r)
    mid = float(params.middle_score)
    w = half_width_sigmas * math.sqrt(float(params.lam))
    lo = max(float(n_r), mid - w)
    hi = min(float(n_r * n_b), mid + w)
    return sorted({int(round(v)) for v in np.linspace(lo, hi, points)})


def curve_sweep(
    n_b: int, n_r: int, n_t_grid: Sequence[int], trials: int, seed: int
) -> list[CurvePoint]:
    """Monte Carlo sweep over scores with the normal-limit columns attached.
    Grid point k runs on substream k of the seed, so the whole table is
    deterministic and the points are statistically independent."""
    rows = []
    for idx, raw_n_t in enumerate(n_t_grid):
        n_t = int(raw_n_t)
        result = simulate(
            SimConfig(n_b=n_b, n_r=n_r, trials=trials, seed=seed, n_t=n_t, stream=idx)
        )
        rows.append(
            CurvePoint(
                n_t=n_t,
                centered=centered_score(n_t, n_b, n_r),
                mean_theory=mean_final_rank(n_b, n_r, n_t),
                mean_mc=result.mean,
                var_theory=variance_final_rank(n_b, n_r, n_t),
                var_mc=result.variance,
                stderr_mean=result.std_error_mean,
                stderr_var=result.std_error_variance,
            )
        )
    return rows
