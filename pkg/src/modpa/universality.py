"""Brute-force collision audit of the (c, d) modular hash family.

At desk-scale parameters the family can be enumerated outright: every seed
(c odd, d arbitrary in Z_{2^alpha}) is applied to every input, collisions
are tallied per input pair, and the worst pair's collision fraction is
compared against both candidate bounds 1/|B| and 2/|B|.  Nothing is
assumed: the report states which bound the measurement actually met.

Beyond exhaustive reach, a uniform sample of seeds gives an estimate; the
report is flagged as sampled so nobody mistakes it for a census.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pa import BitBlock, HashSeed, compress


class AuditResourceError(ValueError):
    """Requested audit exceeds the configured enumeration budget."""


@dataclass(frozen=True)
class CollisionReport:
    """Worst-pair collision statistics for one (alpha, beta) family.

    ``family_size`` is the true |G| = 2^(alpha-1) * 2^alpha regardless of
    sampling; ``seeds_examined`` is how many members were actually tested,
    and ``worst_ratio`` is worst_delta / seeds_examined.
    ``delta_by_difference[w]`` counts collisions of the pair (0, w) over the
    examined seeds (index 0 unused).
    """

    alpha: int
    beta: int
    family_size: int
    seeds_examined: int
    sampled: bool
    worst_pair: tuple[int, int]
    worst_delta: int
    worst_ratio: float
    bound_1_over_B: float
    bound_2_over_B: float
    meets_1_over_B: bool
    meets_2_over_B: bool
    delta_by_difference: tuple[int, ...]


def delta(seed: HashSeed, r: int, x: int, y: int) -> int:
    """Collision indicator: 1 iff x != y and both hash to the same r-bit output."""
    domain = 1 << seed.alpha
    if not (0 <= x < domain and 0 <= y < domain):
        raise ValueError(f"inputs must lie in [0, 2^{seed.alpha})")
    if x == y:
        return 0
    gx = compress(BitBlock(x, seed.alpha), seed, r)
    gy = compress(BitBlock(y, seed.alpha), seed, r)
    return int(gx.value == gy.value)


def _seed_arrays(alpha: int, seed_sample: int | None,
                 rng_seed: int) -> tuple[np.ndarray, np.ndarray, bool]:
    domain = 1 << alpha
    if seed_sample is None:
        cs = np.arange(1, domain, 2, dtype=np.int64)
        c_rep = np.repeat(cs, domain)
        d_rep = np.tile(np.arange(domain, dtype=np.int64), len(cs))
        return c_rep, d_rep, False
    if seed_sample < 1:
        raise ValueError(f"seed sample size must be >= 1, got {seed_sample}")
    rng = np.random.default_rng(rng_seed)
    c_rep = rng.integers(0, domain // 2, size=seed_sample, dtype=np.int64) * 2 + 1
    d_rep = rng.integers(0, domain, size=seed_sample, dtype=np.int64)
    return c_rep, d_rep, True


def audit_family(alpha: int, beta: int, *,
                 seed_sample: int | None = None,
                 rng_seed: int = 0,
                 max_alpha: int = 12) -> CollisionReport:
    """Measure the family's worst-pair collision behavior.

    Exhaustive over all seeds by default; pass ``seed_sample`` to audit a
    uniform random subset (deterministic given ``rng_seed``).  Alphas above
    ``max_alpha`` are refused outright: the pair matrix alone is 4^alpha
    counters.
    """
    if not 1 <= beta <= alpha:
        raise ValueError(f"need 1 <= beta <= alpha, got beta={beta}, alpha={alpha}")
    if alpha > max_alpha:
        raise AuditResourceError(
            f"alpha={alpha} exceeds the enumeration budget (max_alpha={max_alpha}); "
            "raise max_alpha explicitly or use seed_sample")
    domain = 1 << alpha
    mask = domain - 1
    shift = alpha - beta
    family_size = (domain // 2) * domain

    c_rep, d_rep, sampled = _seed_arrays(alpha, seed_sample, rng_seed)
    x = np.arange(domain, dtype=np.int64)
    counts = np.zeros((domain, domain), dtype=np.int64)
    # One pass per seed: hash the whole domain, then tally equal-output pairs.
    for c, d in zip(c_rep, d_rep):
        out = ((c * x + d) & mask) >> shift
        counts += out[:, None] == out[None, :]

    np.fill_diagonal(counts, 0)
    worst_flat = int(np.argmax(counts))
    wx, wy = divmod(worst_flat, domain)
    worst_delta = int(counts[wx, wy])
    seeds_examined = len(c_rep)
    worst_ratio = worst_delta / seeds_examined
    b1 = 1.0 / (1 << beta)
    b2 = 2.0 / (1 << beta)
    return CollisionReport(
        alpha=alpha,
        beta=beta,
        family_size=family_size,
        seeds_examined=seeds_examined,
        sampled=sampled,
        worst_pair=(int(wx), int(wy)),
        worst_delta=worst_delta,
        worst_ratio=worst_ratio,
        bound_1_over_B=b1,
        bound_2_over_B=b2,
        meets_1_over_B=worst_ratio <= b1,
        meets_2_over_B=worst_ratio <= b2,
        delta_by_difference=tuple(int(v) for v in counts[0, :]),
    )
