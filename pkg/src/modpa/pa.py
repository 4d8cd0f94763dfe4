"""Privacy amplification by modular-arithmetic universal hashing.

One round takes an n-bit reconciled block x and a public seed (c, d) with c
odd, computes ((c*x + d) mod 2^n) and keeps the most significant r bits.
Both parties run the identical deterministic pipeline, so a shared seed
value yields identical final keys.

Bit/byte convention (bit-exact): bit 0 of a block is the least significant
bit of its integer value; within a byte, bit 0 is the least significant.
Byte order of serialized blocks is configurable, least-significant-first by
default, zero-padded to whole bytes at the most-significant end.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Union

from . import security
from .bignum import (
    BigNat,
    MulAlgorithm,
    ThresholdTable,
    DEFAULT_THRESHOLDS,
    WordOrder,
    fused_mul_add,
    mod_pow2,
    shift_right,
)


class SecurityBoundError(ValueError):
    """Requested output length exceeds what the security budget allows."""

    def __init__(self, r: int, r_max: int):
        super().__init__(
            f"output length r={r} violates the key-length bound; maximum "
            f"permissible r_max={r_max}")
        self.r = r
        self.r_max = r_max


@dataclass(frozen=True)
class BitBlock:
    """An n-bit block; bit i is bit i of ``value`` (bit 0 least significant)."""

    value: int
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"block length must be >= 1, got {self.n}")
        if not 0 <= self.value < (1 << self.n):
            raise ValueError(f"value does not fit in {self.n} bits")

    def bit(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(f"bit index {i} out of range for {self.n}-bit block")
        return (self.value >> i) & 1

    @property
    def byte_len(self) -> int:
        return (self.n + 7) // 8


@dataclass(frozen=True)
class HashSeed:
    """One member (c, d) of the hash family over Z_{2^alpha}; c must be odd."""

    c: BigNat
    d: BigNat
    alpha: int

    def __post_init__(self) -> None:
        if self.alpha < 1:
            raise ValueError(f"alpha must be >= 1, got {self.alpha}")
        if not 1 <= self.c.value < (1 << self.alpha):
            raise ValueError("c out of range [1, 2^alpha)")
        if self.c.value % 2 == 0:
            raise ValueError("c must be odd")
        if not 0 <= self.d.value < (1 << self.alpha):
            raise ValueError("d out of range [0, 2^alpha)")


@dataclass(frozen=True)
class PAParams:
    """Block geometry plus the security budget for one round.

    ``epsilon`` and ``h_min`` may be None for unenforced (benchmark-style)
    runs; enforcement then has nothing to check against and must be
    disabled explicitly.
    """

    n: int
    r: int
    epsilon: float | None = None
    h_min: float | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"block length must be >= 1, got {self.n}")
        if not 1 <= self.r <= self.n:
            raise ValueError(f"output length r={self.r} must satisfy 1 <= r <= n={self.n}")
        if self.epsilon is not None and not 0 < self.epsilon < 1:
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if self.h_min is not None and self.h_min < 0:
            raise ValueError(f"h_min must be nonnegative, got {self.h_min}")


def import_block(raw: bytes, n: int,
                 order: WordOrder = WordOrder.LEAST_SIGNIFICANT_FIRST) -> BitBlock:
    """Deserialize an n-bit block from raw bytes.

    ``raw`` must carry at least n bits; any bits beyond n must be zero.
    """
    if n < 1:
        raise ValueError(f"block length must be >= 1, got {n}")
    if len(raw) * 8 < n:
        raise ValueError(f"input truncated: {len(raw) * 8} bits < n={n}")
    endian = "little" if order is WordOrder.LEAST_SIGNIFICANT_FIRST else "big"
    value = int.from_bytes(raw, endian)
    if value >> n:
        raise ValueError(f"nonzero bits beyond position {n} in input block")
    return BitBlock(value=value, n=n)


def export_block(block: BitBlock,
                 order: WordOrder = WordOrder.LEAST_SIGNIFICANT_FIRST) -> bytes:
    """Serialize to ceil(n/8) bytes; inverse of :func:`import_block`."""
    endian = "little" if order is WordOrder.LEAST_SIGNIFICANT_FIRST else "big"
    return block.value.to_bytes(block.byte_len, endian)


SeedMaterial = Union[int, bytes]


def _expand(rng_seed: SeedMaterial, label: bytes, n_bits: int) -> int:
    # Deterministic expansion of shared seed material into n_bits via an
    # extendable-output hash; both parties reproduce it exactly.
    if isinstance(rng_seed, int):
        if rng_seed < 0:
            raise ValueError("integer seed material must be nonnegative")
        width = max(1, (rng_seed.bit_length() + 7) // 8)
        material = rng_seed.to_bytes(width, "little")
    else:
        material = bytes(rng_seed)
    xof = hashlib.shake_256()
    xof.update(len(label).to_bytes(2, "little") + label)
    xof.update(len(material).to_bytes(4, "little") + material)
    nbytes = (n_bits + 7) // 8
    v = int.from_bytes(xof.digest(nbytes), "little")
    return v & ((1 << n_bits) - 1)


def gen_seed(alpha: int, rng_seed: SeedMaterial) -> HashSeed:
    """Derive a hash-family member from shared seed material.

    c is uniform over the odd residues of Z_{2^alpha} (low bit forced to
    1), d uniform over Z_{2^alpha}; the derivation is deterministic, so two
    parties holding the same material obtain the same member.
    """
    if alpha < 1:
        raise ValueError(f"alpha must be >= 1, got {alpha}")
    c = _expand(rng_seed, b"multiplier", alpha) | 1
    d = _expand(rng_seed, b"offset", alpha)
    return HashSeed(c=BigNat(c), d=BigNat(d), alpha=alpha)


def derive_block_seed(master: SeedMaterial, index: int) -> bytes:
    """Per-block seed material for multi-block runs; stable given (master, index)."""
    return _expand(master, b"block-%d" % index, 256).to_bytes(32, "little")


def compress(x: BitBlock, seed: HashSeed, r: int,
             alg: MulAlgorithm = MulAlgorithm.AUTO,
             thresholds: ThresholdTable = DEFAULT_THRESHOLDS) -> BitBlock:
    """Hash an alpha-bit block down to its r most significant digest bits.

    Computes floor(((c*x + d) mod 2^alpha) / 2^(alpha - r)) through the
    multiply-add, power-of-two reduction, and right-shift primitives, in
    that order.  The output has exactly r bits (leading zeros preserved).
    """
    if x.n != seed.alpha:
        raise ValueError(f"block length {x.n} does not match seed alpha {seed.alpha}")
    if not 1 <= r <= seed.alpha:
        raise ValueError(f"output length r={r} must satisfy 1 <= r <= alpha={seed.alpha}")
    t = fused_mul_add(seed.d, seed.c, BigNat(x.value), alg, thresholds)
    y = shift_right(mod_pow2(t, seed.alpha), seed.alpha - r)
    return BitBlock(value=y.value, n=r)


def pa_round(x: BitBlock, params: PAParams, seed: HashSeed, *,
             enforce: bool = True,
             alg: MulAlgorithm = MulAlgorithm.AUTO,
             thresholds: ThresholdTable = DEFAULT_THRESHOLDS) -> BitBlock:
    """One full privacy-amplification round with key-length enforcement.

    With enforcement on (the default), the requested output length is
    checked against the security budget first and a
    :class:`SecurityBoundError` carrying the maximum permissible length is
    raised on violation.  Pass ``enforce=False`` for benchmark or
    calibration runs without a budget.
    """
    if x.n != params.n:
        raise ValueError(f"block length {x.n} does not match params.n={params.n}")
    if seed.alpha != params.n:
        raise ValueError(f"seed alpha {seed.alpha} does not match params.n={params.n}")
    if enforce:
        if params.epsilon is None or params.h_min is None:
            raise ValueError(
                "enforcement needs both epsilon and h_min; pass enforce=False "
                "to run without a security budget")
        check = security.validate(params)
        if not check.ok:
            raise SecurityBoundError(params.r, check.r_max)
    return compress(x, seed, params.r, alg, thresholds)
