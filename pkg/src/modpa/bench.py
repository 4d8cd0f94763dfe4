"""Measurement protocol and batch drivers behind the command-line tool.

The benchmark times full privacy-amplification rounds (import through
export) over a ladder of block sizes, reporting the median of several
trials and the derived throughput in Mbps (input bits / median seconds /
1e6).  Inputs and seeds are derived deterministically from the run's RNG
seed, so everything except the timing figures reproduces bit-for-bit.
"""

from __future__ import annotations

import statistics
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import pa, security, universality
from .bignum import (
    BigNat,
    MulAlgorithm,
    ThresholdTable,
    DEFAULT_THRESHOLDS,
    WordOrder,
    mul,
    select_algorithm,
)

# Default block-size ladder, 1e6 through 1e8 bits.
DEFAULT_SIZE_LADDER = (
    1_000_000, 2_000_000, 4_000_000, 8_000_000, 10_000_000,
    16_000_000, 32_000_000, 64_000_000, 100_000_000,
)

TIMING_PIPELINE = "pipeline"
TIMING_MULTIPLY = "multiply"


@dataclass(frozen=True)
class BenchRecord:
    """One timing measurement at a single block size."""

    block_size: int
    algorithm: str
    trials: int
    elapsed_median: float  # seconds
    throughput_mbps: float


@dataclass(frozen=True)
class RunConfig:
    """Everything a subcommand needs; unused fields are simply ignored.

    At most one of ``out_bits`` / ``ratio`` may be set; commands that need
    an output length default to ratio 0.5 when neither is given.
    """

    sizes: tuple[int, ...] = DEFAULT_SIZE_LADDER
    out_bits: int | None = None
    ratio: float | None = None
    epsilon: float | None = None
    h_min: float | None = None
    rng_seed: int = 0
    in_path: str | None = None
    out_path: str | None = None
    report_format: str = "csv"
    alg: MulAlgorithm = MulAlgorithm.AUTO
    thresholds: ThresholdTable = DEFAULT_THRESHOLDS
    order: WordOrder = WordOrder.LEAST_SIGNIFICANT_FIRST
    trials: int = 5
    timing: str = TIMING_PIPELINE
    plot: bool = True
    # audit-only knobs
    alpha: int = 6
    beta: int = 3
    seed_sample: int | None = None

    def __post_init__(self) -> None:
        if self.out_bits is not None and self.ratio is not None:
            raise ValueError("give either an output bit count or a ratio, not both")
        if self.ratio is not None and not 0 < self.ratio <= 1:
            raise ValueError(f"ratio must lie in (0, 1], got {self.ratio}")
        if self.out_bits is not None and self.out_bits < 1:
            raise ValueError(f"output bit count must be >= 1, got {self.out_bits}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.timing not in (TIMING_PIPELINE, TIMING_MULTIPLY):
            raise ValueError(f"unknown timing scope {self.timing!r}")
        if self.report_format not in ("csv", "json"):
            raise ValueError(f"unknown report format {self.report_format!r}")
        if not self.sizes:
            raise ValueError("at least one block size is required")
        for n in self.sizes:
            if n < 1:
                raise ValueError(f"block sizes must be >= 1, got {n}")


def resolve_out_bits(cfg: RunConfig, n: int) -> int:
    """Output length for an n-bit block under this config (ratio default 0.5)."""
    if cfg.out_bits is not None:
        if cfg.out_bits > n:
            raise ValueError(f"out_bits={cfg.out_bits} exceeds block size {n}")
        return cfg.out_bits
    ratio = 0.5 if cfg.ratio is None else cfg.ratio
    return max(1, int(ratio * n))


def bench_input(cfg: RunConfig, n: int) -> pa.BitBlock:
    """Deterministic pseudorandom n-bit benchmark block for this config."""
    value = pa._expand(cfg.rng_seed, b"bench-input-%d" % n, n)
    return pa.BitBlock(value=value, n=n)


def _resolved_algorithm(cfg: RunConfig, n: int) -> str:
    alg = cfg.alg
    if alg is MulAlgorithm.AUTO:
        alg = select_algorithm(n, n, cfg.thresholds)
    return alg.value


def _timed_round(cfg: RunConfig, state: dict) -> float:
    if cfg.timing == TIMING_MULTIPLY:
        x = BigNat(state["block"].value)
        t0 = time.perf_counter()
        mul(state["seed"].c, x, cfg.alg, cfg.thresholds)
        return time.perf_counter() - t0
    # pipeline scope covers the whole round: byte import, hashing, byte export
    n = state["params"].n
    t0 = time.perf_counter()
    block = pa.import_block(state["raw"], n, cfg.order)
    out = pa.pa_round(block, state["params"], state["seed"],
                      enforce=state["enforce"], alg=cfg.alg,
                      thresholds=cfg.thresholds)
    pa.export_block(out, cfg.order)
    return time.perf_counter() - t0


def run_bench(cfg: RunConfig, *, quiet: bool = False) -> list[BenchRecord]:
    """Time rounds over the ladder; the median of ``trials`` rounds is reported.

    Timed rounds run strictly sequentially but visit the sizes round-robin,
    so slow drift of the host (frequency scaling, noisy neighbors) hits
    every size alike instead of biasing whichever was measured last.  Sizes
    whose working set does not fit in memory are skipped with a diagnostic
    rather than failing the whole run.
    """
    enforce = cfg.epsilon is not None and cfg.h_min is not None
    states: list[dict] = []
    for n in cfg.sizes:
        try:
            block = bench_input(cfg, n)
            states.append({
                "n": n,
                "block": block,
                "raw": pa.export_block(block, cfg.order),
                "seed": pa.gen_seed(n, pa.derive_block_seed(cfg.rng_seed, n)),
                "params": pa.PAParams(n=n, r=resolve_out_bits(cfg, n),
                                      epsilon=cfg.epsilon, h_min=cfg.h_min),
                "enforce": enforce,
                "elapsed": [],
            })
        except MemoryError:
            if not quiet:
                print(f"skipping block size {n}: not enough memory", file=sys.stderr)
    for _ in range(cfg.trials):
        for state in list(states):
            try:
                state["elapsed"].append(_timed_round(cfg, state))
            except MemoryError:
                if not quiet:
                    print(f"skipping block size {state['n']}: not enough memory",
                          file=sys.stderr)
                states.remove(state)
    return [
        BenchRecord(
            block_size=state["n"],
            algorithm=_resolved_algorithm(cfg, state["n"]),
            trials=cfg.trials,
            elapsed_median=statistics.median(state["elapsed"]),
            throughput_mbps=state["n"] / statistics.median(state["elapsed"]) / 1e6,
        )
        for state in states
    ]


def measure_ratio_spread(n: int, ratios: tuple[float, ...] = (0.125, 0.5, 0.9),
                         trials: int = 11, rng_seed: int = 0) -> dict[float, float]:
    """Best round time per compression ratio at one block size.

    The hashing cost has no dependence on the output length by
    construction; this measures it.  Trials interleave across the ratios,
    and the minimum is taken per ratio: scheduling noise is strictly
    additive, so the minimum estimates the true cost of each configuration
    (the same reasoning timeit uses).
    """
    cfg = RunConfig(sizes=(n,), rng_seed=rng_seed)
    raw = pa.export_block(bench_input(cfg, n), cfg.order)
    seed = pa.gen_seed(n, pa.derive_block_seed(rng_seed, n))
    per = {ratio: [] for ratio in ratios}
    for trial in range(trials + 1):
        for ratio in ratios:
            params = pa.PAParams(n=n, r=max(1, int(ratio * n)))
            t0 = time.perf_counter()
            block = pa.import_block(raw, n, cfg.order)
            out = pa.pa_round(block, params, seed, enforce=False)
            pa.export_block(out, cfg.order)
            if trial > 0:  # first interleaved pass is warmup
                per[ratio].append(time.perf_counter() - t0)
    return {ratio: min(v) for ratio, v in per.items()}


@dataclass(frozen=True)
class PaRunResult:
    """Outcome of a batch hashing run over a key file."""

    blocks: int
    n: int
    r: int
    budget: security.SecurityBudget | None
    out_path: str


def run_pa(cfg: RunConfig) -> PaRunResult:
    """Hash every complete n-bit block of the input file into r output bits each.

    The output file receives ceil(r/8) bytes per block, written only after
    every block has been processed, so a failed run leaves nothing behind.
    Each block gets its own seed derived from the shared RNG seed and the
    block index.
    """
    if len(cfg.sizes) != 1:
        raise ValueError("batch hashing needs exactly one block size")
    n = cfg.sizes[0]
    if n % 8 != 0:
        raise ValueError(f"block size must be a whole number of bytes, got {n} bits")
    if cfg.in_path is None or cfg.out_path is None:
        raise ValueError("batch hashing needs both an input and an output path")
    data = Path(cfg.in_path).read_bytes()
    block_bytes = n // 8
    nblocks = len(data) // block_bytes
    if nblocks == 0:
        raise ValueError(
            f"input holds {len(data) * 8} bits, shorter than one {n}-bit block")
    if len(data) % block_bytes:
        print(f"ignoring {len(data) % block_bytes} trailing bytes "
              f"(not a whole block)", file=sys.stderr)

    r = resolve_out_bits(cfg, n)
    enforce = cfg.epsilon is not None and cfg.h_min is not None
    params = pa.PAParams(n=n, r=r, epsilon=cfg.epsilon, h_min=cfg.h_min)
    budget = None
    if enforce:
        budget = security.SecurityBudget.evaluate(cfg.h_min, cfg.epsilon, r)

    out = bytearray()
    for i in range(nblocks):
        raw = data[i * block_bytes:(i + 1) * block_bytes]
        block = pa.import_block(raw, n, cfg.order)
        seed = pa.gen_seed(n, pa.derive_block_seed(cfg.rng_seed, i))
        hashed = pa.pa_round(block, params, seed, enforce=enforce,
                             alg=cfg.alg, thresholds=cfg.thresholds)
        out += pa.export_block(hashed, cfg.order)
    Path(cfg.out_path).write_bytes(bytes(out))
    return PaRunResult(blocks=nblocks, n=n, r=r, budget=budget,
                       out_path=cfg.out_path)


def run_audit(cfg: RunConfig) -> universality.CollisionReport:
    """Collision audit under this config (exhaustive unless seed_sample is set)."""
    return universality.audit_family(
        cfg.alpha, cfg.beta,
        seed_sample=cfg.seed_sample,
        rng_seed=cfg.rng_seed,
    )
