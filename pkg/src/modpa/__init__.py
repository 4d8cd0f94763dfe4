"""Privacy amplification by modular-arithmetic universal hashing.

The pieces: an arbitrary-precision multiplication stack (`bignum`, `ntt`),
the hash pipeline itself (`pa`), finite-key security arithmetic
(`security`), a brute-force collision auditor (`universality`), and the
benchmark/batch machinery behind the `modpa` command (`bench`, `report`,
`cli`).
"""

from .bignum import (
    BigNat,
    MulAlgorithm,
    ThresholdTable,
    DEFAULT_THRESHOLDS,
    WordOrder,
    from_words,
    to_words,
    mul,
    fused_mul_add,
    mod_pow2,
    shift_right,
    select_algorithm,
)
from .ntt import SSAPlan, plan, split, forward_ntt, inverse_ntt, pointwise_mul, combine_and_carry, ssa_multiply
from .pa import (
    BitBlock,
    HashSeed,
    PAParams,
    SecurityBoundError,
    import_block,
    export_block,
    gen_seed,
    compress,
    pa_round,
)
from .security import (
    Probability,
    SecurityBudget,
    ValidationResult,
    leftover_bound,
    max_key_length,
    validate,
)
from .universality import CollisionReport, AuditResourceError, delta, audit_family
from .bench import BenchRecord, RunConfig, DEFAULT_SIZE_LADDER, run_bench, run_pa, run_audit

__version__ = "0.1.0"

__all__ = [
    "BigNat", "MulAlgorithm", "ThresholdTable", "DEFAULT_THRESHOLDS", "WordOrder",
    "from_words", "to_words", "mul", "fused_mul_add", "mod_pow2", "shift_right",
    "select_algorithm",
    "SSAPlan", "plan", "split", "forward_ntt", "inverse_ntt", "pointwise_mul",
    "combine_and_carry", "ssa_multiply",
    "BitBlock", "HashSeed", "PAParams", "SecurityBoundError",
    "import_block", "export_block", "gen_seed", "compress", "pa_round",
    "Probability", "SecurityBudget", "ValidationResult",
    "leftover_bound", "max_key_length", "validate",
    "CollisionReport", "AuditResourceError", "delta", "audit_family",
    "BenchRecord", "RunConfig", "DEFAULT_SIZE_LADDER",
    "run_bench", "run_pa", "run_audit",
    "__version__",
]
