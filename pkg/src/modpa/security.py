"""Finite-key security arithmetic for privacy amplification.

The two quantities of interest are the leftover-hash distinguishing bound

    eps_bar = (1/2) * 2^(-(h_min - r)/2) + epsilon

and the maximum extractable key length

    r_max = floor(h_min - 2*log2(1/epsilon)).

h_min is the caller's smooth min-entropy estimate in bits; estimating it
from channel parameters is someone else's job, and for the key-length bound
the caller must already supply the estimate at the half-failure smoothing
(no conversion between smoothing parameters happens here).  Exponents reach
magnitudes like (h_min - r)/2 at h_min ~ 1e8, far beyond double range, so
probabilities are carried in the log2 domain and never silently underflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Protocol, Union


@dataclass(frozen=True, order=True)
class Probability:
    """A probability held as its base-2 logarithm (-inf for exactly zero)."""

    log2: float

    def __post_init__(self) -> None:
        if math.isnan(self.log2):
            raise ValueError("log2 must not be NaN")
        if self.log2 > 0:
            raise ValueError(f"probability above 1 (log2 = {self.log2})")

    @classmethod
    def from_linear(cls, p: float) -> "Probability":
        if not 0 <= p <= 1:
            raise ValueError(f"probability must lie in [0, 1], got {p}")
        return cls(math.log2(p) if p > 0 else -math.inf)

    @property
    def linear(self) -> float:
        """Plain float value; underflows to 0.0 below about 2^-1074."""
        return 2.0 ** self.log2 if self.log2 > -math.inf else 0.0

    def __repr__(self) -> str:
        if self.log2 == -math.inf:
            return "Probability(0)"
        return f"Probability(2^{self.log2:g})"


ProbabilityLike = Union[Probability, float, int]


def _as_log2(p: ProbabilityLike) -> float:
    if isinstance(p, Probability):
        return p.log2
    if not 0 <= p <= 1:
        raise ValueError(f"probability must lie in [0, 1], got {p}")
    return math.log2(p) if p > 0 else -math.inf


def _log2_add(a: float, b: float) -> float:
    # log2(2^a + 2^b), stable for widely separated exponents.
    if a < b:
        a, b = b, a
    if b == -math.inf:
        return a
    d = b - a
    if d < -1060:  # 2^d underflows; the smaller term is invisible even in log2 ulps
        return a
    return a + math.log1p(2.0 ** d) / math.log(2.0)


def leftover_bound(h_min: float, r: float, epsilon: ProbabilityLike = 0.0) -> Probability:
    """Distinguishing-advantage bound for an r-bit key hashed from h_min bits.

    eps_bar = (1/2) * 2^(-(h_min - r)/2) + epsilon.  r > h_min is allowed;
    the bound then exceeds 1/2 + epsilon and is reported as-is (capped at 1).
    """
    if h_min < 0:
        raise ValueError(f"h_min must be nonnegative, got {h_min}")
    if r < 0:
        raise ValueError(f"r must be nonnegative, got {r}")
    eps_log2 = _as_log2(epsilon)
    term_log2 = -1.0 - (h_min - r) / 2.0
    total = _log2_add(term_log2, eps_log2)
    return Probability(min(total, 0.0))


def max_key_length(h_min: float, epsilon: ProbabilityLike) -> int:
    """Largest key length the budget allows: floor(h_min - 2*log2(1/epsilon)), at least 0.

    epsilon = 1 is accepted as the degenerate boundary (the penalty term
    vanishes and the answer is floor(h_min)).
    """
    if h_min < 0:
        raise ValueError(f"h_min must be nonnegative, got {h_min}")
    eps_log2 = _as_log2(epsilon)
    if eps_log2 == -math.inf:
        return 0
    r = math.floor(h_min + 2.0 * eps_log2)
    return max(0, r)


class _BudgetParams(Protocol):
    r: int
    epsilon: float | None
    h_min: float | None


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    r_max: int


def validate(params: _BudgetParams) -> ValidationResult:
    """Check a proposed output length against its budget; violation is a value, not an error."""
    if params.epsilon is None or params.h_min is None:
        raise ValueError("validation needs both epsilon and h_min")
    r_max = max_key_length(params.h_min, params.epsilon)
    return ValidationResult(ok=params.r <= r_max, r_max=r_max)


@dataclass(frozen=True)
class SecurityBudget:
    """A fully evaluated budget: inputs plus the resulting distinguishing bound."""

    h_min: float
    epsilon: float
    r: int
    eps_bar: Probability

    @classmethod
    def evaluate(cls, h_min: float, epsilon: float, r: int) -> "SecurityBudget":
        return cls(h_min=h_min, epsilon=epsilon, r=r,
                   eps_bar=leftover_bound(h_min, r, epsilon))
