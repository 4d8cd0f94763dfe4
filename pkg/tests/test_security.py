import math
from types import SimpleNamespace

import pytest

from modpa.pa import PAParams
from modpa.security import (
    Probability,
    SecurityBudget,
    ValidationResult,
    leftover_bound,
    max_key_length,
    validate,
)


class TestProbability:
    def test_from_linear_round_trip(self):
        p = Probability.from_linear(0.25)
        assert p.log2 == -2.0
        assert p.linear == 0.25

    def test_zero(self):
        p = Probability.from_linear(0.0)
        assert p.log2 == -math.inf
        assert p.linear == 0.0

    def test_rejects_above_one(self):
        with pytest.raises(ValueError):
            Probability(0.5)
        with pytest.raises(ValueError):
            Probability.from_linear(1.5)

    def test_ordering(self):
        assert Probability(-50) < Probability(-10)


class TestLeftoverBound:
    def test_gap_80_no_smoothing_is_exactly_2_to_minus_41(self):
        got = leftover_bound(h_min=80, r=0, epsilon=0)
        assert got.log2 == -41.0

    def test_zero_gap_is_one_half(self):
        got = leftover_bound(h_min=1000, r=1000, epsilon=0)
        assert got.log2 == -1.0
        assert got.linear == 0.5

    def test_negligible_hash_term_leaves_epsilon(self):
        # gap 200 bits: the 2^-101 term is invisible next to 1e-10
        got = leftover_bound(h_min=200, r=0, epsilon=1e-10)
        assert got.log2 == math.log2(1e-10)

    def test_epsilon_dominates_bound_from_below(self):
        rng_points = [(100, 10, 1e-6), (5000, 4000, 2**-30), (50, 50, 0.25)]
        for h, r, eps in rng_points:
            assert leftover_bound(h, r, eps).log2 >= math.log2(eps)

    def test_r_above_h_min_reported_not_refused(self):
        got = leftover_bound(h_min=10, r=50, epsilon=0)
        assert got.log2 == 0.0  # capped at probability 1

    def test_survives_huge_exponents(self):
        got = leftover_bound(h_min=1e9, r=0, epsilon=0)
        assert got.log2 == -(1e9 / 2) - 1
        assert got.linear == 0.0  # float underflow, log2 still exact

    def test_monotone_nonincreasing_in_h_min(self):
        grid = [0, 10, 100, 1000, 10000]
        vals = [leftover_bound(h, 5, 1e-12).log2 for h in grid]
        assert all(a >= b for a, b in zip(vals, vals[1:]))

    def test_monotone_nondecreasing_in_r(self):
        grid = [0, 10, 100, 500, 999]
        vals = [leftover_bound(1000, r, 1e-12).log2 for r in grid]
        assert all(a <= b for a, b in zip(vals, vals[1:]))

    def test_monotone_nondecreasing_in_epsilon(self):
        grid = [0.0, 1e-30, 1e-12, 1e-3, 0.5]
        vals = [leftover_bound(1000, 100, e).log2 for e in grid]
        assert all(a <= b for a, b in zip(vals, vals[1:]))

    def test_accepts_probability_epsilon(self):
        # an epsilon far below float range still contributes
        eps = Probability(-2000.0)
        got = leftover_bound(h_min=10000, r=0, epsilon=eps)
        assert got.log2 == -2000.0


class TestMaxKeyLength:
    def test_reference_values(self):
        assert max_key_length(1000, 2**-40) == 920

    def test_floors_at_zero(self):
        assert max_key_length(50, 2**-40) == 0
        assert max_key_length(0, 0.5) == 0

    def test_degenerate_epsilon_one(self):
        assert max_key_length(1234.7, 1) == 1234

    def test_fractional_h_min(self):
        assert max_key_length(100.9, 0.5) == math.floor(100.9 - 2.0)

    def test_monotone_in_h_min(self):
        vals = [max_key_length(h, 1e-10) for h in (0, 10, 100, 1000)]
        assert vals == sorted(vals)


class TestValidate:
    def test_reference_budget_ok(self):
        params = PAParams(n=10**6, r=920, epsilon=2**-40, h_min=1000.0)
        assert validate(params) == ValidationResult(ok=True, r_max=920)

    def test_one_bit_over_is_violation(self):
        params = PAParams(n=10**6, r=921, epsilon=2**-40, h_min=1000.0)
        got = validate(params)
        assert not got.ok
        assert got.r_max == 920

    def test_zero_length_key_always_ok(self):
        # r=0 sits below PAParams's floor; validate itself is duck-typed
        got = validate(SimpleNamespace(r=0, epsilon=2**-40, h_min=1.0))
        assert got.ok

    def test_needs_budget(self):
        with pytest.raises(ValueError):
            validate(SimpleNamespace(r=10, epsilon=None, h_min=None))


class TestSecurityBudget:
    def test_evaluate_ties_fields_together(self):
        b = SecurityBudget.evaluate(h_min=1000, epsilon=2**-40, r=920)
        assert b.eps_bar.log2 == pytest.approx(
            leftover_bound(1000, 920, 2**-40).log2)
        assert b.eps_bar.log2 >= -40.0  # never below the smoothing term

    def test_bound_at_max_length_stays_under_ceiling(self):
        # hashing the full permissible length must keep the distinguishing
        # bound within a couple of bits of the failure parameter itself
        for h_min, eps in [(1000.0, 2**-40), (5e5, 1e-10), (1e8, 2**-100)]:
            r_max = max_key_length(h_min, eps)
            got = leftover_bound(h_min, r_max, eps)
            assert got.log2 <= math.log2(eps) + 1.0
            assert got.log2 >= math.log2(eps)
