import random
import statistics
import time

import pytest
from hypothesis import given, settings, strategies as st

from modpa.bignum import (
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

LSF = WordOrder.LEAST_SIGNIFICANT_FIRST
MSF = WordOrder.MOST_SIGNIFICANT_FIRST

CONCRETE = (MulAlgorithm.SCHOOLBOOK, MulAlgorithm.KARATSUBA,
            MulAlgorithm.TOOM3, MulAlgorithm.SSA)


class TestBigNat:
    def test_zero_is_canonical(self):
        z = BigNat(0)
        assert z.bit_len == 0
        assert z.limbs == ()

    def test_bit_len_tracks_highest_set_bit(self):
        assert BigNat(1).bit_len == 1
        assert BigNat(0b1011).bit_len == 4
        assert BigNat(1 << 200).bit_len == 201

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            BigNat(-1)

    def test_limbs_have_no_trailing_zeros(self):
        rng = random.Random(11)
        for _ in range(200):
            x = BigNat(rng.getrandbits(rng.randrange(1, 400)))
            if x.limbs:
                assert x.limbs[-1] != 0


class TestWords:
    def test_empty_is_zero(self):
        assert from_words([], LSF).value == 0
        assert from_words([], MSF).value == 0

    def test_single_word_identity(self):
        assert from_words([0x01], LSF).value == 1

    def test_msf_positional(self):
        assert from_words([0x01, 0x00], MSF).value == 1 << 64

    def test_to_words_zero_is_empty(self):
        assert to_words(BigNat(0), LSF) == ()

    def test_to_words_positional(self):
        assert to_words(BigNat(1 << 64), LSF) == (0x00, 0x01)

    def test_word_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            from_words([1 << 64], LSF)

    @pytest.mark.parametrize("order", [LSF, MSF])
    def test_round_trip_1000_random(self, order):
        rng = random.Random(4096)
        for _ in range(1000):
            x = BigNat(rng.getrandbits(rng.randrange(0, 4097)))
            assert from_words(to_words(x, order), order) == x

    @given(st.integers(min_value=0, max_value=(1 << 512) - 1),
           st.sampled_from([LSF, MSF]),
           st.sampled_from([8, 16, 32, 64]))
    def test_round_trip_any_word_size(self, v, order, wb):
        x = BigNat(v)
        assert from_words(to_words(x, order, wb), order, wb) == x


class TestMul:
    def test_annihilator(self):
        for alg in CONCRETE + (MulAlgorithm.AUTO,):
            assert mul(0, 12345, alg).value == 0
            assert mul(12345, 0, alg).value == 0

    def test_identity(self):
        for alg in CONCRETE + (MulAlgorithm.AUTO,):
            assert mul(1, 98765, alg).value == 98765

    def test_word_square(self):
        w = (1 << 64) - 1
        want = (1 << 128) - (1 << 65) + 1
        for alg in CONCRETE:
            assert mul(w, w, alg).value == want

    def test_ssa_matches_schoolbook_10k_bits(self):
        rng = random.Random(99)
        a = rng.getrandbits(10_000)
        b = rng.getrandbits(10_000)
        assert mul(a, b, MulAlgorithm.SSA) == mul(a, b, MulAlgorithm.SCHOOLBOOK)

    def test_all_algorithms_agree_small_sizes(self):
        # >= 1000 random pairs up to 2^16 bits, all four concrete routes identical
        rng = random.Random(2024)
        for _ in range(1000):
            bits = 1 << rng.randrange(1, 17)
            a = rng.getrandbits(rng.randrange(1, bits + 1))
            b = rng.getrandbits(rng.randrange(1, bits + 1))
            products = {alg: mul(a, b, alg).value for alg in CONCRETE}
            assert len(set(products.values())) == 1, products
            assert products[MulAlgorithm.SCHOOLBOOK] == a * b

    def test_commutative(self):
        rng = random.Random(5)
        for _ in range(50):
            a = rng.getrandbits(rng.randrange(1, 3000))
            b = rng.getrandbits(rng.randrange(1, 3000))
            for alg in CONCRETE:
                assert mul(a, b, alg) == mul(b, a, alg)

    def test_unbalanced_operands(self):
        rng = random.Random(6)
        for _ in range(60):
            a = rng.getrandbits(rng.randrange(1, 40_000))
            b = rng.getrandbits(rng.randrange(1, 130))
            for alg in CONCRETE:
                assert mul(a, b, alg).value == a * b

    @given(st.integers(min_value=0, max_value=(1 << 2048) - 1),
           st.integers(min_value=0, max_value=(1 << 2048) - 1),
           st.sampled_from(CONCRETE))
    @settings(max_examples=120, deadline=None)
    def test_matches_reference_product(self, a, b, alg):
        assert mul(a, b, alg).value == a * b

    def test_canonical_outputs(self):
        rng = random.Random(7)
        for _ in range(100):
            a = rng.getrandbits(rng.randrange(1, 5000))
            b = rng.getrandbits(rng.randrange(1, 5000))
            got = mul(a, b)
            if got.limbs:
                assert got.limbs[-1] != 0


class TestFusedMulAdd:
    def test_zero_multiplicand(self):
        assert fused_mul_add(777, 555, 0).value == 777

    def test_zero_accumulator(self):
        rng = random.Random(8)
        c, x = rng.getrandbits(500), rng.getrandbits(500)
        assert fused_mul_add(0, c, x).value == mul(c, x).value

    def test_small_case(self):
        assert fused_mul_add(1, 3, 5).value == 16

    @given(st.integers(min_value=0, max_value=1 << 600),
           st.integers(min_value=0, max_value=1 << 600),
           st.integers(min_value=0, max_value=1 << 600))
    @settings(max_examples=80, deadline=None)
    def test_matches_add_mul(self, acc, c, x):
        assert fused_mul_add(acc, c, x).value == acc + c * x


class TestPow2Ops:
    def test_mod_pow2_zero_bits(self):
        assert mod_pow2(0xDEADBEEF, 0).value == 0

    def test_mod_pow2_truncates(self):
        assert mod_pow2(0b1011, 2).value == 0b11

    def test_mod_pow2_identity_when_small(self):
        assert mod_pow2(0b101, 8).value == 0b101

    def test_shift_right_identity(self):
        assert shift_right(0xABC, 0).value == 0xABC

    def test_shift_right_drops_low_bits(self):
        assert shift_right(0b1011, 2).value == 0b10

    @given(st.integers(min_value=0, max_value=1 << 1024),
           st.integers(min_value=0, max_value=1100))
    def test_split_reconstructs(self, x, k):
        assert shift_right(x, k).value * (1 << k) + mod_pow2(x, k).value == x


class TestSelectAlgorithm:
    def test_bands(self):
        t = DEFAULT_THRESHOLDS
        assert select_algorithm(64, 64, t) is MulAlgorithm.SCHOOLBOOK
        assert select_algorithm(t.schoolbook_max_limbs * 64 + 1, 1, t) \
            is MulAlgorithm.KARATSUBA
        assert select_algorithm(t.karatsuba_max_limbs * 64 + 1, 1, t) \
            is MulAlgorithm.TOOM3
        assert select_algorithm(t.toom3_max_limbs * 64 + 1, 1, t) \
            is MulAlgorithm.SSA

    def test_boundary_falls_to_lower_band(self):
        t = DEFAULT_THRESHOLDS
        assert select_algorithm(t.schoolbook_max_limbs * 64, 1, t) \
            is MulAlgorithm.SCHOOLBOOK
        assert select_algorithm(t.karatsuba_max_limbs * 64, 1, t) \
            is MulAlgorithm.KARATSUBA
        assert select_algorithm(t.toom3_max_limbs * 64, 1, t) \
            is MulAlgorithm.TOOM3

    def test_dispatches_on_larger_operand(self):
        t = DEFAULT_THRESHOLDS
        big = t.toom3_max_limbs * 64 + 1
        assert select_algorithm(1, big, t) is MulAlgorithm.SSA
        assert select_algorithm(big, 1, t) is MulAlgorithm.SSA

    def test_never_returns_auto(self):
        rng = random.Random(9)
        for _ in range(200):
            got = select_algorithm(rng.randrange(0, 10**8), rng.randrange(0, 10**8))
            assert got is not MulAlgorithm.AUTO

    def test_custom_thresholds(self):
        t = ThresholdTable(1, 2, 3)
        assert select_algorithm(64, 64, t) is MulAlgorithm.SCHOOLBOOK
        assert select_algorithm(65, 64, t) is MulAlgorithm.KARATSUBA
        assert select_algorithm(129, 1, t) is MulAlgorithm.TOOM3
        assert select_algorithm(193, 1, t) is MulAlgorithm.SSA

    def test_threshold_table_validates_ordering(self):
        with pytest.raises(ValueError):
            ThresholdTable(10, 10, 20)
        with pytest.raises(ValueError):
            ThresholdTable(30, 20, 40)


class TestScaling:
    def test_doubling_ratio_stays_subcubic(self):
        # Under auto dispatch the median time ratio per size doubling over
        # 2^16..2^22 bits must stay at or below 3.
        rng = random.Random(31337)
        medians = []
        for e in range(16, 23):
            a = rng.getrandbits(1 << e)
            b = rng.getrandbits(1 << e)
            times = []
            for _ in range(3):
                t0 = time.perf_counter()
                mul(a, b)
                times.append(time.perf_counter() - t0)
            medians.append(statistics.median(times))
        ratios = [medians[i + 1] / medians[i] for i in range(len(medians) - 1)]
        assert statistics.median(ratios) <= 3.0, ratios
