"""Tests for the seeded instance generators."""

import math
import random

import oracles
from blocksens import block_sensitivity_at, sensitivity_report
from blocksens.dnf import check_compact_form, stats, to_truth_table
from blocksens.randgen import (
    random_block_dnf,
    random_compact_dnf,
    random_mixing_dnf,
    random_monotone_tt,
    random_nonconstant_tt,
    random_subcube_function,
    random_tblock_dnf,
    random_truth_table,
)


def terms_of(d):
    return [(t.pos, t.neg) for t in d.terms]


class TestTruthTableGenerators:
    def test_range_and_determinism(self):
        a = random_truth_table(random.Random(1), 5)
        b = random_truth_table(random.Random(1), 5)
        assert a == b
        assert 0 <= a.bits < 1 << 32

    def test_nonconstant(self):
        rng = random.Random(2)
        for _ in range(20):
            t = random_nonconstant_tt(rng, rng.randint(1, 6))
            assert t.has_zeros and t.has_ones

    def test_monotone_closure(self):
        rng = random.Random(3)
        for _ in range(20):
            t = random_monotone_tt(rng, rng.randint(1, 6))
            assert oracles.naive_is_monotone(t.bits, t.arity)


class TestBlockGenerator:
    def test_block_property_and_compact_form(self):
        rng = random.Random(4)
        for _ in range(40):
            arity = rng.randint(2, 9)
            d = random_block_dnf(rng, arity)
            st = stats(d)
            assert st.block and st.t_min == 1
            assert check_compact_form(d).all_ok

    def test_without_pruning_still_block(self):
        rng = random.Random(5)
        for _ in range(20):
            d = random_block_dnf(rng, rng.randint(2, 9), ensure_private=False)
            assert stats(d).block

    def test_deterministic(self):
        a = random_block_dnf(random.Random(6), 8)
        b = random_block_dnf(random.Random(6), 8)
        assert terms_of(a) == terms_of(b)


class TestTblockGenerator:
    def test_multiplicity_cap(self):
        rng = random.Random(7)
        for _ in range(40):
            t = rng.randint(1, 3)
            d = random_tblock_dnf(rng, rng.randint(3, 10), t)
            assert stats(d).t_min <= t
            assert all(term.pos for term in d.terms)

    def test_max_width_respected(self):
        rng = random.Random(8)
        for _ in range(20):
            d = random_tblock_dnf(rng, 9, 2, max_width=2, neg_density=0.0)
            assert d.width <= 2
            assert all(not term.neg for term in d.terms)


class TestCompactGenerator:
    def test_all_conditions_hold(self):
        rng = random.Random(9)
        for _ in range(30):
            d = random_compact_dnf(rng, rng.randint(2, 8))
            rep = check_compact_form(d)
            assert rep.cond_a and rep.cond_b and rep.cond_c

    def test_zero_side_peak_at_origin(self):
        rng = random.Random(10)
        for _ in range(20):
            d = random_compact_dnf(rng, rng.randint(2, 7))
            f = to_truth_table(d)
            bs_here, _ = block_sensitivity_at(f, 0)
            peak = max(
                oracles.naive_bs_at(f.bits, d.arity, x)
                for x in range(f.rows) if not f.value_at(x)
            )
            assert bs_here == peak


class TestMixingGenerator:
    def test_normalized_and_mixing(self):
        rng = random.Random(11)
        for _ in range(15):
            d = random_mixing_dnf(rng, rng.randint(4, 9))
            st = stats(d)
            assert st.block and st.transitive
            assert st.mixing_max >= 2
            assert check_compact_form(d).normalized


class TestSubcubeGenerator:
    def test_low_zero_side_sensitivity(self):
        rng = random.Random(12)
        for _ in range(25):
            f = random_subcube_function(rng, rng.randint(3, 8))
            rep = sensitivity_report(f)
            assert rep.s0 == 1
            assert not f.value_at(0)

    def test_peak_moved_to_origin(self):
        rng = random.Random(13)
        for _ in range(15):
            f = random_subcube_function(rng, rng.randint(3, 7))
            bs_here, _ = block_sensitivity_at(f, 0)
            peak = max(
                oracles.naive_bs_at(f.bits, f.arity, x)
                for x in range(f.rows) if not f.value_at(x)
            )
            assert bs_here == peak
