"""Tests for the gap families and the disjoint-OR composition rules."""

import random

import pytest

import oracles
from blocksens import (
    CapacityError,
    DegenerateFunctionError,
    TruthTable,
    block_sensitivity_report,
    sensitivity_report,
)
from blocksens.dnf import Dnf, Term, check_compact_form, stats, to_truth_table
from blocksens.families import (
    EXPANSION_CAP,
    FamilyInstance,
    ambainis_sun,
    disjoint_or_compose,
    explicit_or_expand,
    onesbound_tight,
    proposition_pair,
    rubinstein,
    virza,
)
from blocksens.witness import witness_onesbound, zero_witness_block


def compose_table(g, m):
    """Truth table of the OR of m variable-disjoint copies of g."""
    n = g.arity
    slot = (1 << n) - 1
    bits = 0
    for x in range(1 << (m * n)):
        if any(g.value_at((x >> (i * n)) & slot) for i in range(m)):
            bits |= 1 << x
    return TruthTable(m * n, bits)


class TestCompose:
    def test_identity_at_one_copy(self):
        rep = block_sensitivity_report(TruthTable(2, 0b1000))
        assert disjoint_or_compose(rep, 1) is rep

    def test_and3_twice(self):
        g = TruthTable(3, 1 << 7)
        pred = disjoint_or_compose(block_sensitivity_report(g), 2)
        assert (pred.arity, pred.s0, pred.s1) == (6, 2, 3)
        assert (pred.bs0, pred.bs1) == (2, 3)
        assert pred.bs == 3  # the one-side maximum wins here

    def test_matches_brute_force(self):
        # measure values compose for any inner function; witness rows are
        # exact whenever the inner function is 0 at the all-zeros input
        rng = random.Random(420)
        checked = zero_at_origin = 0
        while checked < 40 or zero_at_origin < 15:
            arity = rng.randint(1, 3)
            g = TruthTable(arity, rng.randrange(1 << (1 << arity)))
            if not g.has_zeros:
                continue
            m = rng.randint(2, 3)
            pred = disjoint_or_compose(block_sensitivity_report(g), m)
            real = block_sensitivity_report(compose_table(g, m))
            fields = ["arity", "s0", "s1", "bs0", "bs1", "witness_s0",
                      "witness_bs0"]
            if not g.value_at(0):
                fields += ["witness_s1", "witness_bs1"]
                zero_at_origin += 1
            for field in fields:
                assert getattr(pred, field) == getattr(real, field), field
            checked += 1

    def test_predicted_blocks_flip(self):
        g = TruthTable(2, 0b0110)  # parity
        m = 3
        pred = disjoint_or_compose(block_sensitivity_report(g), m)
        f = compose_table(g, m)
        w = pred.witness_bs0
        assert not f.value_at(w)
        for b in pred.blocks_bs0:
            mask = 0
            for v in b:
                mask |= 1 << (v - 1)
            assert f.value_at(w ^ mask)

    def test_refuses_constant_one(self):
        rep = block_sensitivity_report(TruthTable(2, 0b1111))
        with pytest.raises(DegenerateFunctionError):
            disjoint_or_compose(rep, 2)

    def test_rejects_bad_copy_count(self):
        rep = block_sensitivity_report(TruthTable(1, 0b10))
        with pytest.raises(ValueError):
            disjoint_or_compose(rep, 0)


class TestRubinstein:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_closed_form(self, n):
        inst = rubinstein(n)
        assert inst.name == "rubinstein"
        assert inst.copies == 2 * n
        assert inst.g_dnf.arity == 2 * n
        assert inst.g_dnf.size == n
        assert inst.predicted.s == 2 * n
        assert inst.predicted.bs == 2 * n * n

    def test_inner_measures(self):
        g = rubinstein(2).g_dnf
        rep = block_sensitivity_report(to_truth_table(g))
        assert (rep.s0, rep.s1, rep.bs0, rep.bs1) == (1, 4, 2, 4)
        st = stats(g)
        assert st.block and st.mixing_max == 4

    def test_predicted_witnesses(self):
        pred = rubinstein(2).predicted
        assert pred.witness_s0 == 0x1111  # every copy one step from its pair
        assert pred.witness_bs0 == 0
        assert pred.witness_s1 == 0b0011
        assert pred.witness_bs1 == 0b0011

    def test_expansion_cap(self):
        assert rubinstein(2).expanded_dnf is not None
        assert rubinstein(3).expanded_dnf is None  # 36 > 32 variables

    def test_bad_parameter(self):
        with pytest.raises(ValueError):
            rubinstein(0)


class TestVirza:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_closed_form(self, n):
        inst = virza(n)
        assert inst.copies == 2 * n + 1
        assert inst.g_dnf.arity == 2 * n + 1
        assert inst.g_dnf.size == n + 1
        assert inst.predicted.s == 2 * n + 1
        assert inst.predicted.bs == (2 * n + 1) * (n + 1)
        assert 2 * inst.predicted.bs == inst.predicted.s ** 2 + inst.predicted.s

    def test_inner_measures(self):
        g = virza(2).g_dnf
        rep = block_sensitivity_report(to_truth_table(g))
        assert (rep.s0, rep.s1, rep.bs0) == (1, 5, 3)
        assert stats(g).mixing_max == 3

    def test_block_property(self):
        for n in (1, 2, 3):
            assert stats(virza(n).g_dnf).block


class TestAmbainisSun:
    def test_first_instance_terms(self):
        g = ambainis_sun(1).g_dnf
        want = ((frozenset({3, 4}), frozenset({1, 2, 5})),
                (frozenset({5, 6}), frozenset({1, 3, 4})),
                (frozenset({1, 2}), frozenset({3, 5, 6})))
        assert tuple((t.pos, t.neg) for t in g.terms) == want

    @pytest.mark.parametrize("n", [1, 2])
    def test_closed_form(self, n):
        inst = ambainis_sun(n)
        s = 3 * n + 2
        assert inst.copies == s
        assert inst.g_dnf.arity == 4 * n + 2
        assert inst.g_dnf.size == 2 * n + 1
        assert inst.predicted.s == s
        assert 3 * inst.predicted.bs == 2 * s * s - s

    @pytest.mark.parametrize("n", [1, 2])
    def test_structure(self, n):
        st = stats(ambainis_sun(n).g_dnf)
        assert st.block and st.transitive and st.mixing_max == 3

    def test_inner_measures(self):
        g = ambainis_sun(1).g_dnf
        rep = block_sensitivity_report(to_truth_table(g))
        assert (rep.s0, rep.s1, rep.bs0) == (1, 5, 3)


class TestOnesboundTight:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_both_sides_match_half_width(self, n):
        d = onesbound_tight(n)
        assert d.arity == 2 * n + 1
        assert d.size == n + 1
        assert d.width == 2 * n + 1
        rep = sensitivity_report(to_truth_table(d))
        assert rep.s0 == rep.s1 == n + 1
        assert stats(d).block

    def test_witness_construction_is_tight(self):
        for n in (1, 2, 3):
            d = onesbound_tight(n)
            w = witness_onesbound(d)
            assert w.guaranteed_bound == n + 1
            assert w.measured == n + 1


class TestPropositionPair:
    @pytest.mark.parametrize("p,q", [(2, 2), (2, 3), (2, 4), (3, 3),
                                     (3, 4), (4, 4)])
    def test_measures_and_gap(self, p, q):
        f, g, a = proposition_pair(p, q)
        arity = p + q
        assert sensitivity_report(f).s == p
        assert sensitivity_report(g).s == q
        assert f.value_at(a) == 1 and g.value_at(a) == 0
        # the only disagreement sits at full distance from the ball center
        diffs = [x for x in range(1 << arity)
                 if f.value_at(x) != g.value_at(x)]
        assert diffs == [a]
        center = a ^ ((1 << arity) - 1)
        assert bin(a ^ center).count("1") == arity

    def test_special_input_layout(self):
        _, _, a = proposition_pair(2, 2)
        assert a == 0b0011  # variables 1 and 2, rendered "1100"
        _, _, a = proposition_pair(2, 3)
        assert a == 0b10011  # variables 1, 2, 5

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValueError):
            proposition_pair(1, 2)
        with pytest.raises(ValueError):
            proposition_pair(3, 2)


class TestExpand:
    def test_single_copy_is_inner(self):
        g = rubinstein(1).g_dnf
        assert explicit_or_expand(g, 1) is g

    def test_cap(self):
        g = ambainis_sun(1).g_dnf
        with pytest.raises(CapacityError):
            explicit_or_expand(g, 6)  # 36 > 32 variables

    def test_structure_inherited(self):
        inst = ambainis_sun(1)
        f = inst.expanded_dnf
        assert f is not None and f.arity == 30 and f.size == 15
        st = stats(f)
        assert st.block and st.transitive and st.mixing_max == 3

    def test_expanded_witnesses(self):
        f = ambainis_sun(1).expanded_dnf
        w0 = zero_witness_block(f)
        assert w0.measured >= 2  # ceil(15 / 9)
        w1 = witness_onesbound(f)
        assert w1.measured >= 3

    def test_expanded_rubinstein_table_report(self):
        inst = rubinstein(2)
        rep = block_sensitivity_report(to_truth_table(inst.expanded_dnf),
                                       bs_max=16)
        assert rep == inst.predicted

    def test_expanded_compact_form(self):
        inst = rubinstein(1)
        rep = check_compact_form(inst.expanded_dnf)
        assert rep.all_ok
