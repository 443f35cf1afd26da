import random

import pytest

import oracles
from blocksens import (
    BlockFamily,
    CapacityError,
    ParseError,
    TruthTable,
    block_sensitivity_at,
    block_sensitivity_report,
    bs_capped,
    depends_on_all,
    is_monotone,
    relevant_vars,
    restrict,
    sensitivity_at,
    sensitivity_report,
    xor_shift,
    xor_tt,
)

MAJ3 = TruthTable(3, 0xE8)
AND2 = TruthTable(2, 0b1000)
OR2 = TruthTable(2, 0b1110)


def xor_table(n):
    return TruthTable.from_values([bin(x).count("1") % 2 for x in range(1 << n)])


def test_constructor_validation():
    with pytest.raises(ValueError):
        TruthTable(0, 0)
    with pytest.raises(ValueError):
        TruthTable(25, 0)
    with pytest.raises(ValueError):
        TruthTable(2, 1 << 16)
    with pytest.raises(ValueError):
        TruthTable(2, -1)
    with pytest.raises(TypeError):
        TruthTable(2, True)
    with pytest.raises(TypeError):
        TruthTable("2", 0)


def test_basic_constructors():
    f = TruthTable.from_values([0, 0, 0, 1])
    assert f == AND2
    g = TruthTable.from_indices(2, [3])
    assert g == AND2
    assert TruthTable.constant(3, 1).bits == 0xFF
    assert TruthTable.constant(3, 0).bits == 0
    with pytest.raises(ValueError):
        TruthTable.from_values([0, 1, 0])
    with pytest.raises(ValueError):
        TruthTable.from_indices(2, [4])
    assert AND2.value_at(3) == 1
    assert AND2.value_at(1) == 0
    with pytest.raises(ValueError):
        AND2.value_at(4)


def test_known_measures():
    r = block_sensitivity_report(AND2)
    assert (r.s0, r.s1, r.bs0, r.bs1) == (1, 2, 1, 2)
    assert r.s == 2 and r.bs == 2
    assert r.witness_s1 == 3 and r.witness_bs1 == 3
    r = block_sensitivity_report(OR2)
    assert (r.s0, r.s1, r.bs0, r.bs1) == (2, 1, 2, 1)
    r = block_sensitivity_report(MAJ3)
    assert (r.s0, r.s1, r.bs0, r.bs1) == (2, 2, 2, 2)
    for n in (2, 4, 5):
        r = block_sensitivity_report(xor_table(n))
        assert r.s0 == r.s1 == r.bs0 == r.bs1 == n


def test_constant_reports():
    ones = TruthTable.constant(3, 1)
    r = block_sensitivity_report(ones)
    assert r.s == 0 and r.bs == 0
    assert r.witness_s0 is None and r.witness_bs0 is None
    assert r.witness_s1 == 0 and r.witness_bs1 == 0
    assert not r.has_zeros and r.has_ones
    assert r.witness_s == 0 and r.witness_bs == 0


def test_sensitivity_at_matches_naive():
    rng = random.Random(201)
    for _ in range(40):
        n = rng.randint(1, 8)
        f = TruthTable(n, rng.getrandbits(1 << n))
        x = rng.randrange(1 << n)
        c, vars_ = sensitivity_at(f, x)
        assert c == oracles.naive_sensitivity_at(f.bits, n, x)
        assert len(vars_) == c
        for v in vars_:
            assert f.value_at(x ^ (1 << (v - 1))) != f.value_at(x)


def test_sensitivity_report_matches_naive_sweep():
    rng = random.Random(202)
    for _ in range(60):
        n = rng.randint(1, 8)
        f = TruthTable(n, rng.getrandbits(1 << n))
        r = sensitivity_report(f)
        s0, w0, s1, w1 = oracles.naive_sensitivity_sides(f.bits, n)
        assert (r.s0, r.s1) == (s0, s1)
        assert (r.witness_s0 if r.witness_s0 is not None else -1) == w0
        assert (r.witness_s1 if r.witness_s1 is not None else -1) == w1


def test_block_sensitivity_report_matches_naive_sweep():
    rng = random.Random(203)
    for _ in range(40):
        n = rng.randint(1, 6)
        f = TruthTable(n, rng.getrandbits(1 << n))
        r = block_sensitivity_report(f)
        b0, w0, b1, w1 = oracles.naive_bs_sides(f.bits, n)
        assert (r.bs0, r.bs1) == (b0, b1), f
        assert (r.witness_bs0 if r.witness_bs0 is not None else -1) == w0
        assert (r.witness_bs1 if r.witness_bs1 is not None else -1) == w1
        assert r.bs >= r.s  # packing singletons is always allowed


def test_block_sensitivity_at_family_is_valid_and_canonical():
    rng = random.Random(204)
    for _ in range(40):
        n = rng.randint(2, 7)
        f = TruthTable(n, rng.getrandbits(1 << n))
        x = rng.randrange(1 << n)
        count, fam = block_sensitivity_at(f, x)
        assert count == oracles.naive_bs_at(f.bits, n, x)
        assert len(fam) == count
        assert isinstance(fam, BlockFamily)
        used = set()
        for block in fam:
            assert not (used & block)
            used |= block
            mask = sum(1 << (v - 1) for v in block)
            assert f.value_at(x ^ mask) != f.value_at(x)
        count2, fam2 = block_sensitivity_at(f, x)
        assert fam.as_sorted_tuples() == fam2.as_sorted_tuples()


def test_bs_capped_matches_naive():
    rng = random.Random(205)
    for _ in range(30):
        n = rng.randint(1, 6)
        f = TruthTable(n, rng.getrandbits(1 << n))
        for ell in sorted({1, min(2, n), n}):
            v, wit = bs_capped(f, ell)
            b0, w0, b1, w1 = oracles.naive_bs_sides(f.bits, n, max_size=ell)
            assert v == max(b0, b1)
    # size-1 blocks are exactly single sensitive variables
    f = MAJ3
    v, wit = bs_capped(f, 1)
    r = sensitivity_report(f)
    assert v == r.s
    with pytest.raises(ValueError):
        bs_capped(f, 0)
    with pytest.raises(ValueError):
        bs_capped(f, 4)


def test_caps_enforced_and_overridable():
    f15 = TruthTable(15, 0)
    with pytest.raises(CapacityError):
        block_sensitivity_report(f15)
    r = block_sensitivity_report(f15, bs_max=15)
    assert r.bs == 0
    f21 = TruthTable(21, 0)
    with pytest.raises(CapacityError):
        sensitivity_report(f21)
    assert sensitivity_report(f21, n_max=21).s == 0
    with pytest.raises(CapacityError):
        block_sensitivity_at(f21, 0)
    err = None
    try:
        block_sensitivity_report(f15)
    except CapacityError as exc:
        err = exc
    assert err is not None and err.arity == 15 and err.cap == 14


def test_monotone_matches_naive():
    rng = random.Random(206)
    assert is_monotone(MAJ3)
    assert is_monotone(AND2)
    assert not is_monotone(xor_table(3))
    for _ in range(60):
        n = rng.randint(1, 7)
        f = TruthTable(n, rng.getrandbits(1 << n))
        assert is_monotone(f) == oracles.naive_is_monotone(f.bits, n)
    # random monotone functions via OR of random up-sets
    for _ in range(20):
        n = rng.randint(2, 6)
        bits = 0
        for _ in range(rng.randint(1, 5)):
            seed = rng.randrange(1 << n)
            for x in range(1 << n):
                if x & seed == seed:
                    bits |= 1 << x
        assert is_monotone(TruthTable(n, bits))


def test_relevant_vars_matches_naive():
    rng = random.Random(207)
    for _ in range(40):
        n = rng.randint(1, 7)
        f = TruthTable(n, rng.getrandbits(1 << n))
        assert relevant_vars(f) == oracles.naive_relevant_vars(f.bits, n)
    # function ignoring variable 2
    f = TruthTable.from_values([x & 1 for x in range(8)])
    assert relevant_vars(f) == (1,)
    assert not depends_on_all(f)
    assert depends_on_all(MAJ3)


def test_xor_tt_pointwise():
    assert xor_tt(AND2, OR2) == TruthTable(2, 0b0110)
    assert xor_tt(MAJ3, MAJ3) == TruthTable.constant(3, 0)
    assert xor_tt(MAJ3, TruthTable.constant(3, 0)) == MAJ3
    with pytest.raises(ValueError):
        xor_tt(MAJ3, AND2)


def test_xor_shift_and_restrict_match_naive():
    rng = random.Random(208)
    for _ in range(40):
        n = rng.randint(2, 7)
        f = TruthTable(n, rng.getrandbits(1 << n))
        shift = rng.randrange(1 << n)
        g = xor_shift(f, shift, complement=bool(rng.getrandbits(1)))
        comp = g.value_at(0) != f.value_at(shift)
        for x in range(1 << n):
            expect = f.value_at(x ^ shift) ^ (1 if comp else 0)
            assert g.value_at(x) == expect
        v = rng.randint(1, n)
        val = rng.randint(0, 1)
        h = restrict(f, {v: val})
        assert h.arity == n - 1
        for y in range(1 << (n - 1)):
            low = y & ((1 << (v - 1)) - 1)
            high = y >> (v - 1)
            x = low | (val << (v - 1)) | (high << v)
            assert h.value_at(y) == f.value_at(x)
    with pytest.raises(ValueError):
        restrict(MAJ3, {1: 0, 2: 1, 3: 0})
    with pytest.raises(ValueError):
        restrict(MAJ3, {4: 0})


def test_text_round_trip_and_errors():
    rng = random.Random(209)
    for _ in range(30):
        n = rng.randint(1, 9)
        f = TruthTable(n, rng.getrandbits(1 << n))
        assert TruthTable.from_text(f.to_text()) == f
    text = "# comment\n\ntt 3  # inline comment\n8e\n"
    assert TruthTable.from_text(text) == MAJ3
    for bad in ("", "tt\n8e", "table 3\n8e", "tt x\n8e", "tt 3", "tt 3\nzz",
                "tt 3\n8e0", "tt 0\n0", "tt 99\n00"):
        with pytest.raises(ParseError):
            TruthTable.from_text(bad)


def test_block_family_validation():
    with pytest.raises(ValueError):
        BlockFamily((frozenset({1, 2}), frozenset({2, 3})))
    with pytest.raises(ValueError):
        BlockFamily((frozenset(),))
    fam = BlockFamily((frozenset({3}), frozenset({1, 2})))
    assert len(fam) == 2


def test_report_to_dict():
    r = block_sensitivity_report(MAJ3)
    d = r.to_dict()
    assert d["s"] == 2 and d["bs"] == 2
    assert d["blocks_bs0"] is not None
    r2 = sensitivity_report(MAJ3)
    assert "bs" not in r2.to_dict()
