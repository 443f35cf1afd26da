import random

import pytest

from blocksens import bitops
from blocksens.errors import ParseError


def test_iter_bits_and_mask_vars_round_trip():
    assert list(bitops.iter_bits(0)) == []
    assert list(bitops.iter_bits(0b1011)) == [0, 1, 3]
    assert bitops.mask_to_vars(0b1011) == (1, 2, 4)
    assert bitops.vars_to_mask([1, 2, 4]) == 0b1011
    rng = random.Random(101)
    for _ in range(100):
        m = rng.getrandbits(24)
        assert bitops.vars_to_mask(bitops.mask_to_vars(m)) == m


def test_input_str_conventions():
    # variable 1 is the leftmost character and bit 0 of the row index
    assert bitops.input_to_str(3, 4) == "1100"
    assert bitops.str_to_input("1100", 4) == 3
    assert bitops.input_to_str(0, 3) == "000"
    assert bitops.str_to_input("001", 3) == 4
    rng = random.Random(102)
    for _ in range(50):
        n = rng.randint(1, 16)
        x = rng.randrange(1 << n)
        assert bitops.str_to_input(bitops.input_to_str(x, n), n) == x


def test_input_str_errors():
    with pytest.raises(ParseError):
        bitops.str_to_input("10a", 3)
    with pytest.raises(ParseError):
        bitops.str_to_input("10", 3)
    with pytest.raises(ParseError):
        bitops.str_to_input("", 1)


def test_low_half_mask_matches_definition():
    for n in range(1, 7):
        for level in range(n):
            expect = 0
            for x in range(1 << n):
                if not (x >> level) & 1:
                    expect |= 1 << x
            assert bitops.low_half_mask(n, level) == expect


def test_permute_xor_matches_pointwise():
    rng = random.Random(103)
    for _ in range(60):
        n = rng.randint(1, 8)
        table = rng.getrandbits(1 << n)
        shift = rng.randrange(1 << n)
        out = bitops.permute_xor(table, n, shift)
        for x in range(1 << n):
            assert (out >> x) & 1 == (table >> (x ^ shift)) & 1


def test_or_over_subsets_matches_naive():
    rng = random.Random(104)
    for _ in range(60):
        n = rng.randint(1, 7)
        v = rng.getrandbits(1 << n)
        out = bitops.or_over_subsets(v, n)
        for S in range(1 << n):
            expect = 0
            T = S
            while True:
                expect |= (v >> T) & 1
                if T == 0:
                    break
                T = (T - 1) & S
            assert (out >> S) & 1 == expect


def test_or_one_step_down_matches_naive():
    rng = random.Random(105)
    for _ in range(60):
        n = rng.randint(1, 7)
        v = rng.getrandbits(1 << n)
        out = bitops.or_one_step_down(v, n)
        for S in range(1 << n):
            expect = 0
            for i in range(n):
                if (S >> i) & 1:
                    expect |= (v >> (S ^ (1 << i))) & 1
            assert (out >> S) & 1 == expect


def test_hex_round_trip_and_known_value():
    # maj3 has table 0xe8; the file digit order is least significant first
    assert bitops.table_to_hex(0xE8, 3) == "8e"
    assert bitops.hex_to_table("8e", 3) == 0xE8
    rng = random.Random(106)
    for _ in range(50):
        n = rng.randint(1, 10)
        table = rng.getrandbits(1 << n)
        assert bitops.hex_to_table(bitops.table_to_hex(table, n), n) == table


def test_hex_rejects_garbage():
    with pytest.raises(ParseError):
        bitops.hex_to_table("zz", 3)
    with pytest.raises(ParseError):
        bitops.hex_to_table("8e0", 3)  # wrong digit count
    # arity 1 uses one digit but only two value bits; stray bits must fail
    with pytest.raises(ParseError):
        bitops.hex_to_table("4", 1)


def test_words_round_trip_and_padding():
    rng = random.Random(107)
    for n in range(1, 11):
        table = rng.getrandbits(1 << n)
        buf = bitops.table_to_words(table, n)
        assert len(buf) % 8 == 0
        assert len(buf) == max(8, (1 << n) // 8)
        assert bitops.words_to_table(buf) == table


def _brute_force_packing(blocks, avail):
    best = 0
    m = len(blocks)
    for pick in range(1 << m):
        used = 0
        ok = True
        cnt = 0
        for j in range(m):
            if (pick >> j) & 1:
                b = blocks[j]
                if b & used or b & ~avail:
                    ok = False
                    break
                used |= b
                cnt += 1
        if ok:
            best = max(best, cnt)
    return best


def test_max_disjoint_packing_matches_brute_force():
    rng = random.Random(108)
    for _ in range(80):
        n = rng.randint(2, 8)
        m = rng.randint(0, 9)
        blocks = []
        for _ in range(m):
            b = 0
            while not b:
                b = rng.getrandbits(n)
            blocks.append(b)
        avail = (1 << n) - 1
        if rng.random() < 0.3:
            avail = rng.getrandbits(n)
        got = bitops.max_disjoint_packing(blocks, avail)
        assert got == _brute_force_packing(blocks, avail)


def test_lex_min_packing_is_optimal_and_least():
    rng = random.Random(109)
    for _ in range(60):
        n = rng.randint(2, 6)
        m = rng.randint(1, 7)
        blocks = sorted({max(1, rng.getrandbits(n)) for _ in range(m)})
        avail = (1 << n) - 1
        count = bitops.max_disjoint_packing(blocks, avail)
        chosen = bitops.lex_min_packing(blocks, avail, count)
        assert len(chosen) == count
        used = 0
        for b in chosen:
            assert b in blocks
            assert b & used == 0
            used |= b
        # enumerate every optimal packing and take the least canonical key
        best_key = None
        mm = len(blocks)
        for pick in range(1 << mm):
            sel = [blocks[j] for j in range(mm) if (pick >> j) & 1]
            if len(sel) != count:
                continue
            u = 0
            ok = True
            for b in sel:
                if b & u:
                    ok = False
                    break
                u |= b
            if not ok:
                continue
            key = tuple(sorted(bitops.canonical_block_key(b) for b in sel))
            if best_key is None or key < best_key:
                best_key = key
        got_key = tuple(sorted(bitops.canonical_block_key(b) for b in chosen))
        assert got_key == best_key
