"""Bit-level helpers shared by the kernels and the data types.

Conventions used everywhere in this package:

* An input to an n-variable function is an integer row index in [0, 2^n);
  variable i (1-based) is bit i-1 of the index.
* A bitstring renders variable 1 leftmost, so "1100" means x1=x2=1, x3=x4=0,
  which is row index 0b0011 = 3.
* A truth table is an integer whose bit k is the value on row k.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .errors import ParseError


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of mask, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_to_vars(mask: int) -> tuple[int, ...]:
    """Bit positions of mask as ascending 1-based variable indices."""
    return tuple(b + 1 for b in iter_bits(mask))


def vars_to_mask(indices) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << (i - 1)
    return mask


def input_to_str(x: int, arity: int) -> str:
    """Render a row index as a bitstring with variable 1 leftmost."""
    return "".join("1" if (x >> i) & 1 else "0" for i in range(arity))


def str_to_input(s: str, arity: int | None = None, line: int | None = None) -> int:
    s = s.strip()
    if arity is not None and len(s) != arity:
        raise ParseError(f"bitstring {s!r} has length {len(s)}, expected {arity}", line)
    x = 0
    for i, ch in enumerate(s):
        if ch == "1":
            x |= 1 << i
        elif ch != "0":
            raise ParseError(f"bad character {ch!r} in bitstring {s!r}", line)
    return x


@lru_cache(maxsize=64)
def low_half_mask(arity: int, level: int) -> int:
    """Mask over 2^arity bit positions selecting indices whose bit `level` is 0.

    Pattern of 2^level ones then 2^level zeros, repeated; built by doubling so
    construction is O(arity) bignum operations.
    """
    s = 1 << level
    pat = (1 << s) - 1
    width = 2 * s
    size = 1 << arity
    while width < size:
        pat |= pat << width
        width *= 2
    return pat


def full_mask(arity: int) -> int:
    return (1 << (1 << arity)) - 1


def permute_xor(table: int, arity: int, shift: int) -> int:
    """Truth table of x -> f(x ^ shift), as a butterfly per set bit of shift."""
    v = table
    for i in iter_bits(shift):
        s = 1 << i
        lo = low_half_mask(arity, i)
        v = ((v & lo) << s) | ((v >> s) & lo)
    return v


def or_over_subsets(v: int, arity: int) -> int:
    """Zeta transform: bit S of the result is the OR of bits T over all T subset of S."""
    for i in range(arity):
        v |= (v & low_half_mask(arity, i)) << (1 << i)
    return v


def or_one_step_down(v: int, arity: int) -> int:
    """Bit S of the result is the OR of bits (S minus one element) over elements of S."""
    q = 0
    for i in range(arity):
        q |= (v & low_half_mask(arity, i)) << (1 << i)
    return q


def table_to_words(table: int, arity: int) -> bytes:
    """Little-endian bytes of the table, zero-padded to a multiple of 8."""
    nbytes = max(1, (1 << arity) // 8)
    nbytes = (nbytes + 7) // 8 * 8
    return table.to_bytes(nbytes, "little")


def words_to_table(buf: bytes) -> int:
    return int.from_bytes(buf, "little")


# --- hex serialization for the tt file format -------------------------------
# Digit k of the hex string (leftmost = position 0) encodes rows 4k..4k+3, so
# the least significant hex digit comes first.

def table_to_hex(table: int, arity: int) -> str:
    ndigits = max(1, (1 << arity) // 4)
    return format(table, f"0{ndigits}x")[::-1]


def hex_to_table(s: str, arity: int, line: int | None = None) -> int:
    ndigits = max(1, (1 << arity) // 4)
    s = s.strip()
    if len(s) != ndigits:
        raise ParseError(f"expected {ndigits} hex digits for arity {arity}, got {len(s)}", line)
    try:
        table = int(s[::-1], 16)
    except ValueError:
        raise ParseError(f"bad hex string {s!r}", line) from None
    if arity < 2 and table >> (1 << arity):
        raise ParseError(f"hex value sets bits beyond 2^{arity} rows", line)
    return table


def max_disjoint_packing(blocks: list[int], avail: int, memo: dict[int, int] | None = None) -> int:
    """Maximum number of pairwise-disjoint masks from `blocks` that fit inside `avail`.

    Exact branch on the lowest coordinate covered by any fitting block; memoized
    on the remaining-coordinate mask.
    """
    if memo is None:
        memo = {}

    def pack(av: int) -> int:
        got = memo.get(av)
        if got is not None:
            return got
        cover = 0
        for b in blocks:
            if b & ~av == 0:
                cover |= b
        if cover == 0:
            memo[av] = 0
            return 0
        pivot = cover & -cover
        best = pack(av & ~pivot)
        for b in blocks:
            if b & pivot and b & ~av == 0:
                r = 1 + pack(av & ~b)
                if r > best:
                    best = r
        memo[av] = best
        return best

    return pack(avail)


def canonical_block_key(mask: int) -> tuple[int, ...]:
    """Sort key ordering blocks by their sorted variable-index tuples."""
    return mask_to_vars(mask)


def lex_min_packing(blocks: list[int], avail: int, count: int) -> list[int]:
    """The lexicographically least maximum packing, blocks ordered canonically."""
    memo: dict[int, int] = {}
    ordered = sorted(blocks, key=canonical_block_key)
    chosen: list[int] = []
    need = count
    while need > 0:
        for b in ordered:
            if b & ~avail == 0 and 1 + max_disjoint_packing(blocks, avail & ~b, memo) == need:
                chosen.append(b)
                avail &= ~b
                need -= 1
                break
        else:  # pragma: no cover - count came from the same packing search
            raise AssertionError("packing reconstruction lost the optimum")
    return chosen
