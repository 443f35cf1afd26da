"""Pure-Python kernels: the portable implementation of the hot loops.

Contract shared with the compiled twin (`_fastcore`):

* ``sensitivity_counts(buf, n) -> bytearray`` of per-row sensitivity counts.
* ``sensitivity_report_raw(buf, n) -> (s0, wit0, s1, wit1)``, witnesses are the
  lowest row indices attaining the side maxima, -1 for an empty side.
* ``bs_report_raw(buf, n, cap) -> (bs0, wit0, bs1, wit1)`` with exact block
  sensitivity per side, blocks restricted to size <= cap.
* ``bs_at_raw(buf, n, x, cap) -> (count, minimal_blocks)`` for a single row.

``buf`` is the truth table as little-endian bytes padded to a multiple of 8
(bit k = value on row k).  Per row x the sensitive-set indicator over all
2^n flip sets S is obtained by XOR-permuting the table, its upward closure by
a subset-OR zeta transform, and the minimal sensitive blocks by masking out
sets with a sensitive proper subset; exact packing of the minimal blocks is a
memoized branch on the lowest covered coordinate.
"""

from __future__ import annotations

import numpy as np

from ..bitops import (
    full_mask,
    iter_bits,
    low_half_mask,
    max_disjoint_packing,
    or_one_step_down,
    or_over_subsets,
    permute_xor,
    words_to_table,
)

KERNEL_NAME = "pure"


def _bits_array(buf: bytes, n: int) -> np.ndarray:
    raw = np.frombuffer(buf, dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[: 1 << n]


def sensitivity_counts(buf: bytes, n: int) -> bytearray:
    bits = _bits_array(buf, n)
    counts = np.zeros(1 << n, dtype=np.uint8)
    for i in range(n):
        swapped = bits.reshape(-1, 2, 1 << i)[:, ::-1, :].reshape(-1)
        counts += bits ^ swapped
    return bytearray(counts.tobytes())


def sensitivity_report_raw(buf: bytes, n: int) -> tuple[int, int, int, int]:
    bits = _bits_array(buf, n)
    counts = np.zeros(1 << n, dtype=np.int16)
    for i in range(n):
        swapped = bits.reshape(-1, 2, 1 << i)[:, ::-1, :].reshape(-1)
        counts += bits ^ swapped
    out = []
    for side in (0, 1):
        mask = bits == side
        if mask.any():
            masked = np.where(mask, counts, -1)
            out.append(int(masked.max()))
            out.append(int(masked.argmax()))
        else:
            out.extend((0, -1))
    return out[0], out[1], out[2], out[3]


def _minimal_blocks(table: int, n: int, x: int, fx: int, cap: int) -> list[int]:
    sens = permute_xor(table, n, x)
    if fx:
        sens = ~sens & full_mask(n)
    reach = or_over_subsets(sens, n)
    minimal = sens & ~or_one_step_down(reach, n)
    if cap >= n:
        return list(_iter_set_indices(minimal))
    return [s for s in _iter_set_indices(minimal) if s.bit_count() <= cap]


def _iter_set_indices(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bs_at_raw(buf: bytes, n: int, x: int, cap: int) -> tuple[int, list[int]]:
    table = words_to_table(buf)
    fx = (table >> x) & 1
    blocks = _minimal_blocks(table, n, x, fx, cap)
    count = max_disjoint_packing(blocks, (1 << n) - 1)
    return count, blocks


def bs_report_raw(buf: bytes, n: int, cap: int) -> tuple[int, int, int, int]:
    table = words_to_table(buf)
    avail = (1 << n) - 1
    best = [-1, -1]
    wit = [-1, -1]
    for x in range(1 << n):
        fx = (table >> x) & 1
        blocks = _minimal_blocks(table, n, x, fx, cap)
        if len(blocks) <= best[fx]:
            continue
        count = max_disjoint_packing(blocks, avail)
        if count > best[fx]:
            best[fx] = count
            wit[fx] = x
    if best[0] < 0:
        best[0] = 0
    if best[1] < 0:
        best[1] = 0
    return best[0], wit[0], best[1], wit[1]
