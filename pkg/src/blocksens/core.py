"""Truth tables and exact sensitivity / block-sensitivity measures.

A function on n variables is stored as a single Python int: bit k holds the
value on input row k, and variable i corresponds to bit i-1 of the row index.
All measures here are exact; expensive whole-table operations are guarded by
arity caps that can be widened per call.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import bitops
from ._kernels import impl
from .errors import CapacityError, DegenerateFunctionError, ParseError

DEFAULT_N_MAX = 20
DEFAULT_BS_MAX = 14

# Constructor-level bound: tables beyond this are too large to hold as ints
# regardless of which operations later run on them.
HARD_ARITY_LIMIT = 24


@dataclass(frozen=True)
class TruthTable:
    """Immutable truth table of a Boolean function on `arity` variables."""

    arity: int
    bits: int

    def __post_init__(self) -> None:
        if not isinstance(self.arity, int) or isinstance(self.arity, bool):
            raise TypeError("arity must be an int")
        if not isinstance(self.bits, int) or isinstance(self.bits, bool):
            raise TypeError("bits must be an int")
        if not 1 <= self.arity <= HARD_ARITY_LIMIT:
            raise ValueError(
                f"arity must be between 1 and {HARD_ARITY_LIMIT}, got {self.arity}"
            )
        if self.bits < 0 or self.bits >> self.rows:
            raise ValueError("bits has set bits beyond the table size")

    @property
    def rows(self) -> int:
        return 1 << self.arity

    @classmethod
    def from_values(cls, values) -> "TruthTable":
        """Build from an iterable of row values (row 0 first)."""
        vals = [1 if v else 0 for v in values]
        m = len(vals)
        if m < 2 or m & (m - 1):
            raise ValueError(f"value count must be a power of two >= 2, got {m}")
        bits = 0
        for k, v in enumerate(vals):
            if v:
                bits |= 1 << k
        return cls(m.bit_length() - 1, bits)

    @classmethod
    def from_indices(cls, arity: int, ones) -> "TruthTable":
        """Build from the set of rows on which the function is 1."""
        bits = 0
        rows = 1 << arity
        for x in ones:
            if not 0 <= x < rows:
                raise ValueError(f"row {x} out of range for arity {arity}")
            bits |= 1 << x
        return cls(arity, bits)

    @classmethod
    def constant(cls, arity: int, value: int) -> "TruthTable":
        bits = ((1 << (1 << arity)) - 1) if value else 0
        return cls(arity, bits)

    def value_at(self, x: int) -> int:
        if not 0 <= x < self.rows:
            raise ValueError(f"row {x} out of range for arity {self.arity}")
        return (self.bits >> x) & 1

    @property
    def has_ones(self) -> bool:
        return self.bits != 0

    @property
    def has_zeros(self) -> bool:
        return self.bits != (1 << self.rows) - 1

    def to_kernel_buf(self) -> bytes:
        return bitops.table_to_words(self.bits, self.arity)

    def to_text(self) -> str:
        """Serialize to the tt text format (header line, then hex payload)."""
        digits = bitops.table_to_hex(self.bits, self.arity)
        chunks = [digits[i : i + 64] for i in range(0, len(digits), 64)]
        return f"tt {self.arity}\n" + "\n".join(chunks) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "TruthTable":
        """Parse the tt text format; '#' comments and blank lines are skipped."""
        header = None
        payload = []
        header_line = 0
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if header is None:
                header = line
                header_line = lineno
            else:
                payload.append((lineno, line))
        if header is None:
            raise ParseError("empty tt input", 0)
        parts = header.split()
        if len(parts) != 2 or parts[0] != "tt":
            raise ParseError(f"expected header 'tt <arity>', got {header!r}", header_line)
        try:
            arity = int(parts[1])
        except ValueError:
            raise ParseError(f"bad arity {parts[1]!r}", header_line) from None
        if not 1 <= arity <= HARD_ARITY_LIMIT:
            raise ParseError(
                f"arity must be between 1 and {HARD_ARITY_LIMIT}, got {arity}",
                header_line,
            )
        if not payload:
            raise ParseError("missing hex payload", header_line)
        digits = "".join(p for _, p in payload)
        bits = bitops.hex_to_table(digits, arity, line=payload[0][0])
        return cls(arity, bits)

    def __repr__(self) -> str:
        return f"TruthTable(arity={self.arity}, bits={self.bits:#x})"


@dataclass(frozen=True)
class BlockFamily:
    """Pairwise-disjoint sensitive blocks, each a frozenset of 1-based variables."""

    blocks: tuple

    def __post_init__(self) -> None:
        blocks = tuple(frozenset(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        seen = set()
        for b in blocks:
            if not b:
                raise ValueError("blocks must be nonempty")
            if seen & b:
                raise ValueError("blocks must be pairwise disjoint")
            seen |= b

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __getitem__(self, i):
        return self.blocks[i]

    def as_sorted_tuples(self) -> tuple:
        return tuple(tuple(sorted(b)) for b in self.blocks)

    @classmethod
    def from_masks(cls, masks) -> "BlockFamily":
        blocks = sorted((frozenset(bitops.mask_to_vars(m)) for m in masks),
                        key=lambda b: tuple(sorted(b)))
        return cls(tuple(blocks))


@dataclass(frozen=True)
class MeasureReport:
    """Per-side maxima of sensitivity (and optionally block sensitivity).

    Witness rows are the lowest-index maximizers on their side, or None when
    the function takes no value on that side.
    """

    arity: int
    s0: int
    s1: int
    witness_s0: int | None
    witness_s1: int | None
    bs0: int | None = None
    bs1: int | None = None
    witness_bs0: int | None = None
    witness_bs1: int | None = None
    blocks_bs0: BlockFamily | None = field(default=None, repr=False)
    blocks_bs1: BlockFamily | None = field(default=None, repr=False)

    @property
    def s(self) -> int:
        return max(self.s0, self.s1)

    @property
    def witness_s(self) -> int | None:
        return _best_witness(self.s, self.s0, self.s1,
                             self.witness_s0, self.witness_s1)

    @property
    def bs(self) -> int | None:
        if self.bs0 is None or self.bs1 is None:
            return None
        return max(self.bs0, self.bs1)

    @property
    def witness_bs(self) -> int | None:
        if self.bs is None:
            return None
        return _best_witness(self.bs, self.bs0, self.bs1,
                             self.witness_bs0, self.witness_bs1)

    @property
    def has_zeros(self) -> bool:
        return self.witness_s0 is not None

    @property
    def has_ones(self) -> bool:
        return self.witness_s1 is not None

    def to_dict(self) -> dict:
        out = {
            "arity": self.arity,
            "s0": self.s0,
            "s1": self.s1,
            "s": self.s,
            "witness_s0": self.witness_s0,
            "witness_s1": self.witness_s1,
        }
        if self.bs0 is not None:
            out.update(
                bs0=self.bs0,
                bs1=self.bs1,
                bs=self.bs,
                witness_bs0=self.witness_bs0,
                witness_bs1=self.witness_bs1,
            )
            if self.blocks_bs0 is not None:
                out["blocks_bs0"] = [list(t) for t in self.blocks_bs0.as_sorted_tuples()]
            if self.blocks_bs1 is not None:
                out["blocks_bs1"] = [list(t) for t in self.blocks_bs1.as_sorted_tuples()]
        return out


def _best_witness(best, v0, v1, w0, w1):
    cands = []
    if w0 is not None and v0 == best:
        cands.append(w0)
    if w1 is not None and v1 == best:
        cands.append(w1)
    return min(cands) if cands else None


def _none_if_neg(x: int) -> int | None:
    return None if x < 0 else x


def _check_cap(arity: int, default: int, override: int | None, what: str) -> None:
    limit = default if override is None else override
    if arity > limit:
        raise CapacityError(arity, limit, what)


def sensitivity_at(f: TruthTable, x: int) -> tuple:
    """Exact sensitivity at one row, with the 1-based sensitive variables."""
    fx = f.value_at(x)
    sens = [i + 1 for i in range(f.arity) if f.value_at(x ^ (1 << i)) != fx]
    return len(sens), tuple(sens)


def sensitivity_report(f: TruthTable, *, n_max: int | None = None) -> MeasureReport:
    """Maximum zero- and one-side sensitivity over all rows."""
    _check_cap(f.arity, DEFAULT_N_MAX, n_max, "sensitivity report")
    s0, w0, s1, w1 = impl.sensitivity_report_raw(f.to_kernel_buf(), f.arity)
    return MeasureReport(f.arity, s0, s1, _none_if_neg(w0), _none_if_neg(w1))


def block_sensitivity_at(
    f: TruthTable, x: int, *, n_max: int | None = None
) -> tuple:
    """Exact block sensitivity at one row plus a canonical optimal family.

    The family is the lexicographically least optimal packing when blocks are
    compared as sorted variable tuples.
    """
    _check_cap(f.arity, DEFAULT_N_MAX, n_max, "block sensitivity at a row")
    f.value_at(x)
    count, masks = impl.bs_at_raw(f.to_kernel_buf(), f.arity, x, f.arity)
    avail = (1 << f.arity) - 1
    chosen = bitops.lex_min_packing(list(masks), avail, count)
    fam = BlockFamily.from_masks(chosen)
    if len(fam) != count:
        raise AssertionError("packing reconstruction lost blocks")
    return count, fam


def block_sensitivity_report(
    f: TruthTable,
    *,
    bs_max: int | None = None,
    n_max: int | None = None,
) -> MeasureReport:
    """Exact s and bs maxima per side, with witnesses and canonical families."""
    _check_cap(f.arity, DEFAULT_BS_MAX, bs_max, "block sensitivity report")
    buf = f.to_kernel_buf()
    s0, sw0, s1, sw1 = impl.sensitivity_report_raw(buf, f.arity)
    b0, bw0, b1, bw1 = impl.bs_report_raw(buf, f.arity, f.arity)
    fam0 = fam1 = None
    if bw0 >= 0:
        _, fam0 = block_sensitivity_at(f, bw0, n_max=max(f.arity, DEFAULT_N_MAX))
    if bw1 >= 0:
        _, fam1 = block_sensitivity_at(f, bw1, n_max=max(f.arity, DEFAULT_N_MAX))
    return MeasureReport(
        f.arity,
        s0,
        s1,
        _none_if_neg(sw0),
        _none_if_neg(sw1),
        bs0=b0,
        bs1=b1,
        witness_bs0=_none_if_neg(bw0),
        witness_bs1=_none_if_neg(bw1),
        blocks_bs0=fam0,
        blocks_bs1=fam1,
    )


def bs_capped(
    f: TruthTable, ell: int, *, bs_max: int | None = None
) -> tuple:
    """Max block sensitivity over all rows using blocks of size <= ell.

    Returns (value, witness_row); the witness is the lowest row attaining it.
    """
    if not 1 <= ell <= f.arity:
        raise ValueError(f"block size cap must be in 1..{f.arity}, got {ell}")
    _check_cap(f.arity, DEFAULT_BS_MAX, bs_max, "size-capped block sensitivity")
    b0, w0, b1, w1 = impl.bs_report_raw(f.to_kernel_buf(), f.arity, ell)
    best = max(b0, b1)
    wit = _best_witness(best, b0, b1, _none_if_neg(w0), _none_if_neg(w1))
    return best, wit


def xor_tt(f: TruthTable, g: TruthTable) -> TruthTable:
    """Pointwise XOR of two tables of equal arity."""
    if f.arity != g.arity:
        raise ValueError(f"arity mismatch: {f.arity} vs {g.arity}")
    return TruthTable(f.arity, f.bits ^ g.bits)


def xor_shift(f: TruthTable, shift: int = 0, complement: bool = False) -> TruthTable:
    """The table of x -> f(x xor shift), optionally complemented."""
    if not 0 <= shift < f.rows:
        raise ValueError(f"shift {shift} out of range for arity {f.arity}")
    bits = bitops.permute_xor(f.bits, f.arity, shift) if shift else f.bits
    if complement:
        bits ^= (1 << f.rows) - 1
    return TruthTable(f.arity, bits)


def is_monotone(f: TruthTable) -> bool:
    """True iff raising any variable from 0 to 1 never lowers the value."""
    for i in range(f.arity):
        lo = bitops.low_half_mask(f.arity, i)
        if f.bits & lo & ~(f.bits >> (1 << i)):
            return False
    return True


def relevant_vars(f: TruthTable) -> tuple:
    """1-based variables the function actually depends on."""
    out = []
    for i in range(f.arity):
        if f.bits != bitops.permute_xor(f.bits, f.arity, 1 << i):
            out.append(i + 1)
    return tuple(out)


def depends_on_all(f: TruthTable) -> bool:
    return len(relevant_vars(f)) == f.arity


def require_nondegenerate(f: TruthTable) -> None:
    missing = sorted(set(range(1, f.arity + 1)) - set(relevant_vars(f)))
    if missing:
        raise DegenerateFunctionError(
            f"function ignores variable(s) {missing}; it does not depend on all "
            f"{f.arity} inputs"
        )


def restrict(f: TruthTable, assignments: dict) -> TruthTable:
    """Fix some variables (1-based -> 0/1) and drop them from the table."""
    if not assignments:
        return f
    for v, val in assignments.items():
        if not 1 <= v <= f.arity:
            raise ValueError(f"variable {v} out of range for arity {f.arity}")
        if val not in (0, 1):
            raise ValueError(f"assignment for variable {v} must be 0 or 1")
    if len(assignments) >= f.arity:
        raise ValueError("restriction must leave at least one free variable")
    buf = np.frombuffer(f.to_kernel_buf(), dtype=np.uint8)
    vals = np.unpackbits(buf, bitorder="little")[: f.rows]
    idx = np.arange(f.rows, dtype=np.uint32)
    keep = np.ones(f.rows, dtype=bool)
    for v, val in assignments.items():
        keep &= ((idx >> (v - 1)) & 1) == val
    sub = vals[keep]
    packed = np.packbits(sub, bitorder="little").tobytes()
    return TruthTable(f.arity - len(assignments),
                      int.from_bytes(packed, "little"))
