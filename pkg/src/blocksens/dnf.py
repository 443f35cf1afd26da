"""DNF formulas: evaluation, structural properties, compact form, normalization.

A term is a conjunction over disjoint positive and negative variable sets
(pos = variables required 1, neg = variables required 0); a formula is the OR
of its terms. Structural stats cover the conflict counts between terms
(gamma), the per-variable positive multiplicity (t), the minimum conflict
over variable-sharing pairs (mixing), and transitivity of the sharing
relation. Compact form demands f(0^n)=0, the zero-side block sensitivity
attained at 0^n, and a private satisfying point for every term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import core
from .core import DEFAULT_N_MAX, TruthTable
from .errors import (
    DegenerateFunctionError,
    InternalInvariantError,
    ParseError,
)


@dataclass(frozen=True)
class Term:
    """One AND gate: pos variables must be 1, neg variables must be 0."""

    pos: frozenset
    neg: frozenset

    def __post_init__(self) -> None:
        pos = frozenset(self.pos)
        neg = frozenset(self.neg)
        object.__setattr__(self, "pos", pos)
        object.__setattr__(self, "neg", neg)
        for v in pos | neg:
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise ValueError(f"variable indices must be ints >= 1, got {v!r}")
        if pos & neg:
            raise ValueError(
                f"term uses variable(s) {sorted(pos & neg)} both ways"
            )

    @property
    def width(self) -> int:
        return len(self.pos) + len(self.neg)

    @property
    def variables(self) -> frozenset:
        return self.pos | self.neg

    def evaluate(self, x: int) -> int:
        for v in self.pos:
            if not (x >> (v - 1)) & 1:
                return 0
        for v in self.neg:
            if (x >> (v - 1)) & 1:
                return 0
        return 1

    def sort_key(self) -> tuple:
        return (tuple(sorted(self.pos)), tuple(sorted(self.neg)))


@dataclass(frozen=True)
class Dnf:
    """OR of terms over variables 1..arity; zero terms is the constant 0."""

    arity: int
    terms: tuple

    def __post_init__(self) -> None:
        terms = tuple(self.terms)
        object.__setattr__(self, "terms", terms)
        if not isinstance(self.arity, int) or self.arity < 1:
            raise ValueError(f"arity must be a positive int, got {self.arity!r}")
        for k, t in enumerate(terms):
            if not isinstance(t, Term):
                raise TypeError(f"terms[{k}] is not a Term")
            bad = [v for v in t.variables if v > self.arity]
            if bad:
                raise ValueError(
                    f"terms[{k}] uses variable(s) {sorted(bad)} beyond arity {self.arity}"
                )

    @property
    def size(self) -> int:
        """Fan-in of the OR gate (term count)."""
        return len(self.terms)

    @property
    def width(self) -> int:
        """Largest term width."""
        return max((t.width for t in self.terms), default=0)

    def evaluate(self, x: int) -> int:
        return eval_dnf(self, x)

    def to_text(self) -> str:
        lines = [f"dnf {self.arity}"]
        for t in self.terms:
            if not t.variables:
                raise ValueError("a term with no literals cannot be serialized")
            toks = [f"+{v}" for v in sorted(t.pos)]
            toks += [f"-{v}" for v in sorted(t.neg)]
            lines.append(" ".join(toks))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Dnf":
        header = None
        header_line = 0
        terms = []
        arity = 0
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if header is None:
                header = line
                header_line = lineno
                parts = header.split()
                if len(parts) != 2 or parts[0] != "dnf":
                    raise ParseError(
                        f"expected header 'dnf <arity>', got {header!r}", header_line
                    )
                try:
                    arity = int(parts[1])
                except ValueError:
                    raise ParseError(f"bad arity {parts[1]!r}", header_line) from None
                if arity < 1:
                    raise ParseError(f"arity must be >= 1, got {arity}", header_line)
                continue
            pos, neg = set(), set()
            for tok in line.split():
                if len(tok) < 2 or tok[0] not in "+-" or not tok[1:].isdigit():
                    raise ParseError(f"bad literal token {tok!r}", lineno)
                v = int(tok[1:])
                if not 1 <= v <= arity:
                    raise ParseError(
                        f"variable {v} out of range 1..{arity}", lineno
                    )
                side = pos if tok[0] == "+" else neg
                if v in pos or v in neg:
                    raise ParseError(f"variable {v} listed twice in one term", lineno)
                side.add(v)
            terms.append(Term(frozenset(pos), frozenset(neg)))
        if header is None:
            raise ParseError("empty dnf input", 0)
        return cls(arity, tuple(terms))


def eval_dnf(d: Dnf, x: int) -> int:
    """1 iff some term has all pos bits set and all neg bits clear in x."""
    for t in d.terms:
        if t.evaluate(x):
            return 1
    return 0


def _term_masks(t: Term) -> tuple:
    pos_mask = 0
    for v in t.pos:
        pos_mask |= 1 << (v - 1)
    neg_mask = 0
    for v in t.neg:
        neg_mask |= 1 << (v - 1)
    return pos_mask, neg_mask


def _sat_array(t: Term, idx: np.ndarray) -> np.ndarray:
    pos_mask, neg_mask = _term_masks(t)
    sat = np.ones(idx.shape, dtype=bool)
    if pos_mask:
        sat &= (idx & pos_mask) == pos_mask
    if neg_mask:
        sat &= (idx & neg_mask) == 0
    return sat


def _row_index(arity: int) -> np.ndarray:
    return np.arange(1 << arity, dtype=np.uint32)


def _pack_bool(vals: np.ndarray) -> int:
    return int.from_bytes(np.packbits(vals, bitorder="little").tobytes(), "little")


def to_truth_table(d: Dnf, *, n_max: int | None = None) -> TruthTable:
    """Expand the formula to an explicit table (capped by n_max)."""
    core._check_cap(d.arity, DEFAULT_N_MAX, n_max, "DNF truth-table expansion")
    idx = _row_index(d.arity)
    vals = np.zeros(idx.shape, dtype=bool)
    for t in d.terms:
        vals |= _sat_array(t, idx)
    return TruthTable(d.arity, _pack_bool(vals))


@dataclass(frozen=True)
class DnfStats:
    """Purely syntactic structure report for one formula."""

    size: int
    width: int
    gamma_per_term: tuple
    gamma: int
    t_min: int
    mixing_max: float
    transitive: bool
    block: bool


def _conflict(a: Term, b: Term) -> int:
    """Variables required 1 by one term and 0 by the other."""
    return len(a.pos & b.neg) + len(b.pos & a.neg)


def stats(d: Dnf) -> DnfStats:
    terms = d.terms
    m = len(terms)
    gamma_per_term = tuple(
        sum(
            1
            for j in range(m)
            if j != i and _conflict(terms[i], terms[j]) == 1
        )
        for i in range(m)
    )
    gamma = max(gamma_per_term, default=0)
    occur: dict = {}
    for t in terms:
        for v in t.pos:
            occur[v] = occur.get(v, 0) + 1
    t_min = max(occur.values(), default=1)
    t_min = max(t_min, 1)
    mixing_max: float = math.inf
    for i in range(m):
        for j in range(i + 1, m):
            if terms[i].variables & terms[j].variables:
                mixing_max = min(mixing_max, _conflict(terms[i], terms[j]))
    transitive = True
    for comp in term_components(d):
        for a in range(len(comp)):
            for b in range(a + 1, len(comp)):
                if not terms[comp[a]].variables & terms[comp[b]].variables:
                    transitive = False
    return DnfStats(
        size=d.size,
        width=d.width,
        gamma_per_term=gamma_per_term,
        gamma=gamma,
        t_min=t_min,
        mixing_max=mixing_max,
        transitive=transitive,
        block=t_min == 1,
    )


def term_components(d: Dnf) -> list:
    """Connected components (0-based term indices) of the shares-a-variable graph."""
    m = len(d.terms)
    seen = [False] * m
    comps = []
    for start in range(m):
        if seen[start]:
            continue
        queue = [start]
        seen[start] = True
        comp = []
        while queue:
            i = queue.pop()
            comp.append(i)
            for j in range(m):
                if not seen[j] and d.terms[i].variables & d.terms[j].variables:
                    seen[j] = True
                    queue.append(j)
        comps.append(sorted(comp))
    return comps


@dataclass(frozen=True)
class CompactFormReport:
    """Outcome of the compact-form conditions on one formula.

    private_assignments holds, per term, the lowest row satisfying that term
    and no other (None when the term has no private point).
    """

    cond_a: bool
    cond_b: bool
    cond_c: bool
    normalized: bool
    private_assignments: tuple
    failing_terms: tuple
    bs_at_zero: int
    bs0: int
    bs: int

    @property
    def all_ok(self) -> bool:
        return self.cond_a and self.cond_b and self.cond_c

    def to_dict(self) -> dict:
        return {
            "cond_a": self.cond_a,
            "cond_b": self.cond_b,
            "cond_c": self.cond_c,
            "normalized": self.normalized,
            "private_assignments": list(self.private_assignments),
            "failing_terms": list(self.failing_terms),
            "bs_at_zero": self.bs_at_zero,
            "bs0": self.bs0,
            "bs": self.bs,
        }


def check_compact_form(d: Dnf, *, n_max: int | None = None) -> CompactFormReport:
    """Check the three compact-form conditions plus the normalized refinement."""
    core._check_cap(d.arity, DEFAULT_N_MAX, n_max, "compact-form check")
    limit = DEFAULT_N_MAX if n_max is None else n_max
    f = to_truth_table(d, n_max=limit)
    cond_a = f.value_at(0) == 0
    rep = core.block_sensitivity_report(f, bs_max=limit)
    bs_zero, _ = core.block_sensitivity_at(f, 0, n_max=limit)
    cond_b = cond_a and bs_zero == rep.bs0
    normalized_extra = bs_zero == rep.bs

    idx = _row_index(d.arity)
    or_all = np.zeros(idx.shape, dtype=bool)
    multi = np.zeros(idx.shape, dtype=bool)
    for t in d.terms:
        sat = _sat_array(t, idx)
        multi |= or_all & sat
        or_all |= sat
    once_only = or_all & ~multi
    private = []
    failing = []
    for i, t in enumerate(d.terms):
        own = _sat_array(t, idx) & once_only
        hit = np.flatnonzero(own)
        if hit.size:
            private.append(int(hit[0]))
        else:
            private.append(None)
            failing.append(i)
    cond_c = not failing
    return CompactFormReport(
        cond_a=cond_a,
        cond_b=cond_b,
        cond_c=cond_c,
        normalized=cond_a and cond_b and cond_c and normalized_extra,
        private_assignments=tuple(private),
        failing_terms=tuple(failing),
        bs_at_zero=bs_zero,
        bs0=rep.bs0,
        bs=rep.bs,
    )


def xor_shift_dnf(d: Dnf, shift: int) -> Dnf:
    """Formula for x -> eval_dnf(d, x xor shift): literal polarity relabeling."""
    if not 0 <= shift < (1 << d.arity):
        raise ValueError(f"shift {shift} out of range for arity {d.arity}")
    terms = []
    for t in d.terms:
        pos = frozenset(
            v for v in t.pos if not (shift >> (v - 1)) & 1
        ) | frozenset(v for v in t.neg if (shift >> (v - 1)) & 1)
        terms.append(Term(pos, t.variables - pos))
    return Dnf(d.arity, tuple(terms))


def prune_covered_terms(d: Dnf, *, n_max: int | None = None) -> Dnf:
    """Drop terms with no private satisfying point, one at a time.

    Each dropped term's satisfying set is covered by the remaining terms, so
    the represented function never changes; the result satisfies the private-
    assignment condition. Structural properties that survive term deletion
    (block, bounded positive multiplicity) are preserved.
    """
    core._check_cap(d.arity, DEFAULT_N_MAX, n_max, "term pruning")
    idx = _row_index(d.arity)
    terms = list(d.terms)
    while True:
        sats = [_sat_array(t, idx) for t in terms]
        or_all = np.zeros(idx.shape, dtype=bool)
        multi = np.zeros(idx.shape, dtype=bool)
        for sat in sats:
            multi |= or_all & sat
            or_all |= sat
        once = or_all & ~multi
        victim = None
        for i, sat in enumerate(sats):
            if not (sat & once).any():
                victim = i
                break
        if victim is None:
            return Dnf(d.arity, tuple(terms))
        del terms[victim]


def _prime_implicants(minterms, n: int):
    """Quine-McCluskey merge; implicants are (care_mask, values) pairs."""
    current = {((1 << n) - 1, m) for m in minterms}
    primes = set()
    while current:
        nxt = set()
        combined = set()
        by_care: dict = {}
        for care, val in current:
            by_care.setdefault(care, set()).add(val)
        for care, vals in by_care.items():
            for val in vals:
                bit = care
                while bit:
                    low = bit & -bit
                    bit ^= low
                    if val ^ low in vals:
                        nxt.add((care ^ low, val & ~low))
                        combined.add((care, val))
                        combined.add((care, val ^ low))
        primes |= current - combined
        current = nxt
    return primes


def _implicant_covers(care: int, val: int, m: int) -> bool:
    return (m & care) == val


def _implicant_to_term(care: int, val: int) -> Term:
    pos = frozenset(i + 1 for i in range(care.bit_length()) if (val >> i) & 1)
    negm = care & ~val
    neg = frozenset(i + 1 for i in range(negm.bit_length()) if (negm >> i) & 1)
    return Term(pos, neg)


def _irredundant_cover(primes, minterms) -> list:
    """Pick a deterministic prime cover where every kept prime owns a point."""
    order = sorted(primes, key=lambda cv: _implicant_to_term(*cv).sort_key())
    cover_of: dict = {m: [] for m in minterms}
    for k, (care, val) in enumerate(order):
        for m in minterms:
            if _implicant_covers(care, val, m):
                cover_of[m].append(k)
    chosen = sorted({cands[0] for cands in cover_of.values() if len(cands) == 1})
    covered = set()
    for k in chosen:
        care, val = order[k]
        covered |= {m for m in minterms if _implicant_covers(care, val, m)}
    while len(covered) < len(minterms):
        best = None
        for k, (care, val) in enumerate(order):
            if k in chosen:
                continue
            gain = sum(
                1
                for m in minterms
                if m not in covered and _implicant_covers(care, val, m)
            )
            if gain and (best is None or gain > best[0]):
                best = (gain, k)
        if best is None:
            raise InternalInvariantError("prime implicants fail to cover the 1-set")
        k = best[1]
        chosen.append(k)
        care, val = order[k]
        covered |= {m for m in minterms if _implicant_covers(care, val, m)}
    # prune until every kept implicant covers some point no other kept one does
    changed = True
    while changed:
        changed = False
        for k in list(chosen):
            others = [order[j] for j in chosen if j != k]
            care, val = order[k]
            owns = any(
                _implicant_covers(care, val, m)
                and not any(_implicant_covers(c2, v2, m) for c2, v2 in others)
                for m in minterms
            )
            if not owns:
                chosen.remove(k)
                changed = True
                break
    return [order[k] for k in sorted(chosen)]


@dataclass(frozen=True)
class NormalizationResult:
    """Shifted, polarity-fixed formula whose maxima sit at the all-zeros row."""

    shift: int
    polarity: int
    dnf: Dnf
    report: CompactFormReport


def normalize(f: TruthTable, *, n_max: int | None = None) -> NormalizationResult:
    """Shift f so bs is attained at 0^n and rebuild an irredundant DNF.

    The output formula represents f'(x) = f(a) xor f(x xor a) where a is the
    lowest row attaining bs(f); it passes every compact-form condition
    including the normalized refinement.
    """
    core._check_cap(f.arity, DEFAULT_N_MAX, n_max, "normalization")
    limit = DEFAULT_N_MAX if n_max is None else n_max
    if not f.has_ones or not f.has_zeros:
        raise DegenerateFunctionError("cannot normalize a constant function")
    rep = core.block_sensitivity_report(f, bs_max=limit)
    a = rep.witness_bs
    polarity = f.value_at(a)
    fp = core.xor_shift(f, a, complement=bool(polarity))
    minterms = [x for x in range(fp.rows) if fp.value_at(x)]
    primes = _prime_implicants(minterms, fp.arity)
    cover = _irredundant_cover(primes, minterms)
    d = Dnf(fp.arity, tuple(_implicant_to_term(c, v) for c, v in cover))
    report = check_compact_form(d, n_max=limit)
    if not (report.all_ok and report.normalized):
        raise InternalInvariantError(
            "normalization output failed its own compact-form check"
        )
    return NormalizationResult(shift=a, polarity=polarity, dnf=d, report=report)


@dataclass(frozen=True)
class BoundsReport:
    """Measured one-side sensitivity against the width/gamma bounds."""

    compact_ok: bool
    s1: int | None
    width: int
    gamma: int
    mixing_max: float
    lower: int | None
    upper: int | None
    bounds_hold: bool | None
    s1_equals_width: bool | None

    def to_dict(self) -> dict:
        return {
            "compact_ok": self.compact_ok,
            "s1": self.s1,
            "width": self.width,
            "gamma": self.gamma,
            "mixing_max": (None if math.isinf(self.mixing_max) else self.mixing_max),
            "lower": self.lower,
            "upper": self.upper,
            "bounds_hold": self.bounds_hold,
            "s1_equals_width": self.s1_equals_width,
        }


def bounds_report(
    d: Dnf, f: TruthTable | None = None, *, n_max: int | None = None
) -> BoundsReport:
    """Check width - gamma <= s1 <= width (and s1 = width under 2-mixing)."""
    st = stats(d)
    compact = check_compact_form(d, n_max=n_max)
    if f is None:
        f = to_truth_table(d, n_max=n_max)
    elif to_truth_table(d, n_max=n_max) != f:
        raise ValueError("supplied table does not match the formula")
    if not compact.all_ok:
        return BoundsReport(
            compact_ok=False,
            s1=None,
            width=st.width,
            gamma=st.gamma,
            mixing_max=st.mixing_max,
            lower=None,
            upper=None,
            bounds_hold=None,
            s1_equals_width=None,
        )
    srep = core.sensitivity_report(f, n_max=n_max)
    lower = st.width - st.gamma
    upper = st.width
    hold = lower <= srep.s1 <= upper
    eq = srep.s1 == st.width if st.mixing_max >= 2 else None
    return BoundsReport(
        compact_ok=True,
        s1=srep.s1,
        width=st.width,
        gamma=st.gamma,
        mixing_max=st.mixing_max,
        lower=lower,
        upper=upper,
        bounds_hold=hold,
        s1_equals_width=eq,
    )
