"""Named function families with super-quadratic block-sensitivity gaps.

Each family is an OR of variable-disjoint copies of a small inner formula g.
Measures of the composed function follow from g's measures by exact
composition rules, so instances stay analyzable far beyond truth-table size;
an explicit expanded DNF is attached only when it fits a small cap.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import core
from .core import BlockFamily, MeasureReport, TruthTable
from .dnf import Dnf, Term, stats, to_truth_table
from .errors import (
    CapacityError,
    DegenerateFunctionError,
    InternalInvariantError,
)

EXPANSION_CAP = 32


def _replicate_row(w: int | None, arity: int, m: int) -> int | None:
    """The row whose every copy-slot equals w."""
    if w is None:
        return None
    return w * (((1 << (m * arity)) - 1) // ((1 << arity) - 1))


def _shift_family(fam: BlockFamily | None, arity: int, m: int):
    """Valid optimal zero-side packing of the composition: one copy per slot."""
    if fam is None:
        return None
    blocks = []
    for i in range(m):
        off = i * arity
        for b in fam.blocks:
            blocks.append(frozenset(v + off for v in b))
    return BlockFamily(tuple(blocks))


def disjoint_or_compose(g_report: MeasureReport, m: int) -> MeasureReport:
    """Measure report of an OR of m variable-disjoint copies.

    Exact rules: s1 and bs1 are unchanged (a single active copy embeds the
    inner function, and any disjoint one-side block family restricts to one
    on the active copy), while s0 and bs0 scale by m (zero-side behavior adds
    across copies). Witness rows: zero-side witnesses replicate into every
    copy slot and are always the lowest attaining rows. One-side witnesses
    keep the inner witness in the first copy with all other copies at zero;
    they are the lowest attaining rows when the inner function is 0 at the
    all-zeros input (true for every formula with nonempty positive sets, and
    not decidable from the report alone otherwise). The zero-side block
    family is replicated per copy; the one-side family is inherited.
    """
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"copy count must be a positive int, got {m!r}")
    if g_report.witness_s0 is None:
        raise DegenerateFunctionError(
            "cannot compose copies of the constant-1 function")
    if m == 1:
        return g_report
    n = g_report.arity
    return MeasureReport(
        m * n,
        m * g_report.s0,
        g_report.s1,
        _replicate_row(g_report.witness_s0, n, m),
        g_report.witness_s1,
        bs0=None if g_report.bs0 is None else m * g_report.bs0,
        bs1=g_report.bs1,
        witness_bs0=_replicate_row(g_report.witness_bs0, n, m),
        witness_bs1=g_report.witness_bs1,
        blocks_bs0=_shift_family(g_report.blocks_bs0, n, m),
        blocks_bs1=g_report.blocks_bs1,
    )


def explicit_or_expand(g: Dnf, m: int) -> Dnf:
    """DNF of the OR of m variable-disjoint copies, copy i on variables
    (i-1)*arity+1 .. i*arity."""
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"copy count must be a positive int, got {m!r}")
    if m == 1:
        return g
    total = m * g.arity
    if total > EXPANSION_CAP:
        raise CapacityError(total, EXPANSION_CAP, "variable-disjoint expansion")
    terms = []
    for i in range(m):
        off = i * g.arity
        for t in g.terms:
            terms.append(Term(frozenset(v + off for v in t.pos),
                              frozenset(v + off for v in t.neg)))
    return Dnf(total, tuple(terms))


@dataclass(frozen=True)
class FamilyInstance:
    """An inner formula g plus composition data for f = OR of m copies."""

    name: str
    n: int
    g_dnf: Dnf
    copies: int
    predicted: MeasureReport
    expanded_dnf: Dnf | None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "inner_arity": self.g_dnf.arity,
            "copies": self.copies,
            "arity": self.predicted.arity,
            "s": self.predicted.s,
            "bs": self.predicted.bs,
            "expanded": self.expanded_dnf is not None,
        }


def _build_instance(name: str, n: int, g: Dnf, m: int,
                    bs_max: int | None) -> FamilyInstance:
    g_report = core.block_sensitivity_report(to_truth_table(g), bs_max=bs_max)
    predicted = disjoint_or_compose(g_report, m)
    expanded = explicit_or_expand(g, m) if m * g.arity <= EXPANSION_CAP else None
    return FamilyInstance(name, n, g, m, predicted, expanded)


def _check_identity(inst: FamilyInstance, s: int, bs: int) -> FamilyInstance:
    if inst.predicted.s != s or inst.predicted.bs != bs:
        raise InternalInvariantError(
            f"{inst.name}({inst.n}) predicts s={inst.predicted.s}, "
            f"bs={inst.predicted.bs}; the closed form says s={s}, bs={bs}")
    return inst


def _require_param(n) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"family parameter must be a positive int, got {n!r}")


def rubinstein(n: int, *, bs_max: int | None = None) -> FamilyInstance:
    """Inner formula on 2n variables: one term per consecutive pair, the pair
    positive and everything else negative. Composed over 2n copies the gap is
    bs = s^2/2 with s = 2n.
    """
    _require_param(n)
    arity = 2 * n
    allv = frozenset(range(1, arity + 1))
    terms = tuple(
        Term(frozenset({2 * j - 1, 2 * j}), allv - {2 * j - 1, 2 * j})
        for j in range(1, n + 1)
    )
    inst = _build_instance("rubinstein", n, Dnf(arity, terms), 2 * n, bs_max)
    return _check_identity(inst, 2 * n, 2 * n * n)


def virza(n: int, *, bs_max: int | None = None) -> FamilyInstance:
    """Rubinstein's inner formula with one extra variable forced to zero in
    every pair term, plus a term wanting only that variable. Composed over
    2n+1 copies the gap is bs = s^2/2 + s/2 with s = 2n+1.
    """
    _require_param(n)
    arity = 2 * n + 1
    allv = frozenset(range(1, arity + 1))
    terms = tuple(
        Term(frozenset({2 * j - 1, 2 * j}), allv - {2 * j - 1, 2 * j})
        for j in range(1, n + 1)
    ) + (Term(frozenset({arity}), allv - {arity}),)
    inst = _build_instance("virza", n, Dnf(arity, terms), 2 * n + 1, bs_max)
    return _check_identity(inst, 2 * n + 1, (2 * n + 1) * (n + 1))


def ambainis_sun(n: int, *, bs_max: int | None = None) -> FamilyInstance:
    """Inner formula on 4n+2 variables: a fixed pattern (2n zeros, two ones,
    then n zero/free pairs) in every even cyclic rotation of the variable
    frame, 2n+1 terms in all. Composed over 3n+2 copies the gap is
    bs = 2s^2/3 - s/3 with s = 3n+2.
    """
    _require_param(n)
    arity = 4 * n + 2
    base_pos = (2 * n + 1, 2 * n + 2)
    base_neg = tuple(range(1, 2 * n + 1)) + tuple(
        2 * n + 3 + 2 * k for k in range(n))

    def rot(q: int, r: int) -> int:
        return (q - 1 + 2 * r) % arity + 1

    terms = tuple(
        Term(frozenset(rot(q, r) for q in base_pos),
             frozenset(rot(q, r) for q in base_neg))
        for r in range(2 * n + 1)
    )
    g = Dnf(arity, terms)
    st = stats(g)
    if not (st.block and st.transitive and st.mixing_max == 3):
        raise InternalInvariantError(
            "rotated pattern lost the block/transitive/3-mixing structure")
    inst = _build_instance("ambainis_sun", n, g, 3 * n + 2, bs_max)
    return _check_identity(inst, 3 * n + 2, (3 * n + 2) * (2 * n + 1))


def onesbound_tight(n: int) -> Dnf:
    """Block formula on 2n+1 variables with s0 = s1 = n+1, matching the
    half-width sensitivity bound: n singleton even-variable terms plus one
    term wanting all odd variables and no even ones.
    """
    _require_param(n)
    arity = 2 * n + 1
    terms = tuple(
        Term(frozenset({2 * i}), frozenset()) for i in range(1, n + 1)
    ) + (Term(frozenset(2 * i - 1 for i in range(1, n + 2)),
              frozenset(2 * i for i in range(1, n + 1))),)
    return Dnf(arity, terms)


def proposition_pair(p: int, q: int) -> tuple:
    """Functions f, g on p+q variables with s(f) = p, s(g) = q that agree on
    a radius p+q-1 ball but differ at its antipode.

    f thresholds the weight of the first 2p coordinates at p, breaking the
    tie by the parity of the sum of the set indices; g flips f at the single
    input a (variable i set iff i = 1, i > 2p, or i even and i != 2p). The
    stated measures and the ball agreement are re-verified before returning.
    """
    if not (isinstance(p, int) and isinstance(q, int)):
        raise ValueError("p and q must be ints")
    if p < 2 or p > q:
        raise ValueError(f"need 2 <= p <= q, got p={p}, q={q}")
    arity = p + q
    a = 0
    for i in range(1, arity + 1):
        if i == 1 or i > 2 * p or (i % 2 == 0 and i != 2 * p):
            a |= 1 << (i - 1)
    low_mask = (1 << (2 * p)) - 1
    odd_mask = sum(1 << (i - 1) for i in range(1, 2 * p + 1, 2))
    bits = 0
    for x in range(1 << arity):
        w = bin(x & low_mask).count("1")
        if w > p or (w == p and bin(x & odd_mask).count("1") % 2):
            bits |= 1 << x
    f = TruthTable(arity, bits)
    if not f.value_at(a):
        raise InternalInvariantError("special input is not a one of f")
    g = TruthTable(arity, bits & ~(1 << a))
    sf = core.sensitivity_report(f, n_max=arity)
    sg = core.sensitivity_report(g, n_max=arity)
    if sf.s != p or sg.s != q:
        raise InternalInvariantError(
            f"pair measures s(f)={sf.s}, s(g)={sg.s} instead of {p}, {q}")
    center = a ^ ((1 << arity) - 1)
    for x in range(1 << arity):
        if f.value_at(x) != g.value_at(x) and bin(x ^ center).count("1") < arity:
            raise InternalInvariantError(
                "f and g disagree inside the agreement ball")
    return f, g, a
