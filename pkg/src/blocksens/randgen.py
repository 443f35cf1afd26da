"""Seeded random instance generators for suites and tests.

Every generator takes a random.Random as its first argument so callers own
the seed. Property-conditioned sampling: positive sets come from partition
slices when pairwise disjointness is required, capacity counters enforce
bounded positive multiplicity, and compact-form conditions are repaired by a
polarity shift plus covered-term pruning (both function-preserving where
stated) rather than resampling blindly.
"""

from __future__ import annotations

from . import core
from .bitops import or_over_subsets
from .core import TruthTable
from .dnf import (
    Dnf,
    Term,
    check_compact_form,
    prune_covered_terms,
    stats,
    to_truth_table,
    xor_shift_dnf,
)
from .errors import SolverFailure


def random_truth_table(rng, arity: int, *, density: float = 0.5) -> TruthTable:
    rows = 1 << arity
    bits = 0
    for k in range(rows):
        if rng.random() < density:
            bits |= 1 << k
    return TruthTable(arity, bits)


def random_nonconstant_tt(rng, arity: int) -> TruthTable:
    while True:
        t = random_truth_table(rng, arity)
        if t.has_zeros and t.has_ones:
            return t


def random_monotone_tt(rng, arity: int, *, density: float = 0.25) -> TruthTable:
    """Upward closure of a sparse random set (an up-set, hence monotone)."""
    seed_table = random_truth_table(rng, arity, density=density)
    return TruthTable(arity, or_over_subsets(seed_table.bits, arity))


def _partition_slices(rng, arity: int, parts: int, *, spread: int | None = None):
    """parts pairwise-disjoint nonempty variable sets from a shuffled pool."""
    pool = list(range(1, arity + 1))
    rng.shuffle(pool)
    total = rng.randint(parts, min(arity, spread or arity))
    cuts = sorted(rng.sample(range(1, total), parts - 1)) if parts > 1 else []
    bounds = [0] + cuts + [total]
    return [frozenset(pool[bounds[i]:bounds[i + 1]]) for i in range(parts)]


def random_block_dnf(
    rng,
    arity: int,
    *,
    max_terms: int | None = None,
    neg_density: float = 0.3,
    ensure_private: bool = True,
) -> Dnf:
    """Pairwise-disjoint positive sets; negatives drawn from the leftovers.

    With ensure_private the covered terms are pruned away, which together with
    disjoint nonempty positive sets yields every compact-form condition.
    """
    k = rng.randint(1, max_terms or max(1, arity // 2))
    positives = _partition_slices(rng, arity, k)
    terms = []
    for pos in positives:
        rest = [v for v in range(1, arity + 1) if v not in pos]
        neg = frozenset(v for v in rest if rng.random() < neg_density)
        terms.append(Term(pos, neg))
    d = Dnf(arity, tuple(terms))
    if ensure_private:
        d = prune_covered_terms(d)
    return d


def random_tblock_dnf(
    rng, arity: int, t: int, *, max_terms: int | None = None,
    max_width: int | None = None, neg_density: float = 0.2,
) -> Dnf:
    """Positive multiplicity of every variable capped at t."""
    cap = {v: t for v in range(1, arity + 1)}
    k = rng.randint(2, max_terms or arity)
    terms = []
    for _ in range(k):
        open_vars = [v for v in cap if cap[v] > 0]
        if not open_vars:
            break
        wide = max(1, min(len(open_vars), max_width or arity // 2))
        w = rng.randint(1, wide)
        pos = frozenset(rng.sample(open_vars, w))
        for v in pos:
            cap[v] -= 1
        rest = [v for v in range(1, arity + 1) if v not in pos]
        neg = frozenset(v for v in rest if rng.random() < neg_density)
        terms.append(Term(pos, neg))
    return Dnf(arity, tuple(terms))


def random_compact_dnf(rng, arity: int, *, max_terms: int | None = None) -> Dnf:
    """Unconstrained terms repaired to compact form.

    Repair: shift literal polarities by a zero-side input attaining the
    maximum zero-side block sensitivity (the shifted formula then attains it
    at the all-zeros input; positive sets stay nonempty automatically), then
    prune covered terms. Both steps preserve the represented function up to
    the shift.
    """
    k = rng.randint(1, max_terms or max(2, arity // 2))
    terms = []
    for _ in range(k):
        w = rng.randint(1, max(1, (2 * arity) // 3))
        vs = rng.sample(range(1, arity + 1), w)
        keep = rng.randint(1, w)
        terms.append(Term(frozenset(vs[:keep]), frozenset(vs[keep:])))
    d = Dnf(arity, tuple(terms))
    rep = core.block_sensitivity_report(to_truth_table(d), bs_max=arity)
    shift = rep.witness_bs0
    if shift is None:
        shift = 0
    d = xor_shift_dnf(d, shift)
    return prune_covered_terms(d)


def random_mixing_dnf(rng, arity: int, *, attempts: int = 60) -> Dnf:
    """Normalized block + transitive + 2-mixing formula from component recipes.

    Components over disjoint variable pools: complementary pairs (conflict =
    pool size), conflict-2 pairs, and singleton terms. Candidates failing the
    normalized compact-form check are resampled.
    """
    for _ in range(attempts):
        pool = list(range(1, arity + 1))
        rng.shuffle(pool)
        terms = []
        while len(pool) >= 2 and len(terms) < 6:
            options = ["single", "pair"]
            if len(pool) >= 4:
                options.append("two")
            kind = rng.choice(options)
            if kind == "single":
                take = rng.randint(1, min(3, len(pool)))
                chunk, pool = pool[:take], pool[take:]
                split = rng.randint(1, take) if take > 1 else 1
                terms.append(
                    Term(frozenset(chunk[:split]), frozenset(chunk[split:]))
                )
            elif kind == "pair":
                w = rng.randint(1, min(3, len(pool) // 2))
                chunk, pool = pool[: 2 * w], pool[2 * w:]
                a, b = frozenset(chunk[:w]), frozenset(chunk[w:])
                terms.append(Term(a, b))
                terms.append(Term(b, a))
            else:
                chunk, pool = pool[:4], pool[4:]
                va, vb, vc, vd = chunk
                terms.append(Term(frozenset({va, vb}), frozenset({vc})))
                terms.append(Term(frozenset({vc, vd}), frozenset({va})))
        if not terms:
            continue
        d = Dnf(arity, tuple(terms))
        st = stats(d)
        if not (st.block and st.transitive and st.mixing_max >= 2):
            continue
        if check_compact_form(d, n_max=arity).normalized:
            return d
    raise SolverFailure(
        f"no normalized 2-mixing instance found in {attempts} attempts"
    )


def random_subcube_function(
    rng, arity: int, *, max_cubes: int = 3, attempts: int = 200
) -> TruthTable:
    """Union of subcubes at pairwise distance >= 3, shifted so the zero-side
    block sensitivity peaks at the all-zeros input (which then lies outside
    every cube). Every zero input of the result has sensitivity at most 1.
    """
    cubes = []
    want = rng.randint(1, max_cubes)
    for _ in range(attempts):
        if len(cubes) == want:
            break
        fixed = rng.randint(1, arity)
        care = 0
        for v in rng.sample(range(arity), fixed):
            care |= 1 << v
        val = 0
        for v in range(arity):
            if (care >> v) & 1 and rng.random() < 0.5:
                val |= 1 << v
        if all(
            bin((val ^ v2) & care & c2).count("1") >= 3 for c2, v2 in cubes
        ):
            cubes.append((care, val))
    if not cubes:
        cubes = [((1 << arity) - 1, (1 << arity) - 1)]
    bits = 0
    for x in range(1 << arity):
        if any((x & care) == val for care, val in cubes):
            bits |= 1 << x
    g = TruthTable(arity, bits)
    if not g.has_zeros:
        return random_subcube_function(
            rng, arity, max_cubes=max_cubes, attempts=attempts
        )
    rep = core.block_sensitivity_report(g, bs_max=arity)
    return core.xor_shift(g, rep.witness_bs0)
