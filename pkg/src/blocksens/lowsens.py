"""Reconstruction and structure of functions with low sensitivity.

A function with sensitivity at most s is pinned down by its values on a
Hamming ball of radius 2s, and a monotone one by a ball of radius s around
the all-zeros input.  A function whose zero-side sensitivity is exactly 1
has a 1-set that splits into subcubes pairwise at Hamming distance 3 or
more.  This module makes those facts executable: a ball container with a
text format, two reconstruction procedures, connected-component analysis
of the 1-set, and extraction of a block/transitive/3-mixing DNF from the
subcube structure.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from . import bitops, core
from .core import (
    DEFAULT_N_MAX,
    HARD_ARITY_LIMIT,
    TruthTable,
    block_sensitivity_at,
    block_sensitivity_report,
    is_monotone,
    sensitivity_report,
)
from .dnf import Dnf, Term, stats, to_truth_table
from .errors import (
    DegenerateFunctionError,
    InconsistentDataError,
    InternalInvariantError,
    ParseError,
    PropertyViolation,
)

__all__ = [
    "BallValues",
    "DISAGREE_AT_CENTER",
    "SubcubeComponent",
    "agreement_radius",
    "hypercubes_to_dnf",
    "one_set_components",
    "reconstruct_majority",
    "reconstruct_monotone",
]


class _DisagreeAtCenter:
    """Sentinel return of agreement_radius: no ball, not even radius 0, agrees."""

    __slots__ = ()

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return "DISAGREE_AT_CENTER"


DISAGREE_AT_CENTER = _DisagreeAtCenter()


def _ball_size(arity: int, radius: int) -> int:
    return sum(math.comb(arity, k) for k in range(radius + 1))


def _iter_ball(arity: int, center: int, radius: int):
    """Rows of the closed ball, by increasing distance from the center."""
    for d in range(radius + 1):
        for combo in itertools.combinations(range(arity), d):
            yield center ^ bitops.vars_to_mask(i + 1 for i in combo)


@dataclass(frozen=True)
class BallValues:
    """Function values on a closed Hamming ball.

    values maps every row within `radius` of `center` to 0 or 1; the domain
    must be exactly the closed ball, no point missing and none outside.
    """

    arity: int
    center: int
    radius: int
    values: dict

    def __post_init__(self):
        if not 1 <= self.arity <= HARD_ARITY_LIMIT:
            raise ValueError(
                f"arity must be between 1 and {HARD_ARITY_LIMIT}, got {self.arity}"
            )
        if not 0 <= self.radius <= self.arity:
            raise ValueError(f"radius {self.radius} outside 0..{self.arity}")
        if not 0 <= self.center < (1 << self.arity):
            raise ValueError(f"center {self.center} is not a {self.arity}-bit row")
        for x, bit in self.values.items():
            if not 0 <= x < (1 << self.arity):
                raise InconsistentDataError(f"row {x} is not a {self.arity}-bit row")
            if ((x ^ self.center).bit_count()) > self.radius:
                raise InconsistentDataError(
                    f"row {bitops.input_to_str(x, self.arity)} lies outside the "
                    f"radius-{self.radius} ball"
                )
            if bit not in (0, 1):
                raise InconsistentDataError(f"value at row {x} is {bit!r}, not a bit")
        want = _ball_size(self.arity, self.radius)
        if len(self.values) != want:
            raise InconsistentDataError(
                f"ball holds {len(self.values)} points, the closed radius-"
                f"{self.radius} ball has {want}"
            )

    @classmethod
    def from_function(cls, f: TruthTable, center: int, radius: int) -> "BallValues":
        if not 0 <= center < f.rows:
            raise ValueError(f"center {center} is not a {f.arity}-bit row")
        vals = {x: f.value_at(x) for x in _iter_ball(f.arity, center, radius)}
        return cls(f.arity, center, radius, vals)

    def value_at(self, x: int) -> int:
        try:
            return self.values[x]
        except KeyError:
            raise ValueError(
                f"row {bitops.input_to_str(x, self.arity)} is outside the ball"
            ) from None

    def to_text(self) -> str:
        lines = [
            f"ball {self.arity} {bitops.input_to_str(self.center, self.arity)} "
            f"{self.radius}"
        ]
        order = sorted(self.values, key=lambda x: ((x ^ self.center).bit_count(), x))
        for x in order:
            lines.append(f"{bitops.input_to_str(x, self.arity)} {self.values[x]}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "BallValues":
        arity = center = radius = None
        vals: dict = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            toks = line.split()
            if arity is None:
                if len(toks) != 4 or toks[0] != "ball":
                    raise ParseError(
                        "expected header 'ball <arity> <center> <radius>'", lineno
                    )
                try:
                    arity = int(toks[1])
                    radius = int(toks[3])
                except ValueError:
                    raise ParseError("arity and radius must be integers", lineno)
                if not 1 <= arity <= HARD_ARITY_LIMIT:
                    raise ParseError(
                        f"arity must be between 1 and {HARD_ARITY_LIMIT}, got {arity}",
                        lineno,
                    )
                center = bitops.str_to_input(toks[2], arity, lineno)
                continue
            if len(toks) != 2:
                raise ParseError("expected '<input-bitstring> <bit>'", lineno)
            x = bitops.str_to_input(toks[0], arity, lineno)
            if toks[1] not in ("0", "1"):
                raise ParseError(f"bad bit {toks[1]!r}", lineno)
            if x in vals:
                raise ParseError(f"duplicate point {toks[0]}", lineno)
            vals[x] = int(toks[1])
        if arity is None:
            raise ParseError("empty ball file")
        return cls(arity, center, radius, vals)


def agreement_radius(f: TruthTable, g: TruthTable, center: int, *, n_max=None):
    """Largest r such that f and g agree on the closed radius-r ball.

    Returns the arity when the functions are equal everywhere and the
    DISAGREE_AT_CENTER sentinel when they already differ at the center.
    """
    if f.arity != g.arity:
        raise ValueError(f"arity mismatch: {f.arity} vs {g.arity}")
    if not 0 <= center < f.rows:
        raise ValueError(f"center {center} is not a {f.arity}-bit row")
    core._check_cap(f.arity, DEFAULT_N_MAX, n_max, "agreement radius")
    diff = f.bits ^ g.bits
    if diff == 0:
        return f.arity
    nearest = f.arity + 1
    while diff:
        low = diff & -diff
        x = low.bit_length() - 1
        nearest = min(nearest, (x ^ center).bit_count())
        diff ^= low
    if nearest == 0:
        return DISAGREE_AT_CENTER
    return nearest - 1


def _layers(arity: int, center: int) -> list:
    out: list = [[] for _ in range(arity + 1)]
    for x in range(1 << arity):
        out[(x ^ center).bit_count()].append(x)
    return out


def reconstruct_majority(
    ball: BallValues, s_bound: int, *, n_max: int | None = None
) -> TruthTable:
    """Rebuild the unique function with sensitivity <= s_bound from a ball
    of radius at least 2*s_bound.

    Rows are filled by increasing distance d from the center; past the ball
    each row takes the strict majority of its d already-assigned neighbors
    at distance d-1 (at most s_bound of which can disagree with the true
    value, and d >= 2*s_bound + 1).  A majority tie, or a completed table
    whose sensitivity exceeds s_bound, means no function within the bound
    matches the ball and raises InconsistentDataError.
    """
    if s_bound < 0:
        raise ValueError(f"s_bound must be nonnegative, got {s_bound}")
    core._check_cap(ball.arity, DEFAULT_N_MAX, n_max, "majority reconstruction")
    if ball.radius < 2 * s_bound:
        raise ValueError(
            f"radius {ball.radius} below 2*s_bound = {2 * s_bound}: the ball "
            "does not determine the function"
        )
    n = ball.arity
    assigned = bytearray(1 << n)
    for x, bit in ball.values.items():
        assigned[x] = bit
    for d, layer in enumerate(_layers(n, ball.center)):
        if d <= ball.radius:
            continue
        for x in layer:
            mask = x ^ ball.center
            ones = 0
            while mask:
                low = mask & -mask
                ones += assigned[x ^ low]
                mask ^= low
            if 2 * ones == d:
                raise InconsistentDataError(
                    f"majority tie at distance {d} (row "
                    f"{bitops.input_to_str(x, n)}): ball values are "
                    f"inconsistent with sensitivity <= {s_bound}"
                )
            assigned[x] = 1 if 2 * ones > d else 0
    bits = 0
    for x in range(1 << n):
        if assigned[x]:
            bits |= 1 << x
    out = TruthTable(n, bits)
    rep = sensitivity_report(out, n_max=n_max)
    if rep.s > s_bound:
        raise InconsistentDataError(
            f"reconstruction has sensitivity {rep.s} > {s_bound}: ball values "
            "are inconsistent with the promised bound"
        )
    return out


def reconstruct_monotone(
    ball: BallValues, s_bound: int, *, n_max: int | None = None
) -> TruthTable:
    """Rebuild a monotone function with sensitivity <= s_bound from a ball
    of radius at least s_bound around the all-zeros input.

    Rows above the ball take the OR of their lower neighbors: a fresh
    minimal 1 at weight w would be sensitive to all w of its coordinates,
    so none can appear above weight s_bound.  A non-monotone completion
    raises InconsistentDataError.
    """
    if s_bound < 0:
        raise ValueError(f"s_bound must be nonnegative, got {s_bound}")
    if ball.center != 0:
        raise ValueError(
            "monotone reconstruction needs the ball centered at the all-zeros input"
        )
    core._check_cap(ball.arity, DEFAULT_N_MAX, n_max, "monotone reconstruction")
    if ball.radius < s_bound:
        raise ValueError(
            f"radius {ball.radius} below s_bound = {s_bound}: the ball does "
            "not determine a monotone function"
        )
    n = ball.arity
    assigned = bytearray(1 << n)
    for x, bit in ball.values.items():
        assigned[x] = bit
    for w, layer in enumerate(_layers(n, 0)):
        if w <= ball.radius:
            continue
        for x in layer:
            mask = x
            val = 0
            while mask and not val:
                low = mask & -mask
                val = assigned[x ^ low]
                mask ^= low
            assigned[x] = val
    bits = 0
    for x in range(1 << n):
        if assigned[x]:
            bits |= 1 << x
    out = TruthTable(n, bits)
    if not is_monotone(out):
        raise InconsistentDataError(
            "completion is not monotone: ball values do not come from a "
            f"monotone function with sensitivity <= {s_bound}"
        )
    return out


@dataclass(frozen=True)
class SubcubeComponent:
    """A connected component of the 1-set, tested for subcube shape.

    fixed pairs each forced coordinate (1-based) with its bit; free lists
    the coordinates left unconstrained.  The component is a subcube exactly
    when its members exhaust all settings of the free coordinates.
    """

    fixed: tuple
    free: tuple
    members: tuple

    @property
    def dimension(self) -> int:
        return len(self.free)

    @property
    def is_subcube(self) -> bool:
        return len(self.members) == 1 << len(self.free)

    def fixed_masks(self) -> tuple:
        """(care, value) masks over the forced coordinates."""
        care = val = 0
        for v, bit in self.fixed:
            care |= 1 << (v - 1)
            if bit:
                val |= 1 << (v - 1)
        return care, val


def _component_of(members: list, arity: int) -> SubcubeComponent:
    and_all = or_all = members[0]
    for m in members:
        and_all &= m
        or_all |= m
    fixed = []
    free = []
    for i in range(arity):
        bit = 1 << i
        if or_all & bit and not and_all & bit:
            free.append(i + 1)
        else:
            fixed.append((i + 1, 1 if and_all & bit else 0))
    return SubcubeComponent(tuple(fixed), tuple(free), tuple(sorted(members)))


def _component_distance(a: SubcubeComponent, b: SubcubeComponent) -> int:
    if a.is_subcube and b.is_subcube:
        care_a, val_a = a.fixed_masks()
        care_b, val_b = b.fixed_masks()
        return ((val_a ^ val_b) & care_a & care_b).bit_count()
    return min((x ^ y).bit_count() for x in a.members for y in b.members)


def one_set_components(f: TruthTable, *, n_max: int | None = None) -> tuple:
    """Connected components of the 1-set, with pairwise Hamming distances.

    Returns (components, distances): components sorted by least member,
    distances keyed by index pairs (i, j) with i < j.  When f is
    nonconstant with zero-side sensitivity exactly 1, every component must
    be a subcube and components must be pairwise at distance >= 3; a
    violation would be a bug here, not a property of the input.
    """
    core._check_cap(f.arity, DEFAULT_N_MAX, n_max, "one-set components")
    n = f.arity
    seen = bytearray(1 << n)
    comps = []
    for start in range(1 << n):
        if seen[start] or not f.value_at(start):
            continue
        seen[start] = 1
        stack = [start]
        members = []
        while stack:
            x = stack.pop()
            members.append(x)
            for i in range(n):
                y = x ^ (1 << i)
                if not seen[y] and f.value_at(y):
                    seen[y] = 1
                    stack.append(y)
        comps.append(_component_of(members, n))
    components = tuple(comps)
    distances = {
        (i, j): _component_distance(components[i], components[j])
        for i in range(len(components))
        for j in range(i + 1, len(components))
    }
    if f.has_zeros and f.has_ones:
        rep = sensitivity_report(f, n_max=n_max)
        if rep.s0 == 1:
            for idx, comp in enumerate(components):
                if not comp.is_subcube:
                    raise InternalInvariantError(
                        f"s0 = 1 but component {idx} is not a subcube"
                    )
            for (i, j), d in distances.items():
                if d < 3:
                    raise InternalInvariantError(
                        f"s0 = 1 but components {i} and {j} sit at distance {d}"
                    )
    return components, distances


def hypercubes_to_dnf(
    f: TruthTable, *, bs_max: int | None = None, n_max: int | None = None
) -> Dnf:
    """Extract a block/transitive/3-mixing DNF from a function whose
    zero-side sensitivity is exactly 1.

    Needs f nonconstant with f = 0 at the all-zeros input and the zero-side
    block sensitivity attained there.  The 1-set then splits into subcubes;
    one term is kept per subcube hit by the optimal disjoint block family
    at the all-zeros input (positive part = coordinates fixed to 1,
    negative part = coordinates fixed to 0).  The result keeps bs0 and does
    not raise s1.
    """
    if not (f.has_zeros and f.has_ones):
        raise DegenerateFunctionError("constant function has no subcube structure")
    rep = block_sensitivity_report(f, bs_max=bs_max, n_max=n_max)
    if rep.s0 != 1:
        raise PropertyViolation(
            "unit-zero-sensitivity", f"s0 = {rep.s0}, need exactly 1"
        )
    if f.value_at(0):
        raise PropertyViolation(
            "zero-at-origin", "f is 1 at the all-zeros input"
        )
    count, fam = block_sensitivity_at(f, 0, n_max=n_max)
    if count != rep.bs0:
        raise PropertyViolation(
            "bs0-at-origin",
            f"bs0 = {rep.bs0} is attained elsewhere, only {count} disjoint "
            "blocks at the all-zeros input",
        )
    components, _ = one_set_components(f, n_max=n_max)
    where = {}
    for idx, comp in enumerate(components):
        for m in comp.members:
            where[m] = idx
    kept = []
    for block in fam:
        idx = where[bitops.vars_to_mask(block)]
        if idx in kept:
            raise InternalInvariantError(
                "two disjoint blocks at the all-zeros input landed in one subcube"
            )
        kept.append(idx)
    terms = []
    for idx in kept:
        comp = components[idx]
        pos = frozenset(v for v, bit in comp.fixed if bit)
        neg = frozenset(v for v, bit in comp.fixed if not bit)
        terms.append(Term(pos, neg))
    out = Dnf(f.arity, tuple(terms))
    st = stats(out)
    if not (st.block and st.transitive and st.mixing_max >= 3):
        raise InternalInvariantError(
            "extracted DNF misses block/transitive/3-mixing structure"
        )
    out_rep = block_sensitivity_report(
        to_truth_table(out, n_max=n_max), bs_max=bs_max, n_max=n_max
    )
    if out_rep.bs0 != rep.bs0 or out_rep.s1 > rep.s1:
        raise InternalInvariantError(
            f"extraction changed the measures: bs0 {rep.bs0} -> {out_rep.bs0}, "
            f"s1 {rep.s1} -> {out_rep.s1}"
        )
    return out
