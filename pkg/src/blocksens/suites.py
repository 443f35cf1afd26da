"""Named verification suites driving the package's inequalities end to end.

Each suite generates seeded instances, checks the corresponding exact bound
or identity against brute force, and reports one record per instance.  A
record keeps the instance in its module file format so a failure can be
re-triggered from the printed counterexample.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .core import (
    TruthTable,
    block_sensitivity_report,
    bs_capped,
    relevant_vars,
    sensitivity_report,
)
from .dnf import Dnf, bounds_report, stats, to_truth_table
from .families import ambainis_sun, onesbound_tight, rubinstein, virza
from .lowsens import (
    BallValues,
    hypercubes_to_dnf,
    one_set_components,
    reconstruct_majority,
    reconstruct_monotone,
)
from .randgen import (
    random_block_dnf,
    random_compact_dnf,
    random_mixing_dnf,
    random_monotone_tt,
    random_nonconstant_tt,
    random_subcube_function,
    random_tblock_dnf,
)
from .witness import (
    block_greedy_bound,
    solve_sensitivity_problem,
    tblock_greedy_bound,
    witness_onesbound,
    zero_witness_block,
    zero_witness_tblock,
)

__all__ = ["SUITE_NAMES", "SuiteInstance", "VerifySuite", "run_suite"]


@dataclass(frozen=True)
class SuiteInstance:
    """One checked instance: what was measured, what bound it had to meet."""

    ident: str
    description: str
    ok: bool
    detail: str
    instance_text: str

    def to_dict(self) -> dict:
        return {
            "id": self.ident,
            "description": self.description,
            "ok": self.ok,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class VerifySuite:
    """Outcome of one named suite; passes iff every instance passes."""

    name: str
    seed: int
    instances: tuple

    @property
    def passed(self) -> bool:
        return all(inst.ok for inst in self.instances)

    @property
    def failures(self) -> tuple:
        return tuple(inst for inst in self.instances if not inst.ok)

    @property
    def exit_status(self) -> int:
        return 0 if self.passed else 1

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "seed": self.seed,
            "instances": len(self.instances),
            "failures": len(self.failures),
            "passed": self.passed,
        }


def _report(d, f, *, n_max, bs_max):
    return block_sensitivity_report(f, bs_max=bs_max or max(f.arity, 14), n_max=n_max)


def _pad_junta(g: TruthTable, arity: int) -> TruthTable:
    bits = 0
    for x in range(1 << arity):
        if g.value_at(x & (g.rows - 1)):
            bits |= 1 << x
    return TruthTable(arity, bits)


def _suite_gamma_bounds(seed, *, n_max=None, bs_max=None) -> VerifySuite:
    """width - gamma <= s1 <= width on compact DNFs; 2-mixing forces equality."""
    rng = random.Random(seed)
    out = []
    for i in range(100):
        arity = rng.randint(3, 10)
        d = random_compact_dnf(rng, arity)
        rep = bounds_report(d, n_max=n_max)
        ok = bool(rep.bounds_hold)
        detail = (
            f"s1={rep.s1} width={rep.width} gamma={rep.gamma} "
            f"mixing_max={rep.mixing_max}"
        )
        if rep.mixing_max >= 2 and not (rep.gamma == 0 and rep.s1_equals_width):
            ok = False
            detail += " (2-mixing but gamma != 0 or s1 != width)"
        out.append(
            SuiteInstance(
                f"gamma-{i:03d}",
                f"compact dnf arity={arity} terms={len(d.terms)}",
                ok,
                detail,
                d.to_text(),
            )
        )
    return VerifySuite("gamma-bounds", seed, tuple(out))


def _suite_block_4s2(seed, *, n_max=None, bs_max=None) -> VerifySuite:
    """bs0 = term count and bs0 <= 4 s^2 on block-property DNFs, with the
    greedy sensitivity bounds and both certified witnesses."""
    rng = random.Random(seed)
    out = []
    for i in range(200):
        arity = rng.randint(3, 12)
        d = random_block_dnf(rng, arity)
        f = to_truth_table(d, n_max=n_max)
        rep = _report(d, f, n_max=n_max, bs_max=bs_max)
        size, width = len(d.terms), d.width
        s = rep.s
        checks = {
            "bs0=dor": rep.bs0 == size,
            "bs0<=4s2": rep.bs0 <= 4 * s * s,
            "s>=greedy": s >= block_greedy_bound(size, width),
            "s>=width/2": 2 * s >= width,
        }
        wb = zero_witness_block(d)
        wo = witness_onesbound(d)
        checks["block-witness"] = wb.measured >= wb.guaranteed_bound
        checks["ones-witness"] = wo.measured >= wo.guaranteed_bound
        sol = solve_sensitivity_problem(f, rep.witness_bs0, rep.blocks_bs0, 4)
        checks["solve-c4"] = 4 * sol.measured * sol.measured >= rep.bs0
        bad = [k for k, v in checks.items() if not v]
        out.append(
            SuiteInstance(
                f"block-{i:03d}",
                f"block dnf arity={arity} terms={size} width={width}",
                not bad,
                f"bs0={rep.bs0} s={s} wb={wb.measured} wo={wo.measured} "
                f"solve={sol.measured}" + (f" FAILED={bad}" if bad else ""),
                d.to_text(),
            )
        )
    return VerifySuite("block-4s2", seed, tuple(out))


def _suite_tblock(seed, *, n_max=None, bs_max=None) -> VerifySuite:
    """t-block witnesses meet the greedy bound; the corollary gates on
    t <= dor/dand^(1+eps) for eps in {1, 1/2}."""
    rng = random.Random(seed)
    out = []
    for i in range(100):
        arity = rng.randint(3, 12)
        t = 2 + (i % 2)
        d = random_tblock_dnf(rng, arity, t)
        f = to_truth_table(d, n_max=n_max)
        rep = _report(d, f, n_max=n_max, bs_max=bs_max)
        size, width = len(d.terms), d.width
        s = rep.s
        wt = zero_witness_tblock(d, t)
        checks = {
            "bs0<=dor": rep.bs0 <= size,
            "t-witness": wt.measured >= tblock_greedy_bound(size, width, t),
        }
        gates = []
        if t * width * width <= size:
            checks["corollary-eps1"] = rep.bs0 <= t * (3 * s) ** 2
            gates.append("eps=1")
        if t * t * width**3 <= size * size:
            checks["corollary-eps1/2"] = rep.bs0 <= t * (3 * s) ** 3
            gates.append("eps=1/2")
        bad = [k for k, v in checks.items() if not v]
        out.append(
            SuiteInstance(
                f"tblock-{i:03d}",
                f"{t}-block dnf arity={arity} terms={size} width={width}",
                not bad,
                f"bs0={rep.bs0} s={s} wt={wt.measured} gates={gates or 'none'}"
                + (f" FAILED={bad}" if bad else ""),
                d.to_text(),
            )
        )
    return VerifySuite("tblock", seed, tuple(out))


def _suite_kenyon_kutin(seed, *, n_max=None, bs_max=None) -> VerifySuite:
    """bs_l <= (e/(l-1)!) s^l for every block-size cap l in 2..s."""
    rng = random.Random(seed)
    out = []
    for i in range(100):
        arity = rng.randint(2, 10)
        f = random_nonconstant_tt(rng, arity)
        s = sensitivity_report(f, n_max=n_max).s
        bad = []
        vals = []
        for ell in range(2, s + 1):
            val, _ = bs_capped(f, ell, bs_max=bs_max or max(arity, 14))
            vals.append(val)
            if val * math.factorial(ell - 1) > math.e * s**ell:
                bad.append(ell)
        out.append(
            SuiteInstance(
                f"kk-{i:03d}",
                f"random table arity={arity}",
                not bad,
                f"s={s} bs_l={vals}" + (f" FAILED at l={bad}" if bad else ""),
                f.to_text(),
            )
        )
    return VerifySuite("kenyon-kutin", seed, tuple(out))


def _suite_mixing_as(seed, *, n_max=None, bs_max=None) -> VerifySuite:
    """3 bs <= 2 s^2 - s under normalized block + transitive + 2-mixing,
    with equality on the Ambainis-Sun instances."""
    rng = random.Random(seed)
    out = []
    for n in (1, 2):
        inst = ambainis_sun(n)
        rep = inst.predicted
        ok = 3 * rep.bs == 2 * rep.s * rep.s - rep.s
        out.append(
            SuiteInstance(
                f"mix-as-n{n}",
                f"ambainis_sun({n}) composed",
                ok,
                f"s={rep.s} bs={rep.bs} (equality required)",
                inst.g_dnf.to_text(),
            )
        )
    i = 0
    while i < 40:
        arity = rng.randint(4, 10)
        d = random_mixing_dnf(rng, arity)
        f = to_truth_table(d, n_max=n_max)
        if len(relevant_vars(f)) < 2:
            continue
        rep = _report(d, f, n_max=n_max, bs_max=bs_max)
        st = stats(d)
        ok = (
            st.block
            and st.transitive
            and st.mixing_max >= 2
            and 3 * rep.bs <= 2 * rep.s * rep.s - rep.s
        )
        out.append(
            SuiteInstance(
                f"mix-{i:03d}",
                f"mixing dnf arity={arity} terms={len(d.terms)}",
                ok,
                f"s={rep.s} bs={rep.bs} mixing_max={st.mixing_max}",
                d.to_text(),
            )
        )
        i += 1
    return VerifySuite("mixing-AS", seed, tuple(out))


def _suite_families(seed, *, n_max=None, bs_max=None) -> VerifySuite:
    """Closed-form gap identities for the named families."""
    out = []
    for n in (1, 2):
        rep = rubinstein(n).predicted
        out.append(
            SuiteInstance(
                f"rubinstein-n{n}",
                f"rubinstein({n})",
                2 * rep.bs == rep.s * rep.s and rep.s == 2 * n,
                f"s={rep.s} bs={rep.bs} want bs=s^2/2",
                rubinstein(n).g_dnf.to_text(),
            )
        )
    for n in (1, 2):
        rep = virza(n).predicted
        out.append(
            SuiteInstance(
                f"virza-n{n}",
                f"virza({n})",
                2 * rep.bs == rep.s * rep.s + rep.s and rep.s == 2 * n + 1,
                f"s={rep.s} bs={rep.bs} want bs=(s^2+s)/2",
                virza(n).g_dnf.to_text(),
            )
        )
    for n in (1, 2):
        rep = ambainis_sun(n).predicted
        out.append(
            SuiteInstance(
                f"ambainis-sun-n{n}",
                f"ambainis_sun({n})",
                3 * rep.bs == 2 * rep.s * rep.s - rep.s and rep.s == 3 * n + 2,
                f"s={rep.s} bs={rep.bs} want bs=(2s^2-s)/3",
                ambainis_sun(n).g_dnf.to_text(),
            )
        )
    for n in (1, 2, 3):
        d = onesbound_tight(n)
        rep = sensitivity_report(to_truth_table(d), n_max=n_max)
        ok = rep.s0 == rep.s1 == n + 1 and d.width == 2 * n + 1
        out.append(
            SuiteInstance(
                f"onesbound-n{n}",
                f"onesbound_tight({n})",
                ok,
                f"s0={rep.s0} s1={rep.s1} want both={n + 1} = ceil(width/2)",
                d.to_text(),
            )
        )
    return VerifySuite("families", seed, tuple(out))


def _suite_reconstruction(seed, *, n_max=None, bs_max=None) -> VerifySuite:
    """Majority reconstruction round-trips from radius-2s balls; monotone
    reconstruction from the radius-s ball at the all-zeros input."""
    rng = random.Random(seed)
    out = []
    for i in range(50):
        k = rng.randint(1, 3)
        g = random_nonconstant_tt(rng, k)
        arity = rng.randint(2 * k, min(2 * k + 3, 10))
        f = _pad_junta(g, arity)
        s = sensitivity_report(f, n_max=n_max).s
        center = rng.randrange(1 << arity)
        ball = BallValues.from_function(f, center, 2 * s)
        got = reconstruct_majority(ball, s, n_max=n_max)
        out.append(
            SuiteInstance(
                f"majority-{i:03d}",
                f"junta arity={arity} s={s} center={center}",
                got.bits == f.bits,
                f"radius={2 * s} round-trip {'exact' if got.bits == f.bits else 'differs'}",
                ball.to_text(),
            )
        )
    for i in range(50):
        arity = rng.randint(2, 8)
        f = random_monotone_tt(rng, arity)
        s = sensitivity_report(f, n_max=n_max).s
        ball = BallValues.from_function(f, 0, s)
        got = reconstruct_monotone(ball, s, n_max=n_max)
        out.append(
            SuiteInstance(
                f"monotone-{i:03d}",
                f"monotone arity={arity} s={s}",
                got.bits == f.bits,
                f"radius={s} round-trip {'exact' if got.bits == f.bits else 'differs'}",
                ball.to_text(),
            )
        )
    return VerifySuite("reconstruction", seed, tuple(out))


def _suite_monotone_nisan(seed, *, n_max=None, bs_max=None) -> VerifySuite:
    """s(f) = bs(f) for monotone f (the global identity)."""
    rng = random.Random(seed)
    out = []
    for i in range(50):
        arity = rng.randint(2, 8)
        f = random_monotone_tt(rng, arity)
        rep = block_sensitivity_report(f, bs_max=bs_max or max(arity, 14), n_max=n_max)
        out.append(
            SuiteInstance(
                f"nisan-{i:03d}",
                f"monotone arity={arity}",
                rep.s == rep.bs,
                f"s={rep.s} bs={rep.bs}",
                f.to_text(),
            )
        )
    return VerifySuite("monotone-nisan", seed, tuple(out))


def _suite_hypercube(seed, *, n_max=None, bs_max=None) -> VerifySuite:
    """1-sets of s0=1 functions split into far-apart subcubes whose DNF
    keeps bs0 and the block/transitive/3-mixing structure."""
    rng = random.Random(seed)
    named = [
        ("rubinstein-g", to_truth_table(rubinstein(2).g_dnf)),
        ("ambainis-sun-g1", to_truth_table(ambainis_sun(1).g_dnf)),
        ("ambainis-sun-g2", to_truth_table(ambainis_sun(2).g_dnf)),
    ]
    out = []
    for ident, f in named:
        out.append(_hypercube_check(ident, ident, f, n_max, bs_max))
    for i in range(50):
        arity = rng.randint(3, 10)
        f = random_subcube_function(rng, arity)
        out.append(
            _hypercube_check(
                f"hcube-{i:03d}", f"subcube union arity={arity}", f, n_max, bs_max
            )
        )
    return VerifySuite("hypercube", seed, tuple(out))


def _hypercube_check(ident, desc, f, n_max, bs_max) -> SuiteInstance:
    comps, dists = one_set_components(f, n_max=n_max)
    rep = block_sensitivity_report(f, bs_max=bs_max or max(f.arity, 14), n_max=n_max)
    d = hypercubes_to_dnf(f, bs_max=bs_max or max(f.arity, 14), n_max=n_max)
    st = stats(d)
    out_rep = block_sensitivity_report(
        to_truth_table(d, n_max=n_max), bs_max=bs_max or max(f.arity, 14), n_max=n_max
    )
    ok = (
        all(c.is_subcube for c in comps)
        and all(v >= 3 for v in dists.values())
        and st.block
        and st.transitive
        and st.mixing_max >= 3
        and out_rep.bs0 == rep.bs0
    )
    return SuiteInstance(
        ident,
        desc,
        ok,
        f"components={len(comps)} min_dist="
        f"{min(dists.values()) if dists else 'n/a'} terms={len(d.terms)} "
        f"bs0={rep.bs0}->{out_rep.bs0}",
        f.to_text(),
    )


def _suite_senslower(seed, *, n_max=None, bs_max=None) -> VerifySuite:
    """s >= r^(1/3)/2 where r is the number of relevant variables, on
    block-property formulas; named inner functions included."""
    rng = random.Random(seed)
    out = []
    named = [(f"rubinstein-g{n}", rubinstein(n).g_dnf) for n in (1, 2, 3)]
    named += [(f"virza-g{n}", virza(n).g_dnf) for n in (1, 2)]
    named += [(f"ambainis-sun-g{n}", ambainis_sun(n).g_dnf) for n in (1, 2)]
    for i in range(60):
        arity = rng.randint(3, 12)
        named.append((f"senslower-{i:03d}", random_block_dnf(rng, arity)))
    for ident, d in named:
        f = to_truth_table(d, n_max=n_max)
        r = len(relevant_vars(f))
        s = sensitivity_report(f, n_max=n_max).s
        ok = 8 * s**3 >= r
        out.append(
            SuiteInstance(
                ident,
                f"block dnf arity={d.arity} relevant={r}",
                ok,
                f"s={s} need 8s^3={8 * s**3} >= {r}",
                d.to_text(),
            )
        )
    return VerifySuite("senslower", seed, tuple(out))


_SUITES = {
    "gamma-bounds": _suite_gamma_bounds,
    "block-4s2": _suite_block_4s2,
    "tblock": _suite_tblock,
    "kenyon-kutin": _suite_kenyon_kutin,
    "mixing-AS": _suite_mixing_as,
    "families": _suite_families,
    "reconstruction": _suite_reconstruction,
    "monotone-nisan": _suite_monotone_nisan,
    "hypercube": _suite_hypercube,
    "senslower": _suite_senslower,
}

SUITE_NAMES = tuple(_SUITES)


def run_suite(
    name: str, seed: int = 0, *, n_max: int | None = None, bs_max: int | None = None
) -> VerifySuite:
    try:
        fn = _SUITES[name]
    except KeyError:
        raise ValueError(
            f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}"
        ) from None
    return fn(seed, n_max=n_max, bs_max=bs_max)
