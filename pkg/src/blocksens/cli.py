"""Command-line surface: measures, property checks, witnesses, families,
reconstruction, and the theorem-verification suites.

Exit codes: 0 ok, 1 check failed, 2 usage or unparseable input, 3 capacity
exceeded, 4 data inconsistent with its promised hypothesis.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import bitops
from .core import TruthTable, block_sensitivity_report, sensitivity_report
from .dnf import Dnf, check_compact_form, stats, to_truth_table
from .errors import (
    CapacityError,
    DegenerateFunctionError,
    InconsistentDataError,
    ParseError,
    PropertyViolation,
    SolverFailure,
)
from .families import (
    ambainis_sun,
    onesbound_tight,
    proposition_pair,
    rubinstein,
    virza,
)
from .lowsens import (
    BallValues,
    agreement_radius,
    hypercubes_to_dnf,
    one_set_components,
    reconstruct_majority,
    reconstruct_monotone,
)
from .suites import SUITE_NAMES, run_suite
from .witness import (
    witness_2mixing_components,
    witness_onesbound,
    zero_witness_block,
    zero_witness_tblock,
)

__all__ = ["main"]


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _sniff(text: str) -> str:
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            return line.split()[0]
    raise ParseError("empty input")


def _load_table(text: str, *, n_max=None) -> TruthTable:
    kind = _sniff(text)
    if kind == "tt":
        return TruthTable.from_text(text)
    if kind == "dnf":
        return to_truth_table(Dnf.from_text(text), n_max=n_max)
    raise ParseError(f"expected a tt or dnf file, got header {kind!r}")


def _load_dnf(text: str) -> Dnf:
    kind = _sniff(text)
    if kind != "dnf":
        raise ParseError(f"expected a dnf file, got header {kind!r}")
    return Dnf.from_text(text)


def _emit(args, obj: dict, text_lines) -> None:
    if args.format == "json-lines":
        print(json.dumps(obj, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _bits_or_dash(x, arity: int) -> str:
    return "-" if x is None else bitops.input_to_str(x, arity)


def _blocks_or_dash(fam) -> str:
    if fam is None or len(fam) == 0:
        return "-"
    return " ".join(",".join(str(v) for v in blk) for blk in fam.as_sorted_tuples())


def cmd_measures(args) -> int:
    f = _load_table(_read_input(args.input), n_max=args.n_max)
    rep = block_sensitivity_report(f, bs_max=args.bs_max, n_max=args.n_max)
    lines = [
        f"arity={rep.arity}",
        f"s={rep.s}",
        f"s0={rep.s0}",
        f"s1={rep.s1}",
        f"bs={rep.bs}",
        f"bs0={rep.bs0}",
        f"bs1={rep.bs1}",
        f"witness_s0={_bits_or_dash(rep.witness_s0, rep.arity)}",
        f"witness_s1={_bits_or_dash(rep.witness_s1, rep.arity)}",
        f"witness_bs0={_bits_or_dash(rep.witness_bs0, rep.arity)}",
        f"witness_bs1={_bits_or_dash(rep.witness_bs1, rep.arity)}",
        f"blocks_bs0={_blocks_or_dash(rep.blocks_bs0)}",
        f"blocks_bs1={_blocks_or_dash(rep.blocks_bs1)}",
    ]
    _emit(args, rep.to_dict(), lines)
    return 0


_PROP_CHECKS = ("block", "transitive", "mixing", "compact", "normalized")


def cmd_props(args) -> int:
    d = _load_dnf(_read_input(args.input))
    st = stats(d)
    rep = check_compact_form(d, n_max=args.n_max)
    mixing = "inf" if math.isinf(st.mixing_max) else st.mixing_max
    obj = {
        "arity": d.arity,
        "terms": st.size,
        "width": st.width,
        "gamma": st.gamma,
        "t_min": st.t_min,
        "mixing_max": None if math.isinf(st.mixing_max) else st.mixing_max,
        "block": st.block,
        "transitive": st.transitive,
        "normalized": rep.normalized,
        "compact": rep.all_ok,
        "cond_a": rep.cond_a,
        "cond_b": rep.cond_b,
        "cond_c": rep.cond_c,
        "bs_at_zero": rep.bs_at_zero,
    }
    lines = [f"{k}={v}" if k != "mixing_max" else f"mixing_max={mixing}"
             for k, v in obj.items()]
    failed = []
    if args.check:
        values = {
            "block": st.block,
            "transitive": st.transitive,
            "mixing": st.mixing_max >= 2,
            "compact": rep.all_ok,
            "normalized": rep.normalized,
        }
        for name in args.check.split(","):
            name = name.strip()
            if name not in values:
                raise ValueError(
                    f"unknown check {name!r}; choose from {', '.join(_PROP_CHECKS)}"
                )
            if not values[name]:
                failed.append(name)
        obj["failed_checks"] = failed
        lines.append(f"failed_checks={','.join(failed) or '-'}")
    _emit(args, obj, lines)
    return 1 if failed else 0


def cmd_witness(args) -> int:
    d = _load_dnf(_read_input(args.input))
    if args.proc == "block":
        res = zero_witness_block(d)
    elif args.proc == "onesbound":
        res = witness_onesbound(d)
    elif args.proc == "tblock":
        res = zero_witness_tblock(d, args.t)
    else:
        res = witness_2mixing_components(d)
    obj = res.to_dict()
    _emit(args, obj, [f"{k}={v}" for k, v in obj.items()])
    return 0


def cmd_family(args) -> int:
    name = args.family
    if name == "proposition":
        if args.p is None or args.q is None:
            raise ValueError("proposition needs --p and --q")
        f, g, a = proposition_pair(args.p, args.q)
        center = a ^ (f.rows - 1)
        radius = agreement_radius(f, g, center)
        obj = {
            "family": "proposition",
            "p": args.p,
            "q": args.q,
            "arity": f.arity,
            "special_input": bitops.input_to_str(a, f.arity),
            "agreement_center": bitops.input_to_str(center, f.arity),
            "agreement_radius": radius,
            "f": f.to_text(),
            "g": g.to_text(),
        }
        lines = [
            f"family=proposition p={args.p} q={args.q} arity={f.arity}",
            f"special_input={obj['special_input']}",
            f"agreement_center={obj['agreement_center']}",
            f"agreement_radius={radius}",
            "f:",
            f.to_text().rstrip(),
            "g:",
            g.to_text().rstrip(),
        ]
        _emit(args, obj, lines)
        return 0
    if name == "onesbound-tight":
        d = onesbound_tight(args.n)
        rep = sensitivity_report(to_truth_table(d, n_max=args.n_max), n_max=args.n_max)
        obj = {
            "family": "onesbound-tight",
            "n": args.n,
            "arity": d.arity,
            "s0": rep.s0,
            "s1": rep.s1,
            "dnf": d.to_text(),
        }
        lines = [
            f"family=onesbound-tight n={args.n} arity={d.arity}",
            f"s0={rep.s0} s1={rep.s1}",
            "dnf:",
            d.to_text().rstrip(),
        ]
        _emit(args, obj, lines)
        return 0
    builders = {
        "rubinstein": rubinstein,
        "virza": virza,
        "ambainis-sun": ambainis_sun,
        "as": ambainis_sun,
    }
    inst = builders[name](args.n, bs_max=args.bs_max)
    obj = inst.to_dict()
    obj["g"] = inst.g_dnf.to_text()
    lines = [
        f"family={inst.name} n={inst.n} copies={inst.copies} "
        f"arity={inst.predicted.arity}",
        f"s={inst.predicted.s} bs={inst.predicted.bs}",
        "g:",
        inst.g_dnf.to_text().rstrip(),
    ]
    if args.expand:
        if inst.expanded_dnf is None:
            raise CapacityError(
                inst.predicted.arity, 32, "variable-disjoint expansion"
            )
        obj["expanded"] = inst.expanded_dnf.to_text()
        lines += ["expanded:", inst.expanded_dnf.to_text().rstrip()]
    _emit(args, obj, lines)
    return 0


def cmd_reconstruct(args) -> int:
    text = _read_input(args.input)
    if args.mode in ("majority", "monotone"):
        kind = _sniff(text)
        if kind != "ball":
            raise ParseError(f"expected a ball file, got header {kind!r}")
        ball = BallValues.from_text(text)
        if args.s_bound is None:
            raise ValueError(f"{args.mode} reconstruction needs --s-bound")
        if args.mode == "majority":
            out = reconstruct_majority(ball, args.s_bound, n_max=args.n_max)
        else:
            out = reconstruct_monotone(ball, args.s_bound, n_max=args.n_max)
        obj = {"mode": args.mode, "s_bound": args.s_bound, "tt": out.to_text()}
        _emit(args, obj, [out.to_text().rstrip()])
        return 0
    f = _load_table(text, n_max=args.n_max)
    if args.mode == "components":
        comps, dists = one_set_components(f, n_max=args.n_max)
        obj = {
            "arity": f.arity,
            "components": [
                {
                    "fixed": {str(v): bit for v, bit in c.fixed},
                    "free": list(c.free),
                    "dimension": c.dimension,
                    "is_subcube": c.is_subcube,
                    "members": [bitops.input_to_str(m, f.arity) for m in c.members],
                }
                for c in comps
            ],
            "distances": {f"{i},{j}": v for (i, j), v in dists.items()},
        }
        lines = [f"components={len(comps)}"]
        for idx, c in enumerate(comps):
            fixed = " ".join(
                f"{'+' if bit else '-'}{v}" for v, bit in c.fixed
            )
            lines.append(
                f"component {idx}: dimension={c.dimension} "
                f"subcube={c.is_subcube} fixed={fixed or '-'} "
                f"members={len(c.members)}"
            )
        for (i, j), v in sorted(dists.items()):
            lines.append(f"distance {i},{j}={v}")
        _emit(args, obj, lines)
        return 0
    d = hypercubes_to_dnf(f, bs_max=args.bs_max, n_max=args.n_max)
    obj = {"arity": d.arity, "terms": len(d.terms), "dnf": d.to_text()}
    _emit(args, obj, [d.to_text().rstrip()])
    return 0


def cmd_verify(args) -> int:
    suite = run_suite(args.suite, args.seed, n_max=args.n_max, bs_max=args.bs_max)
    if args.format == "json-lines":
        for inst in suite.instances:
            rec = inst.to_dict()
            if not inst.ok:
                rec["counterexample"] = inst.instance_text
            print(json.dumps(rec, sort_keys=True))
        print(json.dumps(suite.to_dict(), sort_keys=True))
    else:
        for inst in suite.instances:
            tag = " ok " if inst.ok else "FAIL"
            print(f"[{tag}] {inst.ident}: {inst.description}; {inst.detail}")
            if not inst.ok:
                print("--- counterexample ---")
                print(inst.instance_text.rstrip())
                print("---")
        print(
            f"suite {suite.name} (seed {suite.seed}): "
            f"{len(suite.instances)} instances, {len(suite.failures)} failures"
        )
    return suite.exit_status


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n-max", type=int, default=None,
                        help="override the arity cap for whole-table work")
    common.add_argument("--bs-max", type=int, default=None,
                        help="override the arity cap for block-sensitivity reports")
    common.add_argument("--format", choices=("text", "json-lines"), default="text")

    p = argparse.ArgumentParser(
        prog="blocksens",
        description="Exact sensitivity and block-sensitivity workbench.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("measures", parents=[common],
                        help="full measure report for a tt or dnf file")
    sp.add_argument("input", nargs="?", default="-",
                    help="tt or dnf file, or - for stdin")
    sp.set_defaults(func=cmd_measures)

    sp = sub.add_parser("props", parents=[common],
                        help="structural properties of a dnf file")
    sp.add_argument("input", nargs="?", default="-")
    sp.add_argument("--check", default=None,
                    help=f"comma list from {{{','.join(_PROP_CHECKS)}}}; "
                         "exit 1 if any fails")
    sp.set_defaults(func=cmd_props)

    sp = sub.add_parser("witness", parents=[common],
                        help="certified sensitivity witness for a dnf file")
    sp.add_argument("--proc", required=True,
                    choices=("block", "onesbound", "tblock", "mixing"))
    sp.add_argument("--t", type=int, default=1,
                    help="multiplicity bound for --proc tblock")
    sp.add_argument("input", nargs="?", default="-")
    sp.set_defaults(func=cmd_witness)

    sp = sub.add_parser("family", parents=[common],
                        help="named gap family instance")
    sp.add_argument("family", choices=("rubinstein", "virza", "ambainis-sun",
                                       "as", "onesbound-tight", "proposition"))
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--p", type=int, default=None)
    sp.add_argument("--q", type=int, default=None)
    sp.add_argument("--expand", action="store_true",
                    help="include the variable-disjoint OR expansion")
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("reconstruct", parents=[common],
                        help="rebuild a function from a ball, or analyze a 1-set")
    sp.add_argument("mode", choices=("majority", "monotone", "components",
                                     "extract"))
    sp.add_argument("input", nargs="?", default="-",
                    help="ball file for majority/monotone, tt or dnf otherwise")
    sp.add_argument("--s-bound", type=int, default=None)
    sp.set_defaults(func=cmd_reconstruct)

    sp = sub.add_parser("verify", parents=[common],
                        help="run a named theorem-verification suite")
    sp.add_argument("--suite", required=True, choices=SUITE_NAMES)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_verify)

    return p


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InconsistentDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (PropertyViolation, DegenerateFunctionError, SolverFailure) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
