"""Command-line front end.

Subcommands:
  groups  validate/inspect a group (and optionally its coset space)
  table   emit the structure-constant tensor of G/H, exact rationals
  conv    convolve two measures, on the group or on the quotient
  check   run named verification checks over one pair or the default catalog

Exit codes: 0 success / all checks pass, 1 check failure, 2 usage or input
error. JSON output carries no timings, so identical invocations are
byte-identical; timings appear only in text mode.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .errors import CosetAlgError
from .groups import (FiniteGroup, Subgroup, build_coset_space, builtin_from_token,
                     group_from_dict, group_to_dict, subgroup_from_tokens,
                     test_normality)
from .measures import (group_carrier, measure_from_dict, measure_to_dict,
                       quotient_carrier)
from .quotient_algebra import quotient_convolve, structure_table
from .quotient_ops import rho_from_dict
from .verifier import (CHECK_IDS, CatalogEntry, CheckSpec, build_entry,
                       default_catalog, exit_code, run_suite)

USAGE_ERROR = 2


def _load_json(path: str) -> dict:
    return json.loads(Path(path).read_text())


def _resolve_group(token: str) -> FiniteGroup:
    if token.startswith("builtin:"):
        return builtin_from_token(token)
    p = Path(token)
    if p.exists():
        return group_from_dict(_load_json(token))
    # bare builtin names like S3 are accepted too
    return builtin_from_token(token)


def _split_tokens(arg: str) -> list[str]:
    toks = [t for t in (s.strip() for s in arg.split(",")) if t]
    if not toks:
        raise CosetAlgError("empty generator list")
    return toks


def _resolve_subgroup(G: FiniteGroup, arg: Optional[str]) -> Subgroup:
    if arg is None:
        raise CosetAlgError("--subgroup is required for quotient operations")
    return subgroup_from_tokens(G, _split_tokens(arg))


def _emit(payload, fmt: str, text_renderer) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        text_renderer(payload)


def _cmd_groups(args) -> int:
    G = _resolve_group(args.group)
    payload = group_to_dict(G)
    if args.subgroup:
        H = _resolve_subgroup(G, args.subgroup)
        Q = build_coset_space(G, H)
        payload["subgroup"] = {
            "members": [G.labels[m] for m in H.members],
            "normal": test_normality(G, H),
        }
        payload["cosets"] = [[G.labels[int(y)] for y in Q.members(c)]
                             for c in range(Q.coset_count)]

    def render(d):
        print(f"group {d['name'] or '(unnamed)'}: order {len(d['elements'])}")
        print("elements:", " ".join(d["elements"]))
        if "subgroup" in d:
            sub = d["subgroup"]
            print(f"subgroup: order {len(sub['members'])}, "
                  f"{'normal' if sub['normal'] else 'not normal'}:",
                  " ".join(sub["members"]))
            for i, cos in enumerate(d["cosets"]):
                print(f"  C{i} = {{{', '.join(cos)}}}")

    _emit(payload, args.format, render)
    return 0


def _cmd_table(args) -> int:
    G = _resolve_group(args.group)
    H = _resolve_subgroup(G, args.subgroup)
    Q = build_coset_space(G, H)
    T = structure_table(Q)
    den = T.denominator
    def frac(v: int) -> str:
        f = Fraction(int(v), den)
        return f"{f.numerator}/{f.denominator}"

    payload = {
        "group": G.name,
        "cosets": list(Q.labels),
        "representatives": [G.labels[int(r)] for r in Q.reps],
        "c": [[[frac(v) for v in T.counts[a, b]]
               for b in range(T.coset_count)] for a in range(T.coset_count)],
    }

    def render(d):
        print(f"structure constants for {d['group']}/H, cosets: "
              + " ".join(f"{c}={r}H" for c, r in zip(d["cosets"], d["representatives"])))
        for a, block in enumerate(d["c"]):
            for b, row in enumerate(block):
                print(f"  c[{d['cosets'][a]}][{d['cosets'][b]}] = ({', '.join(row)})")

    _emit(payload, args.format, render)
    return 0


def _cmd_conv(args) -> int:
    G = _resolve_group(args.group)
    if args.quotient:
        H = _resolve_subgroup(G, args.subgroup)
        Q = build_coset_space(G, H)
        carrier = quotient_carrier(Q)
        T = structure_table(Q)
        m1 = measure_from_dict(carrier, _load_json(args.m1))
        m2 = measure_from_dict(carrier, _load_json(args.m2))
        out = quotient_convolve(T, m1, m2)
    else:
        from .measures import group_convolve
        carrier = group_carrier(G)
        m1 = measure_from_dict(carrier, _load_json(args.m1))
        m2 = measure_from_dict(carrier, _load_json(args.m2))
        out = group_convolve(G, m1, m2)
    payload = measure_to_dict(out)

    def render(d):
        for lab in carrier.labels:
            if lab in d["weights"]:
                re, im = d["weights"][lab]
                print(f"  {lab}: {re:+.12g}{im:+.12g}i")

    _emit(payload, args.format, render)
    return 0


def _cmd_check(args) -> int:
    if args.group is None:
        catalog = default_catalog()
    else:
        rho_dict = _load_json(args.rho) if args.rho else None
        if args.subgroup is None:
            raise CosetAlgError("--subgroup is required with --group")
        name = f"{args.group}/<{args.subgroup}>"
        entry = CatalogEntry(name=name, group=args.group,
                             subgroup=tuple(_split_tokens(args.subgroup)),
                             rho=rho_dict)
        build_entry(entry)  # validate eagerly: bad input exits 2, not 1
        catalog = [entry]
    ids = CHECK_IDS if args.prop == "all" else (args.prop,)
    specs = [CheckSpec(id=i, trials=args.trials, seed=args.seed,
                       tolerance=args.tol, mode=args.mode) for i in ids]
    start = time.perf_counter()
    reports = run_suite(catalog, specs, jobs=args.jobs)
    elapsed = time.perf_counter() - start

    if args.format == "json":
        print(json.dumps([r.to_dict() for r in reports], sort_keys=True))
    else:
        width = max(len(r.entry) for r in reports) if reports else 8
        for r in reports:
            line = (f"{r.status.upper():4s}  {r.id:14s}  {r.entry:{width}s}  "
                    f"residual={r.max_residual:.3g}  trials={r.trials_run}  "
                    f"t={r.elapsed_s * 1000:.0f}ms")
            if r.notes:
                line += f"  [{r.notes}]"
            print(line)
        fails = sum(r.status == "fail" for r in reports)
        infos = sum(r.status == "info" for r in reports)
        print(f"{len(reports)} checks: {len(reports) - fails - infos} pass, "
              f"{fails} fail, {infos} info  ({elapsed:.1f}s)")
    return exit_code(reports)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cosetalg",
        description="Measure algebras on finite coset spaces: convolution, "
                    "structure tables, and verification checks.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p, need_subgroup=False):
        p.add_argument("--group", required=False,
                       help="builtin:NAME(k) (e.g. builtin:S3, builtin:cyclic(6)) "
                            "or a path to a group JSON file")
        p.add_argument("--subgroup",
                       help="comma-separated generator tokens, e.g. \"(12)\" or \"i\"")
        p.add_argument("--format", choices=("json", "text"), default="text")

    p_groups = sub.add_parser("groups", help="validate and inspect a group")
    add_common(p_groups)

    p_table = sub.add_parser("table", help="emit the structure-constant tensor")
    add_common(p_table)

    p_conv = sub.add_parser("conv", help="convolve two measures")
    add_common(p_conv)
    p_conv.add_argument("--quotient", action="store_true",
                        help="convolve on the coset space instead of the group")
    p_conv.add_argument("--m1", required=True, help="first measure JSON file")
    p_conv.add_argument("--m2", required=True, help="second measure JSON file")

    p_check = sub.add_parser("check", help="run verification checks")
    add_common(p_check)
    p_check.add_argument("--rho", help="rho JSON file (default: constant 1)")
    p_check.add_argument("--prop", default="all", choices=("all",) + CHECK_IDS,
                         help="check id or 'all'")
    p_check.add_argument("--trials", type=int, default=100)
    p_check.add_argument("--seed", type=int, default=42)
    p_check.add_argument("--tol", type=float, default=None)
    p_check.add_argument("--mode", choices=("float", "exact"), default="float")
    p_check.add_argument("--jobs", type=int, default=1)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    handlers = {
        "groups": _cmd_groups,
        "table": _cmd_table,
        "conv": _cmd_conv,
        "check": _cmd_check,
    }
    try:
        for cmd in ("groups", "table"):
            if args.subcommand == cmd and args.group is None:
                raise CosetAlgError("--group is required")
        if args.subcommand == "conv" and args.group is None:
            raise CosetAlgError("--group is required")
        if args.subcommand == "table" and args.subgroup is None:
            raise CosetAlgError("--subgroup is required")
        return handlers[args.subcommand](args)
    except (CosetAlgError, OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
