"""Command-line front end.

Exit status: 0 pass, 1 verification failure, 2 usage or parameter error,
3 overflow or search-budget refusal.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .blocks import (
    UnsupportedParameters,
    all_families,
    decompose,
    generator_set,
    parse_spec,
    psi_embed,
    NotAMember,
)
from .congruence import QuotientOverflow, quotient_enumerate
from .enumeration import (
    BudgetExceeded,
    EnumerationOverflow,
    enumerate_monoid,
    green_summary,
    minimal_generating_size,
    rank_lower_bound_check,
    read_table,
    size_formula,
    write_table,
)
from .pperm import PartialPermError, from_text, to_text
from .presentations import (
    PRESETS,
    build_preset,
    check_relations,
    read_interpretation,
    read_presentation,
    write_interpretation,
    write_presentation,
)
from .verify import verify_instance

OK, FAILED, USAGE, OVERFLOW = 0, 1, 2, 3
MAX_DEFAULT_TARGET = 10**6


class UsageError(Exception):
    pass


def _spec(text):
    try:
        return parse_spec(text)
    except (ValueError, UnsupportedParameters) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _emit(lines, out=None):
    text = "\n".join(lines) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _default_bound(spec) -> int:
    target = size_formula(spec.k, spec.m)
    if target > MAX_DEFAULT_TARGET:
        raise UsageError(f"|POI_{spec}| = {target} is too large for a default bound; pass --bound")
    return 10 * target


def _load_table(args):
    if args.table:
        return read_table(Path(args.table).read_text())
    return enumerate_monoid(args.spec.n, generator_set(args.spec, args.gens).values())


def cmd_size(args):
    print(size_formula(args.k, args.m))
    return OK


def cmd_enumerate(args):
    table = enumerate_monoid(args.spec.n, generator_set(args.spec, args.gens).values())
    text = write_table(table)
    if args.out:
        Path(args.out).write_text(text)
        print(f"degree={table.degree} size={len(table)} gens={len(table.generators)} out={args.out}")
    else:
        sys.stdout.write(text)
    return OK


def cmd_gens(args):
    lines = []
    for fam in all_families(args.spec):
        lines.extend(f"{name} {to_text(p)}" for name, p in zip(fam.names(), fam.members))
    _emit(lines, args.out)
    return OK


def cmd_green(args):
    summary = green_summary(args.spec, _load_table(args))
    _emit(summary.lines(), args.out)
    return OK if summary.passed else FAILED


def cmd_rank(args):
    spec = args.spec
    gens = list(generator_set(spec, "dx").values())
    table = _load_table(args)
    verdict = rank_lower_bound_check(spec, table, gens)
    lines = verdict.lines()
    ok = verdict.certifies_rank
    if args.exhaustive:
        search = minimal_generating_size(table, search_cap=2 * spec.k, budget=args.budget,
                                         spec=spec)
        witness = " ".join(to_text(table.elements[i]) for i in search.witness or ())
        lines.append(f"exhaustive_rank={search.size} subsets_checked={search.subsets_checked}")
        lines.append(f"witness={witness}")
        ok &= search.size == 2 * spec.k
    lines.append(f"{'PASS' if ok else 'FAIL'} rank={2 * spec.k if ok else 'uncertified'}")
    _emit(lines, args.out)
    return OK if ok else FAILED


def _instance(args):
    if args.presentation:
        pres = read_presentation(Path(args.presentation).read_text())
        if not args.interpretation:
            raise UsageError("--presentation needs --interpretation")
        phi = read_interpretation(Path(args.interpretation).read_text())
        return pres, phi, "custom"
    if not args.preset:
        raise UsageError("give --preset or --presentation")
    pres, phi = build_preset(args.spec.k, args.spec.m, args.preset)
    return pres, phi, args.preset.upper()


def cmd_check_relations(args):
    pres, phi, label = _instance(args)
    report = check_relations(pres, phi)
    lines = report.lines()
    lines[0] = f"{lines[0]} preset={label} k={args.spec.k} m={args.spec.m}"
    _emit(lines, args.out)
    return OK if report.passed else FAILED


def cmd_verify_presentation(args):
    pres, phi, label = _instance(args)
    bound = args.bound or _default_bound(args.spec)
    try:
        verdict = verify_instance(pres, phi, args.spec, bound, label)
    except QuotientOverflow as exc:
        print(f"FAIL overflow preset={label} k={args.spec.k} m={args.spec.m} bound={bound}: "
              f"{exc}; raise --bound", file=sys.stderr)
        return OVERFLOW
    _emit(verdict.lines(), args.out)
    return OK if verdict.passed else FAILED


def cmd_presentation(args):
    pres, phi = build_preset(args.spec.k, args.spec.m, args.preset)
    if args.out:
        Path(args.out).write_text(write_presentation(pres))
    else:
        sys.stdout.write(write_presentation(pres))
    if args.interpretation:
        Path(args.interpretation).write_text(write_interpretation(phi))
    return OK


def cmd_quotient(args):
    pres = read_presentation(Path(args.presentation).read_text())
    q = quotient_enumerate(pres, args.bound)
    lines = [f"classes={q.size}"]
    lines.extend(f"{i} {' '.join(w) or '1'}" for i, w in enumerate(q.representatives))
    _emit(lines, args.out)
    return OK


def cmd_decompose(args):
    alpha = from_text(args.map)
    theta, gamma = decompose(args.spec, alpha)
    print(f"theta={to_text(theta)}")
    print(f"psi_theta={to_text(psi_embed(args.spec, theta))}")
    print(f"gamma={to_text(gamma)}")
    return OK


def cmd_selftest(args):
    from .selftest import run_all

    results = run_all(set(args.only) if args.only else None)
    for r in results:
        print(r.line())
    passed = all(r.passed for r in results)
    print(f"{'PASS' if passed else 'FAIL'} selftest criteria={len(results)} "
          f"failed={sum(not r.passed for r in results)}")
    return OK if passed else FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="poikm", description="Construct and verify the monoids POI_{k x m}.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("size", help="print the size formula")
    p.add_argument("k", type=int)
    p.add_argument("m", type=int)
    p.set_defaults(func=cmd_size)

    def with_spec(name, help_text, func):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("spec", type=_spec, help="block spec such as 3x2")
        p.add_argument("--out", help="write the report to this file")
        p.set_defaults(func=func)
        return p

    p = with_spec("enumerate", "enumerate the monoid and export its table", cmd_enumerate)
    p.add_argument("--gens", choices=("abx", "bcx", "dx"), default="dx")

    with_spec("gens", "print the generator families", cmd_gens)

    for name, func, text in [("green", cmd_green, "Green's relations summary"),
                             ("rank", cmd_rank, "rank certificate for D u X")]:
        p = with_spec(name, text, func)
        p.add_argument("--gens", choices=("abx", "bcx", "dx"), default="dx")
        p.add_argument("--table", help="read an exported table instead of enumerating")
        if name == "rank":
            p.add_argument("--exhaustive", action="store_true")
            p.add_argument("--budget", type=int, default=10**6)

    for name, func, text in [("check-relations", cmd_check_relations, "check relations under phi"),
                             ("verify-presentation", cmd_verify_presentation,
                              "relations plus quotient size")]:
        p = with_spec(name, text, func)
        p.add_argument("--preset", type=str.upper, choices=PRESETS)
        p.add_argument("--presentation", help="presentation file instead of a preset")
        p.add_argument("--interpretation", help="interpretation map file")
        if name == "verify-presentation":
            p.add_argument("--bound", type=int, help="class bound (default 10 x |POI|)")

    p = with_spec("presentation", "write a preset presentation file", cmd_presentation)
    p.add_argument("--preset", type=str.upper, choices=PRESETS, required=True)
    p.add_argument("--interpretation", help="also write the interpretation map here")

    p = sub.add_parser("quotient", help="enumerate the monoid of a presentation file")
    p.add_argument("presentation")
    p.add_argument("--bound", type=int, default=10**5)
    p.add_argument("--out")
    p.set_defaults(func=cmd_quotient)

    p = with_spec("decompose", "split a member as psi(theta) gamma", cmd_decompose)
    p.add_argument("--map", required=True, help='partial permutation, e.g. "4;1>4,2>3"')

    p = sub.add_parser("selftest", help="run the acceptance checks")
    p.add_argument("--only", type=int, nargs="*", help="criterion numbers")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args)
    except (QuotientOverflow, EnumerationOverflow, BudgetExceeded) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return OVERFLOW
    except (UsageError, UnsupportedParameters, PartialPermError, NotAMember, ValueError,
            OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
