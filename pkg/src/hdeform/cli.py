"""Command-line front end: ``hdeform <command> ...`` (or ``python3 -m hdeform``)."""

import argparse
import json
import sys

from . import presets, theorems
from .algebra import DEFAULT_STEP_LIMIT
from .errors import ParseError, PoleAtOne, StepLimitExceeded, UnknownGenerator
from .supermatrix import MATRIX_NAMES, build_matrix

USAGE_ERROR = 2
COMPUTATION_ERROR = 3


class UsageError(Exception):
    pass


def _parser():
    p = argparse.ArgumentParser(prog="hdeform", description=(
        "Exact normal forms and identity checks for the q- and h-deformed Gr(1|1)."))
    p.add_argument("--step-limit", type=int, default=DEFAULT_STEP_LIMIT,
                   help="rewrite step cap per word (default %(default)s)")
    sub = p.add_subparsers(dest="command", required=True)

    nf = sub.add_parser("nf", help="normal form of an expression in a preset")
    nf.add_argument("preset")
    nf.add_argument("expression")

    pr = sub.add_parser("presets", help="list presets or export them as JSON")
    pr.add_argument("--export", metavar="PATH")
    pr.add_argument("--show", metavar="NAME", help="print the rules of one preset")

    ct = sub.add_parser("contract", help="q -> 1 contractions")
    ct.add_argument("what", choices=("plane", "rmatrix", "group"))
    ct.add_argument("--side", choices=("left", "right"), default="left",
                    help="action of g on the plane coordinates")
    ct.add_argument("--h0", action="store_true", help="set h = 0 first")

    vf = sub.add_parser("verify", help="run identity checks")
    vf.add_argument("check", nargs="?", default="all")
    vf.add_argument("--json", metavar="PATH", help="write the report ('-' for stdout)")
    vf.add_argument("--convention", default="graded",
                    choices=("graded", "ungraded", "graded_leg", "both"))
    vf.add_argument("--list", action="store_true", help="list check names and exit")

    mx = sub.add_parser("matrix", help="print a named matrix")
    mx.add_argument("name")
    mx.add_argument("--at-q1", action="store_true", help="evaluate entries at q = 1")
    mx.add_argument("--h0", action="store_true", help="set h = 0")
    mx.add_argument("--json", action="store_true", help="print as a JSON array")
    return p


def _preset(name):
    try:
        return presets.build(name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


def cmd_nf(args, out):
    system = _preset(args.preset)
    try:
        e = system.element(args.expression)
    except (ParseError, UnknownGenerator) as exc:
        raise UsageError(f"cannot parse {args.expression!r}: {exc}") from None
    print(system.normal_form(e, step_limit=args.step_limit), file=out)


def cmd_presets(args, out):
    if args.show:
        system = _preset(args.show)
        print(f"{system.label}: generators {', '.join(system.alphabet.names)}", file=out)
        for r in system.rules:
            print(f"  {r}", file=out)
        return
    if args.export:
        presets.export_presets(args.export)
        print(f"wrote {len(presets.PRESET_NAMES)} presets to {args.export}", file=out)
        return
    for name in presets.PRESET_NAMES:
        system = presets.build(name)
        print(f"{name:16} {len(system.rules):3} rules  generators: "
              f"{' '.join(system.alphabet.names)}", file=out)


def cmd_contract(args, out):
    if args.what == "plane":
        for src in ("Aq", "AqDual"):
            system = theorems.contract_plane(src, args.side, h_zero=args.h0)
            print(f"{src} -> q=1:", file=out)
            for r in theorems.proper_rules(system):
                print(f"  {r}", file=out)
    elif args.what == "rmatrix":
        print(theorems.contract_R(h_zero=args.h0).grid(), file=out)
    else:
        system = theorems.derive_GrH_via_similarity(h_zero=args.h0)
        print("g T g^-1 with the Gr_q relations at q=1:", file=out)
        for r in theorems.proper_rules(system):
            print(f"  {r}", file=out)


def cmd_verify(args, out):
    conventions = ("graded", "ungraded") if args.convention == "both" else (args.convention,)
    if args.list:
        for name in theorems.check_names(conventions):
            print(name, file=out)
        return 0
    try:
        names = theorems.select(args.check, conventions)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    results = [theorems.run_check(n) for n in names]
    for r in results:
        print(r.line(), file=out)
        if not r.ok:
            for w in r.witnesses:
                print(f"         {w}", file=out)
    rep = theorems.report(results, conventions)
    failed = rep["summary"]["failed"]
    print(f"{len(results)} checks, {rep['summary']['ok']} as expected, {len(failed)} failed",
          file=out)
    if args.json:
        text = json.dumps(rep, indent=2, ensure_ascii=False)
        if args.json == "-":
            print(text, file=out)
        else:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
    return 0 if rep["ok"] else 1


def cmd_matrix(args, out):
    if args.name not in MATRIX_NAMES:
        raise UsageError(f"unknown matrix {args.name!r}; choose from {', '.join(MATRIX_NAMES)}")
    m = build_matrix(args.name)
    if args.h0:
        m = m.at_h_zero()
    if args.at_q1:
        m = m.limit_at_one()
    print(json.dumps(m.to_json()) if args.json else m.grid(), file=out)


COMMANDS = {"nf": cmd_nf, "presets": cmd_presets, "contract": cmd_contract,
            "verify": cmd_verify, "matrix": cmd_matrix}


def run(argv=None, out=None, err=None):
    """Execute one command; returns the exit status."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    try:
        status = COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"hdeform: error: {exc}", file=err)
        return USAGE_ERROR
    except PoleAtOne as exc:
        print(f"hdeform: pole at q = 1 in {args.command}: {exc}", file=err)
        return COMPUTATION_ERROR
    except StepLimitExceeded as exc:
        print(f"hdeform: step limit exceeded in {args.command}: {exc}", file=err)
        return COMPUTATION_ERROR
    return status or 0


def main():
    sys.exit(run())
