"""Command-line interface.

Exit codes: 0 success, 1 input error, 2 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import selftest
from .catalog import EXAMPLES, example
from .cohomology import SUPPORTED_DEGREES, sha_omega, tate
from .defect import ArithmeticContext, defect_dual, defect_primal, verdict
from .documents import load_context
from .errors import ConsistencyError, InputError

EXIT_OK, EXIT_INPUT, EXIT_CONSISTENCY = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _context(args) -> ArithmeticContext:
    if args.input and args.example:
        raise InputError("give either --input or --example, not both")
    if args.example:
        return example(args.example)
    if args.input:
        return load_context(args.input)
    raise InputError("a context is required (--input FILE or --example NAME)")


def _places(text: str | None) -> list[str]:
    if not text:
        return []
    return [s.strip() for s in text.split(",") if s.strip()]


def _degree(args) -> int:
    if args.degree not in SUPPORTED_DEGREES:
        raise InputError(f"degree {args.degree} is not supported (use one of -1, 0, 1, 2)")
    return args.degree


def _emit(args, text_lines: list[str], data: dict) -> None:
    if args.format == "machine":
        print(json.dumps(data, sort_keys=True, ensure_ascii=False))
    else:
        print("\n".join(text_lines))


def cmd_cohomology(args) -> int:
    ctx = _context(args)
    i = _degree(args)
    H = tate(ctx.group, ctx.lattice, i)
    _emit(args, [str(H.value)], {"command": "cohomology", "degree": i, "group_order": ctx.group.order,
                                 "rank": ctx.lattice.rank, "invariant_factors": list(H.invariant_factors),
                                 "value": str(H.value)})
    return EXIT_OK


def cmd_sha_omega(args) -> int:
    ctx = _context(args)
    i = _degree(args)
    sha, handle = sha_omega(ctx.group, ctx.lattice, i)
    _emit(args, [str(sha)], {"command": "sha-omega", "degree": i, "invariant_factors": list(sha.invariant_factors),
                             "generators": [list(x) for x in handle.basis()], "value": str(sha)})
    return EXIT_OK


def cmd_defect(args) -> int:
    ctx = _context(args)
    S = _places(args.S)
    primal, dual_path = defect_primal(ctx, S), defect_dual(ctx, S)
    if primal.invariant_factors != dual_path.invariant_factors:
        raise ConsistencyError(f"defect paths disagree: primal {primal}, dual {dual_path}")
    _emit(args, [f"C_S: {primal}", f"C_S (dual path): {dual_path}"],
          {"command": "defect", "S": sorted(set(S)), "C_S": list(primal.invariant_factors),
           "C_S_dual_path": list(dual_path.invariant_factors)})
    return EXIT_OK


def cmd_verdict(args) -> int:
    ctx = _context(args)
    r = verdict(ctx, _places(args.S))
    lines = [
        f"S: {', '.join(sorted(r.S)) or '(empty)'}",
        f"S0: {', '.join(sorted(r.S0)) or '(empty)'}",
        f"C_S: {r.C_S}",
        f"C_S (dual path): {r.C_S_dual_path}",
        f"shortcut: {r.shortcut_used}",
    ]
    lines += [f"note: {n}" for n in r.notes]
    lines.append(r.verdict_line())
    _emit(args, lines, {"command": "verdict", **r.as_dict()})
    return EXIT_OK


def cmd_catalog(args) -> int:
    rows = []
    for name, doc in EXAMPLES.items():
        ctx = example(name)
        rows.append({"name": name, "group_order": ctx.group.order, "rank": ctx.lattice.rank,
                     "places": list(ctx.place_names), "description": doc.get("description", "")})
    lines = [f"{r['name']:<20} |g|={r['group_order']:<3} rank={r['rank']:<2} "
             f"places={','.join(r['places']) or '-':<12} {r['description']}" for r in rows]
    _emit(args, lines, {"command": "catalog", "examples": rows})
    return EXIT_OK


def cmd_selftest(args) -> int:
    machine = args.format == "machine"
    lines: list[str] = []
    passed, failed = selftest.run(corrupt_action=args.corrupt_action,
                                  report=lines.append if machine else print)
    if machine:
        print(json.dumps({"command": "selftest", "passed": passed, "failed": failed,
                          "results": lines}, sort_keys=True))
    else:
        print(f"{passed} passed, {failed} failed")
    return EXIT_OK if not failed else EXIT_CONSISTENCY


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="weakapprox", description="Weak approximation defects of tori via Tate cohomology.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, context=True):
        sp.add_argument("--format", choices=("text", "machine"), default="text",
                        help="plain text or one line of JSON")
        if context:
            sp.add_argument("--input", metavar="FILE", help="YAML context document")
            sp.add_argument("--example", metavar="NAME", help="built-in catalog example")

    for name, fn, helptext in (("cohomology", cmd_cohomology, "Tate cohomology of the lattice"),
                               ("sha-omega", cmd_sha_omega, "classes vanishing on all cyclic subgroups")):
        sp = sub.add_parser(name, help=helptext)
        common(sp)
        sp.add_argument("--degree", type=int, required=True, help="one of -1, 0, 1, 2")
        sp.set_defaults(func=fn)
    for name, fn, helptext in (("defect", cmd_defect, "the defect C_S by both routes"),
                               ("verdict", cmd_verdict, "decide weak approximation for S")):
        sp = sub.add_parser(name, help=helptext)
        common(sp)
        sp.add_argument("--S", metavar="NAMES", default="", help="comma-separated place names")
        sp.set_defaults(func=fn)
    sp = sub.add_parser("catalog", help="list built-in examples")
    common(sp, context=False)
    sp.set_defaults(func=cmd_catalog)
    sp = sub.add_parser("selftest", help="run the invariant checks on the catalog")
    common(sp, context=False)
    sp.add_argument("--corrupt-action", action="store_true",
                    help="development: corrupt one action matrix to exercise the failure path")
    sp.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConsistencyError as e:
        print(f"internal consistency failure: {e}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except (InputError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
