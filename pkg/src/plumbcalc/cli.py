"""``plumbcalc`` command-line entry point.

Exit status: 0 on success, 1 on a domain error (singular or non weakly
negative definite input, exhausted fallback, mismatch in ``verify``),
2 on usage or parse errors.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .diagonalize import Case1, default_root, diagonalize, signature_of_tree
from .errors import BadParams, NotATree, ParseError, PlumbError, ReplayFailed
from .generate import GenMode, GenParams, generate
from .linalg import congruence_signature, determinant
from .moves import Direction, MoveKind, applicable_sites, replay
from .reduction import classify, reduce
from .textio import (export_dot, format_log, format_rational, parse_log,
                     parse_tree_text, serialize_tree_text)
from .tree import framing_matrix

_MODES = {"arbitrary": GenMode.ARBITRARY, "nd-seed": GenMode.ND_SEED,
          "nd_seed_plus_expansions": GenMode.ND_SEED}


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str):
    return parse_tree_text(_read(path), path).tree


def _write(path: str | None, text: str, out) -> None:
    if path is None:
        out.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


def cmd_check(args, out) -> int:
    out.write(f"{classify(_load(args.file))}\n")
    return 0


def cmd_matrix(args, out) -> int:
    b = framing_matrix(_load(args.file))
    for row in b.to_lists():
        out.write(" ".join(format_rational(x) for x in row) + "\n")
    return 0


def cmd_diag(args, out) -> int:
    tree = _load(args.file)
    res = diagonalize(tree, default_root(tree) if args.root is None else args.root)
    if args.trace:
        for step in res.trace:
            if isinstance(step, Case1):
                leaves = ",".join(map(str, step.folded_leaves))
                out.write(f"case1 parent {step.parent} folded {leaves}\n")
            else:
                sib = ",".join(map(str, step.detached_siblings)) or "-"
                out.write(f"case2 parent {step.parent} zero-leaf {step.zero_leaf} "
                          f"siblings {sib}\n")
    for v, x in sorted(res.values.items()):
        out.write(f"{v} -> {format_rational(x)}\n")
    out.write(f"signature {res.signature}\n")
    return 0


def cmd_reduce(args, out) -> int:
    tree = _load(args.file)
    report = reduce(tree, fallback_depth=args.fallback_depth,
                    require_weakly_nd=not args.allow_non_wnd)
    for r in report.rounds:
        print(f"round vertex {r.vertex} {r.before} -> {r.after} {r.method} "
              f"moves {r.moves}", file=sys.stderr)
    _write(args.log, format_log(report.log), out)
    _write(args.out, serialize_tree_text(report.output), out)
    return 0


def cmd_apply(args, out) -> int:
    tree = _load(args.file)
    log = parse_log(_read(args.log))
    out.write(serialize_tree_text(replay(tree, log)))
    return 0


def cmd_sites(args, out) -> int:
    tree = _load(args.file)
    for site in applicable_sites(tree, args.move, args.direction):
        out.write((f"{site[0]} {site[1]}" if isinstance(site, tuple) else f"{site}") + "\n")
    return 0


def cmd_gen(args, out) -> int:
    params = GenParams(vertices=args.vertices, seed=args.seed, weight_low=args.weight_low,
                       weight_high=args.weight_high, expansions=args.expansions,
                       mode=_MODES[args.mode])
    out.write(serialize_tree_text(generate(params)))
    return 0


def cmd_dot(args, out) -> int:
    out.write(export_dot(_load(args.file)))
    return 0


def verify_report(tree) -> tuple[str, bool]:
    b = framing_matrix(tree)
    res = diagonalize(tree, default_root(tree))
    oracle = congruence_signature(b)
    det = determinant(b)
    prod = res.product()
    ok = res.signature == oracle and prod == det
    line = (f"diag {res.signature} oracle {oracle} det {format_rational(det)} "
            f"product {format_rational(prod)} {'OK' if ok else 'MISMATCH'}")
    return line, ok


def cmd_verify(args, out) -> int:
    status = 0
    for f in args.files:
        line, ok = verify_report(_load(f))
        out.write((f"{f}: " if len(args.files) > 1 else "") + line + "\n")
        status |= not ok
    return status


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="plumbcalc", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    for name, fn, help_ in [("check", cmd_check, "print the definiteness class"),
                            ("matrix", cmd_matrix, "print the framing matrix"),
                            ("dot", cmd_dot, "export Graphviz DOT")]:
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("diag", help="diagonal values and signature")
    sp.add_argument("file")
    sp.add_argument("--root", type=int)
    sp.add_argument("--trace", action="store_true")
    sp.set_defaults(func=cmd_diag)

    sp = sub.add_parser("reduce", help="move sequence to a negative definite tree")
    sp.add_argument("file")
    sp.add_argument("--log", help="write the move log here instead of stdout")
    sp.add_argument("--out", help="write the output tree here instead of stdout")
    sp.add_argument("--fallback-depth", type=int, default=12)
    sp.add_argument("--allow-non-wnd", action="store_true",
                    help="attempt inputs that are not weakly negative definite")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("apply", help="replay a move log")
    sp.add_argument("file")
    sp.add_argument("--log", required=True)
    sp.set_defaults(func=cmd_apply)

    sp = sub.add_parser("sites", help="list applicable sites of a move")
    sp.add_argument("file")
    sp.add_argument("--move", required=True, type=MoveKind.parse,
                    metavar="{A+,A-,B+,B-,C}")
    sp.add_argument("--direction", required=True, type=Direction.parse,
                    metavar="{expand,contract}")
    sp.set_defaults(func=cmd_sites)

    sp = sub.add_parser("gen", help="seeded random tree")
    sp.add_argument("--vertices", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--mode", choices=sorted(_MODES), default="arbitrary")
    sp.add_argument("--expansions", type=int, default=0)
    sp.add_argument("--weight-low", type=int, default=-5)
    sp.add_argument("--weight-high", type=int, default=5)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("verify", help="cross-check diagonalizer against the dense oracle")
    sp.add_argument("files", nargs="+", metavar="FILE")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args, out)
    except (UsageError, ParseError, NotATree, BadParams) as exc:
        print(f"plumbcalc: {exc}", file=sys.stderr)
        return 2
    except (PlumbError, ReplayFailed) as exc:
        print(f"plumbcalc: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
