"""Text formats: tree files, move logs, DOT export.

Tree file::

    # comment
    vertex <id> <weight>
    edge <u> <v>

Move log, one application per line::

    expand A- edge <u> <v> new <id>
    expand B+ vertex <v> new <id>
    expand C vertex <v> w1 <int> w2 <int> side1 <ids,comma-separated|-> new1 <id> new2 <id>
    contract A- vertex <v>
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import ParseError
from .moves import Direction, MoveApplication, MoveKind
from .tree import PlumbingTree, build_tree


@dataclass(frozen=True)
class TreeDocument:
    tree: PlumbingTree
    source: str = "<memory>"


def format_rational(x) -> str:
    """``p/q``, ``p`` for integers, ``inf`` for the point at infinity."""
    if not isinstance(x, (Fraction, int)):
        return str(x)
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(lineno, f"{what} {tok!r} is not an integer") from None


def _nat(tok: str, lineno: int, what: str) -> int:
    n = _int(tok, lineno, what)
    if n < 0 or not tok.lstrip("+").isdigit():
        raise ParseError(lineno, f"{what} {tok!r} is not a natural number")
    return n


def _lines(text: str):
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


# -- trees ---------------------------------------------------------------

def parse_tree_text(text: str, source: str = "<memory>") -> TreeDocument:
    weights: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    for lineno, toks in _lines(text):
        head = toks[0]
        if head == "vertex":
            if len(toks) != 3:
                raise ParseError(lineno, "expected 'vertex <id> <weight>'")
            v = _nat(toks[1], lineno, "vertex id")
            if v in weights:
                raise ParseError(lineno, f"vertex {v} declared twice")
            weights[v] = _int(toks[2], lineno, "weight")
        elif head == "edge":
            if len(toks) != 3:
                raise ParseError(lineno, "expected 'edge <u> <v>'")
            edges.append((_nat(toks[1], lineno, "vertex id"), _nat(toks[2], lineno, "vertex id")))
        else:
            raise ParseError(lineno, f"unknown keyword {head!r}")
    return TreeDocument(build_tree(weights, edges), source)


def serialize_tree_text(doc: TreeDocument | PlumbingTree) -> str:
    tree = doc.tree if isinstance(doc, TreeDocument) else doc
    out = [f"vertex {v} {w}" for v, w in tree.weights.items()]
    out += [f"edge {u} {v}" for u, v in tree.edges]
    return "".join(line + "\n" for line in out)


def export_dot(doc: TreeDocument | PlumbingTree) -> str:
    tree = doc.tree if isinstance(doc, TreeDocument) else doc
    out = ["graph plumbing {"]
    out += [f'  {v} [label="{v}:{w}"];' for v, w in tree.weights.items()]
    out += [f"  {u} -- {v};" for u, v in tree.edges]
    out.append("}")
    return "\n".join(out) + "\n"


# -- move logs -----------------------------------------------------------

def format_move(m: MoveApplication) -> str:
    head = f"{m.direction} {m.kind}"
    if m.direction is Direction.CONTRACT:
        return f"{head} vertex {m.site}"
    if m.kind.family == "A":
        u, v = m.site
        return f"{head} edge {u} {v} new {m.new[0]}"
    if m.kind.family == "B":
        return f"{head} vertex {m.site} new {m.new[0]}"
    side = ",".join(str(u) for u in sorted(m.side1)) or "-"
    return (f"{head} vertex {m.site} w1 {m.w1} w2 {m.w2} side1 {side} "
            f"new1 {m.new[0]} new2 {m.new[1]}")


def format_log(moves: Iterable[MoveApplication]) -> str:
    return "".join(format_move(m) + "\n" for m in moves)


def _expect(toks: list[str], i: int, word: str, lineno: int) -> None:
    if i >= len(toks) or toks[i] != word:
        got = toks[i] if i < len(toks) else "end of line"
        raise ParseError(lineno, f"expected {word!r}, got {got!r}")


def parse_move(line: str, lineno: int = 1) -> MoveApplication:
    toks = line.split()
    if len(toks) < 2:
        raise ParseError(lineno, "expected '<expand|contract> <kind> ...'")
    if toks[0] not in ("expand", "contract"):
        raise ParseError(lineno, f"unknown direction {toks[0]!r}")
    direction = Direction(toks[0])
    if toks[1] not in {k.value for k in MoveKind}:
        raise ParseError(lineno, f"unknown move kind {toks[1]!r}")
    kind = MoveKind(toks[1])
    if direction is Direction.CONTRACT:
        shape = ["vertex", None]
    elif kind.family == "A":
        shape = ["edge", None, None, "new", None]
    elif kind.family == "B":
        shape = ["vertex", None, "new", None]
    else:
        shape = ["vertex", None, "w1", None, "w2", None, "side1", None,
                 "new1", None, "new2", None]
    args = toks[2:]
    if len(args) != len(shape):
        raise ParseError(lineno, f"expected {len(shape) + 2} tokens, got {len(toks)}")
    vals = []
    for i, (want, tok) in enumerate(zip(shape, args)):
        if want is not None:
            _expect(args, i, want, lineno)
        else:
            vals.append(tok)
    if direction is Direction.CONTRACT:
        return MoveApplication(kind, direction, _nat(vals[0], lineno, "vertex id"))
    if kind.family == "A":
        u, v = (_nat(x, lineno, "vertex id") for x in vals[:2])
        return MoveApplication(kind, direction, (min(u, v), max(u, v)),
                               (_nat(vals[2], lineno, "fresh id"),))
    if kind.family == "B":
        return MoveApplication(kind, direction, _nat(vals[0], lineno, "vertex id"),
                               (_nat(vals[1], lineno, "fresh id"),))
    site, w1, w2, side, n1, n2 = vals
    side1 = frozenset() if side == "-" else frozenset(
        _nat(x, lineno, "side1 id") for x in side.split(","))
    return MoveApplication(kind, direction, _nat(site, lineno, "vertex id"),
                           (_nat(n1, lineno, "fresh id"), _nat(n2, lineno, "fresh id")),
                           _int(w1, lineno, "w1"), _int(w2, lineno, "w2"), side1)


def parse_log(text: str) -> list[MoveApplication]:
    out = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if line:
            out.append(parse_move(line, lineno))
    return out
