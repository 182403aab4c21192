"""Negative continued fractions and branch contraction.

``eval_ncf([a0, ..., an])`` is a0 - 1/(a1 - 1/(... - 1/an)), evaluated
right to left over the rationals extended by one unsigned infinity, with
1/0 = inf and 1/inf = 0.  A trailing zero then reproduces the usual
convention [..., a, 0] = [...] without special casing.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union

from .errors import NotABranch, NotContractible, SearchExhausted
from .moves import (Direction, MoveApplication, MoveKind, apply, fresh_ids,
                    make_contract, replay)
from .search import iddfs
from .tree import Branch, PlumbingTree, is_branch


class _Infinity:
    __slots__ = ()

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self):
        return "INF"


INF = _Infinity()
ExtendedRational = Union[Fraction, _Infinity]


def reciprocal(x: ExtendedRational) -> ExtendedRational:
    if x is INF:
        return Fraction(0)
    if x == 0:
        return INF
    return 1 / x


def eval_ncf(word: Sequence[int]) -> ExtendedRational:
    if not word:
        raise ValueError("continued fraction word must be nonempty")
    x: ExtendedRational = Fraction(word[-1])
    for a in reversed(word[:-1]):
        r = reciprocal(x)
        x = INF if r is INF else a - r
    return x


def is_integer_value(x: ExtendedRational) -> bool:
    return x is not INF and x.denominator == 1


def branch_word(tree: PlumbingTree, b: Branch) -> list[int]:
    if not is_branch(tree, b):
        raise NotABranch(f"{b} is not a branch of the tree")
    return [tree.weight(v) for v in b.vertices]


def path_vertices(tree: PlumbingTree, start: int, end: int) -> list[int]:
    """Vertices of the unique path from ``start`` to ``end``."""
    parent = {start: None}
    order = [start]
    for v in order:
        if v == end:
            break
        for u in tree.neighbors(v):
            if u not in parent:
                parent[u] = v
                order.append(u)
    out = [end]
    while out[-1] != start:
        out.append(parent[out[-1]])
    return out[::-1]


def _chain(tree: PlumbingTree, hub: int, keep: set[int]) -> list[int]:
    """Vertices from ``hub`` outward, skipping everything in ``keep``."""
    seq = [hub]
    prev = None
    while True:
        nxt = [u for u in tree.neighbors(seq[-1]) if u != prev and u not in keep]
        if not nxt:
            return seq
        prev = seq[-1]
        seq.append(nxt[0])


def _removal_move(tree: PlumbingTree, seq: list[int]) -> MoveApplication | None:
    """A contraction that shortens the chain ``seq`` (hub first), if any."""
    leaf = seq[-1]
    wl = tree.weight(leaf)
    if wl in (1, -1):
        return make_contract(MoveKind.B_PLUS if wl == 1 else MoveKind.B_MINUS, leaf)
    for u in seq[1:-1]:
        w = tree.weight(u)
        if w in (1, -1):
            return make_contract(MoveKind.A_PLUS if w == 1 else MoveKind.A_MINUS, u)
        if w == 0:
            return make_contract(MoveKind.C, u)
    return None


def _collapse_greedy(tree: PlumbingTree, hub: int, keep: set[int]
                     ) -> list[MoveApplication] | None:
    """Deterministically collapse the chain hanging off ``hub``.

    Removes a +-1 leaf (Contract B), a +-1 interior vertex (Contract A) or
    a 0 interior vertex (Contract C).  A 0 leaf is handled by walking its
    neighbour's weight to 0 with Expand B / Contract A pairs and then
    merging with Contract C.  When the chain has an integer value one of
    these always applies.  Every step shortens the chain or moves a weight
    toward 0, so the loop terminates; None means no step applies.
    """
    log: list[MoveApplication] = []
    while True:
        seq = _chain(tree, hub, keep)
        if len(seq) == 1:
            return log
        step = _removal_move(tree, seq)
        if step is not None:
            steps = [step]
            if step.kind is MoveKind.C and seq[1] == step.site:
                hub = min(hub, seq[2])
        elif tree.weight(seq[-1]) == 0 and len(seq) >= 3:
            eps = 1 if tree.weight(seq[-2]) > 0 else -1
            kind_b = MoveKind.B_PLUS if eps == 1 else MoveKind.B_MINUS
            kind_a = MoveKind.A_PLUS if eps == 1 else MoveKind.A_MINUS
            steps = [MoveApplication(kind_b, Direction.EXPAND, seq[-1], fresh_ids(tree, 1)),
                     make_contract(kind_a, seq[-1])]
        else:
            return None
        for m in steps:
            tree = apply(tree, m)
            log.append(m)


def contract_branch(tree: PlumbingTree, b: Branch,
                    depth_limit: int = 12) -> tuple[PlumbingTree, list[MoveApplication]]:
    """Collapse a branch into its anchor by a certified move sequence."""
    word = branch_word(tree, b)
    return contract_path(tree, b.anchor, b.leaf, depth_limit, word=word)


def contract_path(tree: PlumbingTree, anchor: int, leaf: int, depth_limit: int = 12,
                  word: Sequence[int] | None = None
                  ) -> tuple[PlumbingTree, list[MoveApplication]]:
    """Collapse the chain from ``anchor`` to the leaf ``leaf`` into one vertex.

    The chain beyond the anchor must consist of degree-2 vertices ending in
    a leaf.  Works for standalone paths (anchor is the other endpoint) and
    for branches of larger trees alike.
    """
    seq = path_vertices(tree, anchor, leaf)
    if tree.degree(leaf) != 1 or any(tree.degree(u) != 2 for u in seq[1:-1]):
        raise NotABranch(f"{anchor}..{leaf} is not a chain ending in a leaf")
    if word is None:
        word = [tree.weight(v) for v in seq]
    value = eval_ncf(word)
    if not is_integer_value(value):
        raise NotContractible(f"continued fraction value {value} is not an integer")
    keep = set(tree) - set(seq)
    log = _collapse_greedy(tree, anchor, keep)
    if log is None:
        log = _search_collapse(tree, anchor, keep, depth_limit)
    if log is None:
        raise SearchExhausted(depth_limit)
    return replay(tree, log), log


def _search_collapse(tree: PlumbingTree, anchor: int, keep: set[int],
                     depth_limit: int) -> list[MoveApplication] | None:
    """Iterative deepening over moves confined to the chain.

    A search state is (tree, hub): the hub is the anchor end of the chain,
    which may be renamed by a Contract C merging it.
    """
    target = len(keep) + 1
    cap = len(tree) + depth_limit

    def successors(state):
        t, hub = state
        seq = _chain(t, hub, keep)
        cands = []
        for v in seq[1:]:
            d, w = t.degree(v), t.weight(v)
            if d == 1 and w in (1, -1):
                cands.append(make_contract(MoveKind.B_PLUS if w == 1 else MoveKind.B_MINUS, v))
            if d == 2 and w in (1, -1):
                cands.append(make_contract(MoveKind.A_PLUS if w == 1 else MoveKind.A_MINUS, v))
            if d == 2 and w == 0:
                cands.append(make_contract(MoveKind.C, v))
        if len(t) < cap:
            for x, y in zip(seq, seq[1:]):
                for k in (MoveKind.A_MINUS, MoveKind.A_PLUS):
                    cands.append(MoveApplication(k, Direction.EXPAND, (min(x, y), max(x, y)),
                                                 fresh_ids(t, 1)))
            for k in (MoveKind.B_MINUS, MoveKind.B_PLUS):
                cands.append(MoveApplication(k, Direction.EXPAND, seq[-1], fresh_ids(t, 1)))
        for m in cands:
            new_hub = hub
            if m.kind is MoveKind.C and m.direction is Direction.CONTRACT and seq[1] == m.site:
                new_hub = min(hub, seq[2])
            yield m, (apply(t, m), new_hub)

    def key(state):
        t, hub = state
        return tuple(t.weight(v) for v in _chain(t, hub, keep))

    return iddfs((tree, anchor), successors, lambda s: len(s[0]) == target,
                 depth_limit, key)
