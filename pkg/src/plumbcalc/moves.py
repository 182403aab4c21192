"""Neumann moves A+-, B+-, C on plumbing trees.

Expand goes from the small picture to the large one:

* A(eps): an edge x--y becomes x(+eps) -- new(eps) -- y(+eps)
* B(eps): a vertex v becomes v(+eps) with a fresh leaf of weight eps
* C: a vertex of weight w1 + w2 splits into w1 -- 0 -- w2, its other edges
  partitioned by ``side1``

Contract is the exact inverse.  Contract C keeps the smaller id of the two
merged neighbours.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import PatternMismatch, ReplayFailed, StaleId
from .tree import Edge, PlumbingTree, _norm_edge


class MoveKind(enum.Enum):
    A_PLUS = "A+"
    A_MINUS = "A-"
    B_PLUS = "B+"
    B_MINUS = "B-"
    C = "C"

    @property
    def eps(self) -> int:
        """+1 / -1 for A and B moves, 0 for C."""
        return {"+": 1, "-": -1}.get(self.value[-1], 0)

    @property
    def family(self) -> str:
        return self.value[0]

    @classmethod
    def parse(cls, text: str) -> "MoveKind":
        text = text.replace("−", "-")
        for k in cls:
            if k.value == text:
                return k
        raise ValueError(f"unknown move kind {text!r}")

    def __str__(self) -> str:
        return self.value


class Direction(enum.Enum):
    EXPAND = "expand"
    CONTRACT = "contract"

    @classmethod
    def parse(cls, text: str) -> "Direction":
        try:
            return cls(text.lower())
        except ValueError:
            raise ValueError(f"unknown direction {text!r}") from None

    def __str__(self) -> str:
        return self.value


Site = Union[int, Edge]


@dataclass(frozen=True)
class MoveApplication:
    kind: MoveKind
    direction: Direction
    site: Site
    new: tuple[int, ...] = ()
    w1: int | None = None
    w2: int | None = None
    side1: frozenset[int] = frozenset()

    def __str__(self) -> str:
        from .textio import format_move
        return format_move(self)


MoveLog = list  # list[MoveApplication]; replayable in order


# -- site enumeration --------------------------------------------------

def applicable_sites(tree: PlumbingTree, kind: MoveKind, direction: Direction) -> list[Site]:
    if direction is Direction.EXPAND:
        if kind.family == "A":
            return tree.edges
        return tree.vertices
    if kind.family == "C":
        return [v for v in tree if tree.degree(v) == 2 and tree.weight(v) == 0]
    want_degree = 2 if kind.family == "A" else 1
    return [v for v in tree
            if tree.degree(v) == want_degree and tree.weight(v) == kind.eps]


def fresh_ids(tree: PlumbingTree, count: int) -> tuple[int, ...]:
    top = tree.max_id()
    return tuple(top + i for i in range(1, count + 1))


def make_expand(tree: PlumbingTree, kind: MoveKind, site: Site, *, w1: int | None = None,
                side1: Iterable[int] = ()) -> MoveApplication:
    """Expand move at ``site`` with default fresh ids (max+1, max+2)."""
    if kind is MoveKind.C:
        if w1 is None:
            raise ValueError("Expand C needs w1")
        return MoveApplication(kind, Direction.EXPAND, site, fresh_ids(tree, 2),
                               w1, tree.weight(site) - w1, frozenset(side1))
    if kind.family == "A":
        site = _norm_edge(*site)
    return MoveApplication(kind, Direction.EXPAND, site, fresh_ids(tree, 1))


def make_contract(kind: MoveKind, site: int) -> MoveApplication:
    return MoveApplication(kind, Direction.CONTRACT, site)


# -- rewriting ---------------------------------------------------------

def _require_vertex(tree: PlumbingTree, v) -> int:
    if not isinstance(v, int) or v not in tree:
        raise StaleId(f"vertex {v!r} is not in the tree")
    return v


def _check_fresh(tree: PlumbingTree, new: Sequence[int], count: int) -> None:
    if len(new) != count:
        raise PatternMismatch(f"expected {count} fresh id(s), got {len(new)}")
    if len(set(new)) != len(new):
        raise StaleId(f"fresh ids {tuple(new)} are not distinct")
    for n in new:
        if not isinstance(n, int) or n < 0:
            raise StaleId(f"fresh id {n!r} is not a natural number")
        if n in tree:
            raise StaleId(f"fresh id {n} is already used")


def apply(tree: PlumbingTree, m: MoveApplication) -> PlumbingTree:
    if m.direction is Direction.EXPAND:
        return _expand(tree, m)
    return _contract(tree, m)


def _expand(tree: PlumbingTree, m: MoveApplication) -> PlumbingTree:
    kind = m.kind
    weights = tree.weights
    edges = set(tree.edges)
    if kind.family == "A":
        if not (isinstance(m.site, tuple) and len(m.site) == 2):
            raise PatternMismatch("Expand A needs an edge site")
        x, y = m.site
        _require_vertex(tree, x)
        _require_vertex(tree, y)
        if not tree.has_edge(x, y):
            raise PatternMismatch(f"{x}-{y} is not an edge")
        _check_fresh(tree, m.new, 1)
        (z,) = m.new
        eps = kind.eps
        weights[x] += eps
        weights[y] += eps
        weights[z] = eps
        edges.discard(_norm_edge(x, y))
        edges |= {_norm_edge(x, z), _norm_edge(z, y)}
        return PlumbingTree(weights, edges)
    v = _require_vertex(tree, m.site)
    if kind.family == "B":
        _check_fresh(tree, m.new, 1)
        (z,) = m.new
        weights[v] += kind.eps
        weights[z] = kind.eps
        edges.add(_norm_edge(v, z))
        return PlumbingTree(weights, edges)
    # Expand C
    if m.w1 is None or m.w2 is None:
        raise PatternMismatch("Expand C needs w1 and w2")
    if m.w1 + m.w2 != tree.weight(v):
        raise PatternMismatch(
            f"split {m.w1} + {m.w2} does not match weight {tree.weight(v)} of {v}")
    nbrs = set(tree.neighbors(v))
    if not set(m.side1) <= nbrs:
        raise PatternMismatch(f"side1 {sorted(m.side1)} is not a subset of the neighbours of {v}")
    _check_fresh(tree, m.new, 2)
    zero, other = m.new
    weights[v] = m.w1
    weights[zero] = 0
    weights[other] = m.w2
    for u in nbrs - set(m.side1):
        edges.discard(_norm_edge(u, v))
        edges.add(_norm_edge(u, other))
    edges |= {_norm_edge(v, zero), _norm_edge(zero, other)}
    return PlumbingTree(weights, edges)


def _contract(tree: PlumbingTree, m: MoveApplication) -> PlumbingTree:
    kind = m.kind
    v = _require_vertex(tree, m.site)
    w = tree.weight(v)
    deg = tree.degree(v)
    weights = tree.weights
    edges = set(tree.edges)
    if kind.family == "A":
        if deg != 2 or w != kind.eps:
            raise PatternMismatch(
                f"Contract {kind} needs a degree-2 vertex of weight {kind.eps:+d}; "
                f"{v} has degree {deg} and weight {w}")
        a, b = tree.neighbors(v)
        del weights[v]
        weights[a] -= kind.eps
        weights[b] -= kind.eps
        edges -= {_norm_edge(a, v), _norm_edge(b, v)}
        edges.add(_norm_edge(a, b))
        return PlumbingTree(weights, edges)
    if kind.family == "B":
        if deg != 1 or w != kind.eps:
            raise PatternMismatch(
                f"Contract {kind} needs a leaf of weight {kind.eps:+d}; "
                f"{v} has degree {deg} and weight {w}")
        (a,) = tree.neighbors(v)
        del weights[v]
        weights[a] -= kind.eps
        edges.discard(_norm_edge(a, v))
        return PlumbingTree(weights, edges)
    if deg != 2 or w != 0:
        raise PatternMismatch(
            f"Contract C needs a degree-2 vertex of weight 0; "
            f"{v} has degree {deg} and weight {w}")
    a, b = tree.neighbors(v)  # sorted, so a < b survives
    weights[a] += weights.pop(b)
    del weights[v]
    edges -= {_norm_edge(a, v), _norm_edge(b, v)}
    for u in tree.neighbors(b):
        if u != v:
            edges.discard(_norm_edge(u, b))
            edges.add(_norm_edge(u, a))
    return PlumbingTree(weights, edges)


def inverse_move(tree: PlumbingTree, m: MoveApplication) -> MoveApplication:
    """The move that undoes ``m`` on the tree produced by applying it to ``tree``.

    For contractions the recreated vertices get fresh ids of the result.
    """
    if m.direction is Direction.EXPAND:
        site = m.new[0]
        return make_contract(m.kind, site)
    v = m.site
    if m.kind.family == "A":
        a, b = tree.neighbors(v)
        after = apply(tree, m)
        return MoveApplication(m.kind, Direction.EXPAND, (a, b), fresh_ids(after, 1))
    if m.kind.family == "B":
        (a,) = tree.neighbors(v)
        after = apply(tree, m)
        return MoveApplication(m.kind, Direction.EXPAND, a, fresh_ids(after, 1))
    a, b = tree.neighbors(v)
    after = apply(tree, m)
    side1 = frozenset(u for u in tree.neighbors(a) if u != v)
    return MoveApplication(MoveKind.C, Direction.EXPAND, a, fresh_ids(after, 2),
                           tree.weight(a), tree.weight(b), side1)


# -- signature bookkeeping and replay ------------------------------------

_EXPAND_DELTA = {
    MoveKind.A_MINUS: (0, 1),
    MoveKind.A_PLUS: (1, 0),
    MoveKind.B_MINUS: (0, 1),
    MoveKind.B_PLUS: (1, 0),
    MoveKind.C: (1, 1),
}


def expected_signature_delta(kind: MoveKind,
                             direction: Direction = Direction.EXPAND) -> tuple[int, int]:
    dp, dm = _EXPAND_DELTA[kind]
    if direction is Direction.CONTRACT:
        return -dp, -dm
    return dp, dm


def replay(tree: PlumbingTree, log: Iterable[MoveApplication]) -> PlumbingTree:
    for i, m in enumerate(log):
        try:
            tree = apply(tree, m)
        except (PatternMismatch, StaleId) as exc:
            raise ReplayFailed(i, exc) from exc
    return tree


def trajectory(tree: PlumbingTree, log: Iterable[MoveApplication]) -> list[PlumbingTree]:
    """All intermediate trees, starting with ``tree``."""
    out = [tree]
    for i, m in enumerate(log):
        try:
            out.append(apply(out[-1], m))
        except (PatternMismatch, StaleId) as exc:
            raise ReplayFailed(i, exc) from exc
    return out
