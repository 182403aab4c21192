"""Integer-weighted plumbing trees and their framing matrices."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import BadOrder, NotATree, UnknownVertex
from .linalg import SymMatrix

Edge = tuple[int, int]


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class PlumbingTree:
    """A finite tree with an integer weight (Euler number) on each vertex.

    Trees are immutable values: every rewrite returns a new tree.  Equality
    and hashing are structural on (weights, edges), so ids matter; use
    :func:`plumbcalc.canonical.canonical_form` to compare up to relabelling.
    """

    __slots__ = ("_weights", "_edges", "_adj", "_hash")

    def __init__(self, weights: Mapping[int, int], edges: Iterable[Edge]):
        # trusted constructor; build_tree() is the validating entry point
        self._weights = dict(sorted(weights.items()))
        self._edges = frozenset(_norm_edge(u, v) for u, v in edges)
        adj: dict[int, set[int]] = {v: set() for v in self._weights}
        for u, v in self._edges:
            adj[u].add(v)
            adj[v].add(u)
        self._adj = {v: tuple(sorted(ns)) for v, ns in adj.items()}
        self._hash = None

    # -- basic queries -------------------------------------------------

    @property
    def weights(self) -> dict[int, int]:
        return dict(self._weights)

    @property
    def edges(self) -> list[Edge]:
        return sorted(self._edges)

    @property
    def vertices(self) -> list[int]:
        return list(self._weights)

    def __len__(self) -> int:
        return len(self._weights)

    def __contains__(self, v) -> bool:
        return v in self._weights

    def __iter__(self) -> Iterator[int]:
        return iter(self._weights)

    def weight(self, v: int) -> int:
        try:
            return self._weights[v]
        except KeyError:
            raise UnknownVertex(f"vertex {v} is not in the tree") from None

    def neighbors(self, v: int) -> tuple[int, ...]:
        try:
            return self._adj[v]
        except KeyError:
            raise UnknownVertex(f"vertex {v} is not in the tree") from None

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self._edges

    def max_id(self) -> int:
        return max(self._weights, default=0)

    def with_weights(self, updates: Mapping[int, int]) -> "PlumbingTree":
        w = dict(self._weights)
        w.update(updates)
        return PlumbingTree(w, self._edges)

    # -- value semantics -----------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, PlumbingTree):
            return NotImplemented
        return self._weights == other._weights and self._edges == other._edges

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((tuple(self._weights.items()), self._edges))
        return self._hash

    def __repr__(self) -> str:
        ws = ", ".join(f"{v}:{w}" for v, w in self._weights.items())
        es = ", ".join(f"{u}-{v}" for u, v in self.edges)
        return f"PlumbingTree({{{ws}}}, [{es}])"


def build_tree(weights: Mapping[int, int], edges: Iterable[Sequence[int]]) -> PlumbingTree:
    """Validate and build a plumbing tree; raises NotATree."""
    weights = dict(weights)
    if not weights:
        raise NotATree("tree has no vertices")
    for v, w in weights.items():
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise NotATree(f"vertex id {v!r} is not a natural number")
        if not isinstance(w, int) or isinstance(w, bool):
            raise NotATree(f"weight {w!r} of vertex {v} is not an integer")
    seen: set[Edge] = set()
    for e in edges:
        u, v = e
        if u not in weights or v not in weights:
            raise NotATree(f"edge {u}-{v} references an undeclared vertex")
        if u == v:
            raise NotATree(f"self-loop at {u}")
        key = _norm_edge(u, v)
        if key in seen:
            raise NotATree(f"duplicate edge {u}-{v}")
        seen.add(key)
    if len(seen) != len(weights) - 1:
        if len(seen) >= len(weights):
            raise NotATree("graph has a cycle")
        raise NotATree("graph is disconnected")
    tree = PlumbingTree(weights, seen)
    if len(_bfs_order(tree, next(iter(weights)))) != len(weights):
        # |E| = |V| - 1 but not connected means a cycle somewhere
        raise NotATree("graph has a cycle and is disconnected")
    return tree


def _bfs_order(tree: PlumbingTree, root: int) -> list[int]:
    order = [root]
    seen = {root}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for u in tree.neighbors(v):
            if u not in seen:
                seen.add(u)
                order.append(u)
                queue.append(u)
    return order


def path(weights: Sequence[int], start: int = 1) -> PlumbingTree:
    """Path with the given weights and consecutive ids from ``start``."""
    ids = range(start, start + len(weights))
    return build_tree(dict(zip(ids, weights)), [(i, i + 1) for i in ids[:-1]])


def star(center: int, arms: Sequence[int]) -> PlumbingTree:
    """Star with center id 1 and leaf ids 2, 3, ..."""
    w = {1: center}
    w.update({i + 2: m for i, m in enumerate(arms)})
    return build_tree(w, [(1, i + 2) for i in range(len(arms))])


def framing_matrix(tree: PlumbingTree, order: Sequence[int] | None = None) -> SymMatrix:
    """Weights on the diagonal, 1 for adjacent vertices, 0 elsewhere."""
    if order is None:
        order = tree.vertices
    else:
        order = list(order)
        if sorted(order) != tree.vertices:
            raise BadOrder("order is not a permutation of the vertex set")
    index = {v: i for i, v in enumerate(order)}
    s = len(order)
    rows = [[0] * s for _ in range(s)]
    for v in order:
        rows[index[v]][index[v]] = tree.weight(v)
    for u, v in tree.edges:
        rows[index[u]][index[v]] = 1
        rows[index[v]][index[u]] = 1
    return SymMatrix.from_rows(rows)


def classify_vertices(tree: PlumbingTree) -> tuple[set[int], set[int], set[int]]:
    """Split the vertices into (leaves, degree-2, degree >= 3)."""
    leaves, mid, high = set(), set(), set()
    for v in tree:
        d = tree.degree(v)
        (leaves if d <= 1 else mid if d == 2 else high).add(v)
    return leaves, mid, high


@dataclass(frozen=True)
class Branch:
    """Maximal chain from a degree >= 3 anchor through degree-2 vertices to a leaf."""

    anchor: int
    chain: tuple[int, ...]
    leaf: int

    @property
    def vertices(self) -> tuple[int, ...]:
        return (self.anchor, *self.chain, self.leaf)


def enumerate_branches(tree: PlumbingTree) -> list[Branch]:
    out = []
    for w in tree:
        if tree.degree(w) < 3:
            continue
        for first in tree.neighbors(w):
            chain = []
            prev, cur = w, first
            while tree.degree(cur) == 2:
                chain.append(cur)
                a, b = tree.neighbors(cur)
                prev, cur = cur, (b if a == prev else a)
            if tree.degree(cur) == 1:
                out.append(Branch(w, tuple(chain), cur))
    return sorted(out, key=lambda b: (b.anchor, b.leaf))


def is_branch(tree: PlumbingTree, b: Branch) -> bool:
    seq = b.vertices
    if any(v not in tree for v in seq):
        return False
    if tree.degree(b.anchor) < 3 or tree.degree(b.leaf) != 1:
        return False
    if any(tree.degree(u) != 2 for u in b.chain):
        return False
    return all(tree.has_edge(x, y) for x, y in zip(seq, seq[1:]))


def distances(tree: PlumbingTree, root: int) -> dict[int, int]:
    if root not in tree:
        raise UnknownVertex(f"vertex {root} is not in the tree")
    dist = {root: 0}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for u in tree.neighbors(v):
            if u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist
