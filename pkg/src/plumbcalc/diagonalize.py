"""Edge-elimination diagonalization of plumbing trees.

Edges are oriented toward a root.  A parent all of whose children are
childless is folded in one step:

* Case 1 (no child has weight 0): each child is detached with its current
  weight as its final value, and the parent weight becomes
  ``e - sum(1/e_i)``.
* Case 2 (some child has weight 0): the parent and that zero child become
  final values -1 and +1, the other children keep their current weights,
  and every edge at the parent (including the one to its own parent) goes.

Both steps are congruences of the framing matrix, so the resulting values
carry its inertia and their product is its determinant.  They are *not*
eigenvalues in general.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .errors import (NotZeroLeaf, ParentHasNonLeafChildren, UnknownVertex,
                     ZeroLeafPresent)
from .linalg import Signature, signature_of_values
from .tree import PlumbingTree


@dataclass(frozen=True)
class OrientedTree:
    tree: PlumbingTree
    root: int
    parent: dict[int, int]

    def children(self) -> dict[int, list[int]]:
        kids: dict[int, list[int]] = {v: [] for v in self.tree}
        for v, p in self.parent.items():
            kids[p].append(v)
        for ks in kids.values():
            ks.sort()
        return kids

    def post_order(self) -> list[int]:
        """Children (ascending id) before parents."""
        kids = self.children()
        out: list[int] = []
        stack = [(self.root, False)]
        while stack:
            v, expanded = stack.pop()
            if expanded:
                out.append(v)
                continue
            stack.append((v, True))
            for c in reversed(kids[v]):
                stack.append((c, False))
        return out


def orient(tree: PlumbingTree, root: int) -> OrientedTree:
    if root not in tree:
        raise UnknownVertex(f"root {root} is not in the tree")
    parent: dict[int, int] = {}
    seen = {root}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for u in tree.neighbors(v):
            if u not in seen:
                seen.add(u)
                parent[u] = v
                queue.append(u)
    return OrientedTree(tree, root, parent)


@dataclass(frozen=True)
class Case1:
    parent: int
    folded_leaves: tuple[int, ...]


@dataclass(frozen=True)
class Case2:
    parent: int
    zero_leaf: int
    detached_siblings: tuple[int, ...]


Step = Union[Case1, Case2]


@dataclass(frozen=True)
class DiagState:
    """Snapshot of a partially diagonalized oriented tree.

    ``weights`` holds the current weight of every vertex that is still
    attached or not yet finalized; ``parent``/``children`` describe the
    remaining edges; ``values`` holds finalized vertices.
    """

    weights: dict[int, Fraction]
    parent: dict[int, int]
    children: dict[int, tuple[int, ...]]
    values: dict[int, Fraction] = field(default_factory=dict)
    trace: tuple[Step, ...] = ()

    @classmethod
    def start(cls, oriented: OrientedTree) -> "DiagState":
        kids = oriented.children()
        return cls(
            weights={v: Fraction(w) for v, w in oriented.tree.weights.items()},
            parent=dict(oriented.parent),
            children={v: tuple(ks) for v, ks in kids.items()},
        )

    def edge_count(self) -> int:
        return len(self.parent)


def _check_leaf_children(state: DiagState, parent: int) -> tuple[int, ...]:
    if parent not in state.children:
        raise UnknownVertex(f"vertex {parent} is not active")
    kids = state.children[parent]
    for c in kids:
        if state.children[c]:
            raise ParentHasNonLeafChildren(f"child {c} of {parent} still has children")
    return kids


def fold_case1(state: DiagState, parent: int) -> DiagState:
    kids = _check_leaf_children(state, parent)
    if not kids:
        raise ParentHasNonLeafChildren(f"vertex {parent} has no children to fold")
    zeros = [c for c in kids if state.weights[c] == 0]
    if zeros:
        raise ZeroLeafPresent(f"child {zeros[0]} of {parent} has weight 0")
    weights = dict(state.weights)
    parents = dict(state.parent)
    children = dict(state.children)
    values = dict(state.values)
    e = weights[parent]
    for c in kids:
        e -= 1 / weights[c]
        values[c] = weights.pop(c)
        del parents[c]
        del children[c]
    weights[parent] = e
    children[parent] = ()
    return DiagState(weights, parents, children, values, state.trace + (Case1(parent, kids),))


def fold_case2(state: DiagState, parent: int, zero_leaf: int) -> DiagState:
    kids = _check_leaf_children(state, parent)
    if zero_leaf not in kids or state.weights[zero_leaf] != 0:
        raise NotZeroLeaf(f"{zero_leaf} is not a weight-0 child of {parent}")
    weights = dict(state.weights)
    parents = dict(state.parent)
    children = dict(state.children)
    values = dict(state.values)
    siblings = tuple(c for c in kids if c != zero_leaf)
    for c in siblings:
        values[c] = weights.pop(c)
        del parents[c]
        del children[c]
    values[zero_leaf] = Fraction(1)
    values[parent] = Fraction(-1)
    del weights[zero_leaf], weights[parent]
    del parents[zero_leaf], children[zero_leaf], children[parent]
    up = parents.pop(parent, None)
    if up is not None:
        children[up] = tuple(c for c in children[up] if c != parent)
    step = Case2(parent, zero_leaf, siblings)
    return DiagState(weights, parents, children, values, state.trace + (step,))


@dataclass(frozen=True)
class DiagResult:
    root: int
    values: dict[int, Fraction]
    trace: tuple[Step, ...]
    signature: Signature

    def product(self) -> Fraction:
        out = Fraction(1)
        for x in self.values.values():
            out *= x
        return out


def diagonalize(tree: PlumbingTree, root: int) -> DiagResult:
    oriented = orient(tree, root)
    state = DiagState.start(oriented)
    for v in oriented.post_order():
        kids = state.children.get(v)
        if not kids:
            continue
        zero = next((c for c in kids if state.weights[c] == 0), None)
        if zero is None:
            state = fold_case1(state, v)
        else:
            state = fold_case2(state, v, zero)
    values = dict(state.values)
    values.update(state.weights)  # isolated survivors keep their weight
    values = dict(sorted(values.items()))
    return DiagResult(root, values, state.trace, signature_of_values(values.values()))


def diagonal_values(tree: PlumbingTree, root: int) -> dict[int, Fraction]:
    """Final values only; same algorithm as :func:`diagonalize`, no snapshots."""
    oriented = orient(tree, root)
    kids = {v: list(ks) for v, ks in oriented.children().items()}
    parent = dict(oriented.parent)
    cur = {v: Fraction(w) for v, w in tree.weights.items()}
    values: dict[int, Fraction] = {}
    for v in oriented.post_order():
        ks = kids[v]
        if not ks:
            continue
        zero = next((c for c in ks if cur[c] == 0), None)
        if zero is None:
            e = cur[v]
            for c in ks:
                e -= 1 / cur[c]
                values[c] = cur.pop(c)
            cur[v] = e
            kids[v] = []
        else:
            for c in ks:
                values[c] = cur.pop(c)
            values[zero] = Fraction(1)
            values[v] = Fraction(-1)
            del cur[v]
            kids[v] = []
            up = parent.get(v)
            if up is not None:
                kids[up].remove(v)
    values.update(cur)
    return values


def default_root(tree: PlumbingTree) -> int:
    """Highest-degree vertex, ties broken by smallest id."""
    return min(tree, key=lambda v: (-tree.degree(v), v))


def signature_of_tree(tree: PlumbingTree, root: int | None = None) -> Signature:
    if len(tree) == 0:
        return Signature(0, 0, 0)
    if root is None:
        root = default_root(tree)
    return signature_of_values(diagonal_values(tree, root).values())
