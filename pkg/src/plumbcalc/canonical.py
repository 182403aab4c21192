"""Canonical encoding of weighted trees up to relabelling (AHU with weights)."""
from __future__ import annotations

from .tree import PlumbingTree


def centers(tree: PlumbingTree) -> list[int]:
    """The one or two centers, found by peeling leaves."""
    n = len(tree)
    if n <= 2:
        return tree.vertices
    degree = {v: tree.degree(v) for v in tree}
    layer = [v for v, d in degree.items() if d <= 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for u in tree.neighbors(v):
                degree[u] -= 1
                if degree[u] == 1:
                    nxt.append(u)
        layer = nxt
    return sorted(layer)


def _rooted_code(tree: PlumbingTree, root: int) -> tuple:
    # iterative post-order to stay clear of the recursion limit
    parent = {root: None}
    order = [root]
    for v in order:
        for u in tree.neighbors(v):
            if u != parent[v]:
                parent[u] = v
                order.append(u)
    code: dict[int, tuple] = {}
    for v in reversed(order):
        kids = sorted(code.pop(u) for u in tree.neighbors(v) if u != parent[v])
        code[v] = (tree.weight(v), tuple(kids))
    return code[root]


def canonical_form(tree: PlumbingTree) -> tuple:
    """Hashable key equal for two trees iff they are weight-preserving isomorphic."""
    if len(tree) == 0:
        return ()
    return min(_rooted_code(tree, c) for c in centers(tree))
