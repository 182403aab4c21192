"""Turning weakly negative definite trees into negative definite ones.

Each round diagonalizes the current tree, picks the first vertex carrying
a positive value and removes one positive direction with Neumann moves:

* leaf of weight m >= 1: (m - 1) x Expand A- at the leaf edge, Contract B+
* degree-2 vertex of weight m >= 1: (m - 1) x Expand A- next to it,
  Contract A+
* degree-2 vertex of weight 0: Contract C

By the signature table each recipe lowers n_plus by exactly one whatever
the diagonal values are, so a round may use any vertex a recipe covers.
When none does (single vertex, positives only at vertices of weight <= -1
or of degree >= 3) a fallback takes over: a scan of the whole tree, a
0-leaf walk, blowing down -1 vertices, and finally an iterative-deepening
search for a move sequence that lowers n_plus.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from .canonical import canonical_form
from .diagonalize import diagonal_values, signature_of_tree
from .errors import (FallbackExhausted, FallbackRequired, NotAPositiveLeaf,
                     NotInteriorPositive, NotWeaklyND, Singular, SingleVertexTree,
                     WeakNDViolated)
from .linalg import (Signature, determinant, invert, is_negative_definite_dense,
                     signature_of_values)
from .moves import (Direction, MoveApplication, MoveKind, apply,
                    expected_signature_delta, fresh_ids, make_contract, make_expand,
                    replay)
from .search import iddfs
from .tree import PlumbingTree, classify_vertices, distances, framing_matrix

log = logging.getLogger(__name__)


class DefinitenessClass(enum.Enum):
    NEGATIVE_DEFINITE = "NegativeDefinite"
    WEAKLY_NEGATIVE_DEFINITE = "WeaklyNegativeDefinite"
    SINGULAR = "Singular"
    NOT_WEAKLY_NEGATIVE_DEFINITE = "NotWeaklyNegativeDefinite"

    def __str__(self) -> str:
        return self.value


def classify(tree: PlumbingTree) -> DefinitenessClass:
    b = framing_matrix(tree)
    if determinant(b) == 0:
        return DefinitenessClass.SINGULAR
    if is_negative_definite_dense(b):
        return DefinitenessClass.NEGATIVE_DEFINITE
    _, _, high = classify_vertices(tree)
    if not high:
        return DefinitenessClass.WEAKLY_NEGATIVE_DEFINITE
    order = tree.vertices
    idx = [order.index(v) for v in sorted(high)]
    if is_negative_definite_dense(invert(b).principal(idx)):
        return DefinitenessClass.WEAKLY_NEGATIVE_DEFINITE
    return DefinitenessClass.NOT_WEAKLY_NEGATIVE_DEFINITE


def reduce_root(tree: PlumbingTree) -> int:
    """Orientation root: smallest-id vertex of degree >= 3, else smallest id."""
    _, _, high = classify_vertices(tree)
    return min(high) if high else min(tree)


def positive_supports(tree: PlumbingTree, root: int) -> list[tuple[int, Fraction]]:
    """Vertices with a positive diagonal value, farthest from ``root`` first."""
    values = diagonal_values(tree, root)
    dist = distances(tree, root)
    pos = [(v, x) for v, x in values.items() if x > 0]
    return sorted(pos, key=lambda vx: (-dist[vx[0]], vx[0]))


# -- elimination recipes -------------------------------------------------

def _walk_down(tree: PlumbingTree, v: int, toward: int, times: int,
               moves: list[MoveApplication]) -> tuple[PlumbingTree, int]:
    """Expand A- ``times`` times on the edge from ``v`` toward ``toward``."""
    for _ in range(times):
        m = make_expand(tree, MoveKind.A_MINUS, (v, toward))
        tree = apply(tree, m)
        moves.append(m)
        toward = m.new[0]
    return tree, toward


def eliminate_at_leaf(tree: PlumbingTree, leaf: int
                      ) -> tuple[PlumbingTree, list[MoveApplication]]:
    if len(tree) < 2:
        raise SingleVertexTree("a single vertex has no edge to expand")
    m = tree.weight(leaf)
    if tree.degree(leaf) != 1 or m < 1:
        raise NotAPositiveLeaf(
            f"{leaf} has degree {tree.degree(leaf)} and weight {m}; need a leaf of weight >= 1")
    moves: list[MoveApplication] = []
    tree, _ = _walk_down(tree, leaf, tree.neighbors(leaf)[0], m - 1, moves)
    last = make_contract(MoveKind.B_PLUS, leaf)
    moves.append(last)
    return apply(tree, last), moves


def _interior_recipe(tree: PlumbingTree, v: int, toward: int
                     ) -> tuple[PlumbingTree, list[MoveApplication]]:
    m = tree.weight(v)
    if m == 0:
        step = make_contract(MoveKind.C, v)
        return apply(tree, step), [step]
    if m < 0:
        raise FallbackRequired(f"positive value at {v} but weight {m} <= -1")
    moves: list[MoveApplication] = []
    tree, _ = _walk_down(tree, v, toward, m - 1, moves)
    last = make_contract(MoveKind.A_PLUS, v)
    moves.append(last)
    return apply(tree, last), moves


def eliminate_at_interior(tree: PlumbingTree, v: int, root: int | None = None
                          ) -> tuple[PlumbingTree, list[MoveApplication]]:
    """Remove the positive value carried by the degree-2 vertex ``v``.

    The A- expansions go on the edge toward the neighbour that was folded
    into ``v`` (the one farther from ``root``).
    """
    if root is None:
        root = reduce_root(tree)
    if tree.degree(v) != 2:
        raise NotInteriorPositive(f"{v} has degree {tree.degree(v)}, not 2")
    value = diagonal_values(tree, root)[v]
    if value <= 0:
        raise NotInteriorPositive(f"value at {v} is {value}, not positive")
    dist = distances(tree, root)
    a, b = tree.neighbors(v)
    toward = a if dist[a] > dist[v] else b
    if dist[toward] < dist[v]:  # v is the root: two children, take the smaller
        toward = a
    return _interior_recipe(tree, v, toward)


# -- fallback ----------------------------------------------------------

def _scan_recipe(tree: PlumbingTree) -> tuple[int, str, PlumbingTree, list[MoveApplication]] | None:
    """Any vertex of degree <= 2 whose weight admits a recipe."""
    if len(tree) < 2:
        return None
    for v in tree:
        d, w = tree.degree(v), tree.weight(v)
        if d == 1 and w >= 1:
            new, moves = eliminate_at_leaf(tree, v)
            return v, "scan-leaf", new, moves
        if d == 2 and w >= 0:
            new, moves = _interior_recipe(tree, v, tree.neighbors(v)[0])
            return v, "scan-interior", new, moves
    return None


_SEARCH_EXPANDS = (MoveKind.A_MINUS, MoveKind.B_MINUS, MoveKind.A_PLUS, MoveKind.B_PLUS)


def _contract_moves(t: PlumbingTree) -> list[MoveApplication]:
    out = []
    for v in t:
        d, w = t.degree(v), t.weight(v)
        if d == 1 and w in (1, -1):
            out.append(make_contract(MoveKind.B_PLUS if w == 1 else MoveKind.B_MINUS, v))
        elif d == 2 and w in (1, -1):
            out.append(make_contract(MoveKind.A_PLUS if w == 1 else MoveKind.A_MINUS, v))
        elif d == 2 and w == 0:
            out.append(make_contract(MoveKind.C, v))
    # moves that remove a positive direction first
    out.sort(key=lambda m: expected_signature_delta(m.kind, m.direction)[0])
    return out


SEARCH_NODE_BUDGET = 5_000


def search_decrease(tree: PlumbingTree, max_depth: int, vertex_cap: int | None = None,
                    max_nodes: int | None = None) -> list[MoveApplication] | None:
    """Shortest move sequence lowering n_plus by one, or None.

    n_plus is tracked through the signature table, which also gives the
    admissible bound: n_plus drops by at most one per move.  The search
    gives up after ``max_nodes`` expanded states (default
    ``SEARCH_NODE_BUDGET``).
    """
    if max_nodes is None:
        max_nodes = SEARCH_NODE_BUDGET
    if vertex_cap is None:
        vertex_cap = len(tree) + max_depth

    def successors(state):
        t, dplus = state
        for m in _contract_moves(t):
            yield m, (apply(t, m), dplus + expected_signature_delta(m.kind, m.direction)[0])
        if len(t) >= vertex_cap:
            return
        for kind in _SEARCH_EXPANDS:
            dp = expected_signature_delta(kind)[0]
            sites = t.edges if kind.family == "A" else t.vertices
            for site in sites:
                m = MoveApplication(kind, Direction.EXPAND, site, fresh_ids(t, 1))
                yield m, (apply(t, m), dplus + dp)

    return iddfs(
        (tree, 0), successors, lambda s: s[1] < 0, max_depth,
        key=lambda s: (canonical_form(s[0]), s[1]),
        lower_bound=lambda s: s[1] + 1,
        max_nodes=max_nodes,
    )


# -- driver ------------------------------------------------------------

@dataclass(frozen=True)
class Round:
    vertex: int
    before: Signature
    after: Signature
    method: str
    moves: int


@dataclass
class ReductionReport:
    input: PlumbingTree
    output: PlumbingTree
    log: list[MoveApplication]
    rounds: list[Round] = field(default_factory=list)
    used_fallback: bool = False
    diagnostics: list[WeakNDViolated] = field(default_factory=list)


def _handled_by_recipe(tree: PlumbingTree, v: int) -> bool:
    if len(tree) < 2:
        return False
    d, w = tree.degree(v), tree.weight(v)
    return (d == 1 and w >= 1) or (d == 2 and w >= 0)


def reduce(tree: PlumbingTree, fallback_depth: int = 12,
           require_weakly_nd: bool = True) -> ReductionReport:
    """Move sequence from ``tree`` to a negative definite tree.

    With ``require_weakly_nd`` the input must be weakly negative definite;
    without it any nonsingular tree is attempted and the fallback decides.
    A positive value found at a vertex of degree >= 3 is recorded in
    ``diagnostics`` and the round continues with the next candidate.
    """
    cls = classify(tree)
    if cls is DefinitenessClass.SINGULAR:
        raise Singular("framing matrix is singular")
    if require_weakly_nd and cls is DefinitenessClass.NOT_WEAKLY_NEGATIVE_DEFINITE:
        raise NotWeaklyND("tree is not weakly negative definite")
    report = ReductionReport(tree, tree, [])
    cur = tree
    while True:
        root = reduce_root(cur)
        supports = positive_supports(cur, root)
        before = signature_of_tree(cur, root)
        if not supports:
            break
        first = supports[0][0]
        if cur.degree(first) >= 3:
            diag = WeakNDViolated(
                f"round {len(report.rounds) + 1}: positive value {supports[0][1]} at "
                f"vertex {first} of degree {cur.degree(first)} (root {root})")
            log.warning("%s", diag)
            report.diagnostics.append(diag)
        v = next((u for u, _ in supports if _handled_by_recipe(cur, u)), None)
        if v is not None:
            if cur.degree(v) == 1:
                new, moves = eliminate_at_leaf(cur, v)
                method = "leaf"
            elif cur.weight(v) == 0:
                new, moves = _interior_recipe(cur, v, cur.neighbors(v)[0])
                method = "contract-c"
            else:
                new, moves = eliminate_at_interior(cur, v, root)
                method = "interior"
        else:
            log.debug("round %d: no recipe applies; falling back", len(report.rounds) + 1)
            report.used_fallback = True
            v = first
            new, moves, method = _fallback(cur, fallback_depth)
        after = signature_of_tree(new)
        if after.n_plus >= before.n_plus:
            raise AssertionError(f"round did not lower n_plus: {before} -> {after}")
        report.rounds.append(Round(v, before, after, method, len(moves)))
        report.log.extend(moves)
        cur = new
    report.output = cur
    return report


def _zero_leaf_walk(tree: PlumbingTree) -> list[MoveApplication] | None:
    """Moves that use a 0-leaf to remove one positive direction.

    Each (Expand B eps, Contract A eps) pair at the 0-leaf shifts its
    neighbour x by -eps and leaves a fresh 0-leaf, with no net signature
    change.  Once x reaches 0 (x of degree 2) a Contract C removes a
    hyperbolic pair; in a two-vertex tree x is walked to 1 and removed by
    Contract B+.
    """
    for z in tree:
        if tree.degree(z) != 1 or tree.weight(z) != 0:
            continue
        (x,) = tree.neighbors(z)
        d = tree.degree(x)
        if d == 2:
            target = 0
        elif d == 1:
            target = 1
        else:
            continue
        moves: list[MoveApplication] = []
        while tree.weight(x) != target:
            eps = 1 if tree.weight(x) > target else -1
            kind_b = MoveKind.B_PLUS if eps == 1 else MoveKind.B_MINUS
            kind_a = MoveKind.A_PLUS if eps == 1 else MoveKind.A_MINUS
            ex = MoveApplication(kind_b, Direction.EXPAND, z, fresh_ids(tree, 1))
            ct = make_contract(kind_a, z)
            tree = apply(apply(tree, ex), ct)
            moves += [ex, ct]
            z = ex.new[0]
        last = make_contract(MoveKind.C if target == 0 else MoveKind.B_PLUS, x)
        return moves + [last]
    return None


def _blow_down(tree: PlumbingTree) -> MoveApplication | None:
    for v in tree:
        if tree.weight(v) == -1 and tree.degree(v) in (1, 2):
            kind = MoveKind.B_MINUS if tree.degree(v) == 1 else MoveKind.A_MINUS
            return make_contract(kind, v)
    return None


def _fallback(tree: PlumbingTree, depth: int) -> tuple[PlumbingTree, list[MoveApplication], str]:
    """One positive direction removed by certified moves, trying in order:
    a recipe at any vertex, a 0-leaf walk, the single-vertex recipe,
    blowing down a -1 vertex (then retrying), and finally the search."""
    prefix: list[MoveApplication] = []
    start = tree
    while True:
        found = _scan_recipe(tree)
        if found is not None:
            _, method, new, moves = found
            return new, prefix + moves, method
        walk = _zero_leaf_walk(tree)
        if walk is not None:
            return replay(tree, walk), prefix + walk, "zero-leaf"
        if len(tree) == 1 and tree.weight(tree.vertices[0]) >= 2:
            v = tree.vertices[0]
            first = make_expand(tree, MoveKind.B_MINUS, v)
            new, moves = eliminate_at_leaf(apply(tree, first), v)
            return new, prefix + [first] + moves, "single-vertex"
        down = _blow_down(tree)
        if down is None:
            break
        tree = apply(tree, down)
        prefix.append(down)
    moves = search_decrease(tree, depth, vertex_cap=len(start) + depth)
    if moves is None:
        raise FallbackExhausted(depth)
    return replay(tree, moves), prefix + moves, "search"
