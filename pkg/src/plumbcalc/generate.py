"""Seeded random plumbing trees."""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass

from .errors import BadParams
from .moves import Direction, MoveKind, apply, applicable_sites, make_expand
from .tree import PlumbingTree, build_tree


class GenMode(enum.Enum):
    ARBITRARY = "arbitrary"
    ND_SEED = "nd-seed"


@dataclass(frozen=True)
class GenParams:
    vertices: int
    seed: int
    weight_low: int = -5
    weight_high: int = 5
    expansions: int = 0
    mode: GenMode = GenMode.ARBITRARY

    def validate(self) -> None:
        if self.vertices < 1:
            raise BadParams("vertices must be >= 1")
        if self.weight_low > self.weight_high:
            raise BadParams("weight_low must not exceed weight_high")
        if self.expansions < 0:
            raise BadParams("expansions must be >= 0")
        if not 0 <= self.seed < 2**64:
            raise BadParams("seed must be a 64-bit unsigned integer")


def random_edges(n: int, rng: random.Random) -> list[tuple[int, int]]:
    """Uniform labelled tree on 1..n by decoding a random Pruefer sequence."""
    if n == 1:
        return []
    if n == 2:
        return [(1, 2)]
    seq = [rng.randint(1, n) for _ in range(n - 2)]
    degree = [1] * (n + 1)
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = next(v for v in range(1, n + 1) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = (w for w in range(1, n + 1) if degree[w] == 1)
    edges.append((u, v))
    return edges


def random_expansion(tree: PlumbingTree, rng: random.Random, weight_low: int,
                     weight_high: int) -> PlumbingTree:
    """Apply one Expand move: kind uniform over applicable kinds, then site."""
    kinds = [k for k in MoveKind if applicable_sites(tree, k, Direction.EXPAND)]
    kind = rng.choice(kinds)
    site = rng.choice(applicable_sites(tree, kind, Direction.EXPAND))
    if kind is MoveKind.C:
        w1 = rng.randint(weight_low, weight_high)
        side1 = [u for u in tree.neighbors(site) if rng.random() < 0.5]
        return apply(tree, make_expand(tree, kind, site, w1=w1, side1=side1))
    return apply(tree, make_expand(tree, kind, site))


def generate(params: GenParams) -> PlumbingTree:
    params.validate()
    rng = random.Random(params.seed)
    n = params.vertices
    edges = random_edges(n, rng)
    degree = {v: 0 for v in range(1, n + 1)}
    for u, v in edges:
        degree[u] += 1
        degree[v] += 1
    weights = {}
    for v in range(1, n + 1):
        if params.mode is GenMode.ND_SEED:
            # strict diagonal dominance with a negative diagonal forces ND
            hi = min(params.weight_high, -degree[v] - 1)
            lo = min(params.weight_low, hi)
        else:
            lo, hi = params.weight_low, params.weight_high
        weights[v] = rng.randint(lo, hi)
    tree = build_tree(weights, edges)
    if params.mode is GenMode.ND_SEED:
        for _ in range(params.expansions):
            tree = random_expansion(tree, rng, params.weight_low, params.weight_high)
    return tree
