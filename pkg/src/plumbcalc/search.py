"""Memoized iterative-deepening search over move sequences."""
from __future__ import annotations

from typing import Callable, Hashable, Iterable, TypeVar

S = TypeVar("S")
M = TypeVar("M")


def iddfs(start: S,
          successors: Callable[[S], Iterable[tuple[M, S]]],
          is_goal: Callable[[S], bool],
          max_depth: int,
          key: Callable[[S], Hashable],
          lower_bound: Callable[[S], int] = lambda s: 0,
          max_nodes: int | None = None,
          ) -> list[M] | None:
    """Shortest move list from ``start`` to a goal state, or None.

    ``successors`` yields (move, state) pairs in preference order; the first
    certificate found at the smallest depth is returned, so results are
    deterministic.  States are memoized by ``key`` together with the depth
    budget they were explored with; ``lower_bound`` must never overestimate
    the number of remaining moves.  ``max_nodes`` caps the number of
    states expanded over all iterations; hitting it gives None.
    """
    if is_goal(start):
        return []
    # key -> largest remaining budget already shown to fail
    failed: dict[Hashable, int] = {}
    expanded = 0

    class _OutOfNodes(Exception):
        pass

    def dfs(state: S, budget: int, on_path: set) -> list[M] | None:
        nonlocal expanded
        expanded += 1
        if max_nodes is not None and expanded > max_nodes:
            raise _OutOfNodes
        for move, nxt in successors(state):
            if is_goal(nxt):
                return [move]
            if budget <= 1:
                continue
            k = key(nxt)
            if k in on_path or failed.get(k, -1) >= budget - 1:
                continue
            if lower_bound(nxt) > budget - 1:
                continue
            on_path.add(k)
            found = dfs(nxt, budget - 1, on_path)
            on_path.discard(k)
            if found is not None:
                return [move, *found]
            failed[k] = max(failed.get(k, -1), budget - 1)
        return None

    start_key = key(start)
    for depth in range(1, max_depth + 1):
        if lower_bound(start) > depth:
            continue
        try:
            found = dfs(start, depth, {start_key})
        except _OutOfNodes:
            return None
        if found is not None:
            return found
    return None
