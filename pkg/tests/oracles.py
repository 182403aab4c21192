"""Oracles that share no code with the package.

Determinants come from cofactor expansion, inertia from the characteristic
polynomial: a real symmetric matrix has only real eigenvalues, so
Descartes' rule of signs counts the positive and negative roots exactly.
"""
from __future__ import annotations

from fractions import Fraction


def matrix_of(weights: dict[int, int], edges) -> list[list[int]]:
    ids = sorted(weights)
    idx = {v: i for i, v in enumerate(ids)}
    m = [[0] * len(ids) for _ in ids]
    for v in ids:
        m[idx[v]][idx[v]] = weights[v]
    for u, v in edges:
        m[idx[u]][idx[v]] = m[idx[v]][idx[u]] = 1
    return m


def cofactor_det(m) -> Fraction:
    n = len(m)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(m[0][0])
    total = Fraction(0)
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * Fraction(m[0][j]) * cofactor_det(minor)
    return total


def charpoly(m) -> list[Fraction]:
    """Coefficients c_0..c_n of det(xI - M), via Faddeev-LeVerrier."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        prod = [[sum(a[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            prod[i][i] += coeffs[n - k + 1]
        mk = prod
        am = [[sum(a[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(am[i][i] for i in range(n)) / k
    return coeffs


def _sign_changes(cs) -> int:
    signs = [c > 0 for c in cs if c != 0]
    return sum(1 for x, y in zip(signs, signs[1:]) if x != y)


def inertia(m) -> tuple[int, int, int]:
    cs = charpoly(m)
    zero = next(i for i, c in enumerate(cs) if c != 0)
    pos = _sign_changes(cs)
    neg = _sign_changes([c * (-1) ** i for i, c in enumerate(cs)])
    return pos, neg, zero


def tree_inertia(tree) -> tuple[int, int, int]:
    return inertia(matrix_of(tree.weights, tree.edges))


def tree_det(tree) -> Fraction:
    return cofactor_det(matrix_of(tree.weights, tree.edges))


def ncf(word) -> Fraction | None:
    """Negative continued fraction by forward recurrence; None for infinity.

    p_k = a_k p_{k-1} - p_{k-2}, q likewise; the value is p_n / q_n.
    """
    p_prev, p = 1, word[0]
    q_prev, q = 0, 1
    for a in word[1:]:
        p_prev, p = p, a * p - p_prev
        q_prev, q = q, a * q - q_prev
    return None if q == 0 else Fraction(p, q)
