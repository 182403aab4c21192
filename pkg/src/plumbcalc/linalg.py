"""Exact dense linear algebra over the rationals.

Everything here works on :class:`fractions.Fraction` entries, so no rounding
ever happens.  These routines know nothing about trees; they are the
independent oracle that the combinatorial algorithms are checked against.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, NamedTuple, Sequence

from .errors import Singular

Rational = Fraction


class Signature(NamedTuple):
    """Inertia triple of a symmetric matrix."""

    n_plus: int
    n_minus: int
    n_zero: int

    @property
    def dimension(self) -> int:
        return self.n_plus + self.n_minus + self.n_zero

    def __str__(self) -> str:
        return f"({self.n_plus},{self.n_minus},{self.n_zero})"


def signature_of_values(values: Iterable[Fraction]) -> Signature:
    plus = minus = zero = 0
    for x in values:
        if x > 0:
            plus += 1
        elif x < 0:
            minus += 1
        else:
            zero += 1
    return Signature(plus, minus, zero)


@dataclass(frozen=True)
class SymMatrix:
    """Immutable symmetric matrix with rational entries."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        s = len(self.rows)
        for i, row in enumerate(self.rows):
            if len(row) != s:
                raise ValueError(f"row {i} has length {len(row)}, expected {s}")
        for i in range(s):
            for j in range(i + 1, s):
                if self.rows[i][j] != self.rows[j][i]:
                    raise ValueError(f"not symmetric at ({i}, {j})")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "SymMatrix":
        return cls(tuple(tuple(Fraction(x) for x in row) for row in rows))

    @classmethod
    def identity(cls, s: int) -> "SymMatrix":
        return cls.from_rows([[int(i == j) for j in range(s)] for i in range(s)])

    @classmethod
    def diagonal(cls, values: Sequence) -> "SymMatrix":
        s = len(values)
        return cls.from_rows(
            [[values[i] if i == j else 0 for j in range(s)] for i in range(s)]
        )

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def to_lists(self) -> list[list[Fraction]]:
        return [list(row) for row in self.rows]

    def principal(self, indices: Sequence[int]) -> "SymMatrix":
        """Principal submatrix on ``indices`` (in the given order)."""
        return SymMatrix(tuple(tuple(self.rows[i][j] for j in indices) for i in indices))

    def __matmul__(self, other: "SymMatrix") -> list[list[Fraction]]:
        # product of symmetric matrices is not symmetric in general
        s = self.size
        return [
            [sum((self.rows[i][k] * other.rows[k][j] for k in range(s)), Fraction(0))
             for j in range(s)]
            for i in range(s)
        ]


def _bareiss(a: list[list[int]], pivoting: bool = True) -> int:
    """Fraction-free elimination on an integer matrix, in place; returns det."""
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            if not pivoting:
                return 0
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            aik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def _clear_denominators(m: SymMatrix) -> tuple[list[list[int]], int]:
    """Scale each column by the lcm of its denominators.

    Returns the integer matrix and the product of the (positive) scale
    factors.
    """
    s = m.size
    scales = [lcm(*(m.rows[i][j].denominator for i in range(s))) for j in range(s)]
    ints = [[int(m.rows[i][j] * scales[j]) for j in range(s)] for i in range(s)]
    total = 1
    for c in scales:
        total *= c
    return ints, total


def determinant(m: SymMatrix) -> Fraction:
    s = m.size
    if s == 0:
        return Fraction(1)
    ints, scale = _clear_denominators(m)
    return Fraction(_bareiss(ints), scale)


def leading_principal_minors(m: SymMatrix) -> list[Fraction]:
    """Leading principal minors Delta_1..Delta_s.

    Uses Bareiss without pivoting: after step k the (k, k) entry is the
    (k+1)-th leading minor of the scaled matrix.  Stops early and pads with
    exact values computed by :func:`determinant` once a zero minor blocks
    the elimination.
    """
    s = m.size
    if s == 0:
        return []
    ints, _ = _clear_denominators(m)
    scales = [lcm(*(m.rows[i][j].denominator for i in range(s))) for j in range(s)]
    minors: list[Fraction] = []
    a = [row[:] for row in ints]
    prev = 1
    cumulative = 1
    for k in range(s):
        cumulative *= scales[k]
        akk = a[k][k]
        minors.append(Fraction(akk, cumulative))
        if akk == 0:
            break
        for i in range(k + 1, s):
            aik = a[i][k]
            for j in range(k + 1, s):
                a[i][j] = (a[i][j] * akk - aik * a[k][j]) // prev
        prev = akk
    for k in range(len(minors), s):
        minors.append(determinant(m.principal(range(k + 1))))
    return minors


def congruence_diagonal(m: SymMatrix) -> list[Fraction]:
    """Diagonal of a matrix congruent to ``m`` by unipotent operations.

    Symmetric elimination with pivoting: a nonzero diagonal entry is used
    as a 1x1 pivot; if every remaining diagonal entry is zero but some
    coupling a_ij is not, the hyperbolic block [[0, a], [a, 0]] is taken as
    a 2x2 pivot and reported as the congruent pair (2a, -a/2).  Remaining
    all-zero rows contribute zeros.  The product of the result equals
    ``determinant(m)``.
    """
    a = m.to_lists()
    active = list(range(m.size))
    out: list[Fraction] = []
    while active:
        p = next((i for i in active if a[i][i] != 0), None)
        if p is not None:
            piv = a[p][p]
            out.append(piv)
            active.remove(p)
            col = [a[x][p] for x in range(len(a))]
            for x in active:
                if col[x] == 0:
                    continue
                f = col[x] / piv
                for y in active:
                    if col[y]:
                        a[x][y] -= f * col[y]
            continue
        pair = next(
            ((i, j) for i in active for j in active if i < j and a[i][j] != 0), None
        )
        if pair is None:
            out.extend(Fraction(0) for _ in active)
            break
        i, j = pair
        c = a[i][j]
        out.extend((2 * c, -c / 2))
        active.remove(i)
        active.remove(j)
        ci = [a[x][i] for x in range(len(a))]
        cj = [a[x][j] for x in range(len(a))]
        for x in active:
            for y in active:
                delta = ci[x] * cj[y] + cj[x] * ci[y]
                if delta:
                    a[x][y] -= delta / c
    return out


def congruence_signature(m: SymMatrix) -> Signature:
    return signature_of_values(congruence_diagonal(m))


def rank(m: SymMatrix) -> int:
    return m.size - congruence_signature(m).n_zero


def invert(m: SymMatrix) -> SymMatrix:
    """Exact inverse by Gauss-Jordan elimination; raises Singular."""
    s = m.size
    aug = [list(m.rows[i]) + [Fraction(int(i == j)) for j in range(s)] for i in range(s)]
    for col in range(s):
        pivot = next((r for r in range(col, s) if aug[r][col] != 0), None)
        if pivot is None:
            raise Singular("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv_p = 1 / aug[col][col]
        aug[col] = [x * inv_p for x in aug[col]]
        for r in range(s):
            f = aug[r][col]
            if r != col and f != 0:
                row_c = aug[col]
                aug[r] = [x - f * y for x, y in zip(aug[r], row_c)]
    return SymMatrix(tuple(tuple(row[s:]) for row in aug))


def is_negative_definite_dense(m: SymMatrix) -> bool:
    """Sylvester's criterion: (-1)^k Delta_k > 0 for every leading minor."""
    s = m.size
    if s == 0:
        return True
    ints, _ = _clear_denominators(m)
    # column scaling by positive factors keeps the signs of the minors
    a = ints
    prev = 1
    for k in range(s):
        akk = a[k][k]
        if akk == 0 or (akk > 0) != (k % 2 == 1):
            return False
        for i in range(k + 1, s):
            aik = a[i][k]
            for j in range(k + 1, s):
                a[i][j] = (a[i][j] * akk - aik * a[k][j]) // prev
        prev = akk
    return True
