from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from plumbcalc.errors import Singular
from plumbcalc.linalg import (Signature, SymMatrix, congruence_diagonal, congruence_signature,
                              determinant, invert, is_negative_definite_dense,
                              leading_principal_minors, rank)
from plumbcalc.tree import framing_matrix, star

from .oracles import cofactor_det, inertia

M50 = SymMatrix.from_rows([[5, 1], [1, 0]])
STAR = framing_matrix(star(-2, [2, -1, -1]))


@st.composite
def sym_matrices(draw, max_size=8):
    s = draw(st.integers(0, max_size))
    rows = [[0] * s for _ in range(s)]
    for i in range(s):
        for j in range(i, s):
            rows[i][j] = rows[j][i] = draw(st.integers(-5, 5))
    return rows


@pytest.mark.parametrize("m, want", [
    (M50, -1),
    (SymMatrix.from_rows([[7]]), 7),
    (STAR, -1),
    (SymMatrix.from_rows([]), 1),
])
def test_determinant_examples(m, want):
    assert determinant(m) == want


@pytest.mark.parametrize("m, want", [
    (M50, (1, 1, 0)),
    (SymMatrix.diagonal([-2, -2]), (0, 2, 0)),
    (STAR, (1, 3, 0)),
    (SymMatrix.from_rows([]), (0, 0, 0)),
    (SymMatrix.from_rows([[0, 1], [1, 0]]), (1, 1, 0)),
])
def test_signature_examples(m, want):
    assert congruence_signature(m) == want


def test_signature_prints_as_triple():
    assert str(Signature(1, 3, 0)) == "(1,3,0)"


def test_invert_examples():
    inv = invert(M50)
    assert inv.to_lists() == [[0, 1], [1, -5]]
    assert M50 @ inv == SymMatrix.identity(2).to_lists()
    assert invert(SymMatrix.identity(3)) == SymMatrix.identity(3)
    with pytest.raises(Singular):
        invert(SymMatrix.from_rows([[1, 1], [1, 1]]))


@pytest.mark.parametrize("rows, want", [
    ([[-1, 0], [0, -2]], True),
    ([[5, 1], [1, 0]], False),
    ([[-2, 1], [1, -1]], True),
    ([[-1, 1], [1, -1]], False),
])
def test_negative_definite_examples(rows, want):
    assert is_negative_definite_dense(SymMatrix.from_rows(rows)) is want


def test_leading_minors():
    assert leading_principal_minors(SymMatrix.from_rows([[-2, 1, 0], [1, -2, 1], [0, 1, -2]])) \
        == [-2, 3, -4]


def test_rejects_asymmetric():
    with pytest.raises(ValueError):
        SymMatrix.from_rows([[1, 2], [3, 4]])


def test_fraction_entries_are_canonical():
    m = SymMatrix.from_rows([[Fraction(2, 4)]])
    assert m[0, 0] == Fraction(1, 2) and m[0, 0].denominator == 2


@settings(max_examples=300, deadline=None)
@given(sym_matrices())
def test_determinant_matches_cofactor_expansion(rows):
    assert determinant(SymMatrix.from_rows(rows)) == cofactor_det(rows)


@settings(max_examples=300, deadline=None)
@given(sym_matrices())
def test_signature_matches_characteristic_polynomial(rows):
    m = SymMatrix.from_rows(rows)
    sig = congruence_signature(m)
    assert tuple(sig) == inertia(rows)
    assert sig.n_zero == m.size - rank(m)
    assert (sig.n_zero == 0) == (determinant(m) != 0)


@settings(max_examples=200, deadline=None)
@given(sym_matrices())
def test_negative_definite_agrees_with_signature(rows):
    m = SymMatrix.from_rows(rows)
    assert is_negative_definite_dense(m) == (congruence_signature(m) == (0, m.size, 0))


@settings(max_examples=200, deadline=None)
@given(sym_matrices(max_size=6))
def test_double_inverse(rows):
    m = SymMatrix.from_rows(rows)
    if determinant(m) == 0:
        with pytest.raises(Singular):
            invert(m)
    else:
        assert invert(invert(m)) == m


@settings(max_examples=200, deadline=None)
@given(sym_matrices())
def test_congruence_diagonal_product_is_determinant(rows):
    m = SymMatrix.from_rows(rows)
    prod = Fraction(1)
    for d in congruence_diagonal(m):
        prod *= d
    assert prod == determinant(m)
