from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from nchess import exact
from nchess.freealg import NcPoly
from nchess.kronops import (
    border_vector_symbolic,
    h_col,
    index_word,
    kron_index,
    mat_g,
    pequal,
    pkron,
    pmatmul,
    poly_matrix,
    ptranspose,
    reversal_permutation,
    structured_transpose,
    vec,
    verify_identity,
    words,
    x_col,
    x_row,
)
from nchess.ncparse import parse

small_q = st.fractions(min_value=-3, max_value=3, max_denominator=3)


def test_index_maps():
    assert words(2, 2) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert kron_index((1, 0, 1), 2) == 5
    assert index_word(5, 2, 3) == (1, 0, 1)
    for g in (1, 2, 3):
        for j in range(4):
            assert [kron_index(w, g) for w in words(g, j)] == list(range(g ** j))


def test_reversal_permutation():
    assert list(reversal_permutation(2, 1).image) == [0, 2, 1, 3]
    assert list(reversal_permutation(3, 0).image) == [0, 1, 2]
    for g in (1, 2, 3):
        for j in range(4):
            P = reversal_permutation(g, j)
            assert list(P.compose(P).image) == list(range(P.size))
            assert np.array_equal(P.matrix() @ P.matrix(), exact.identity(P.size))


def test_vec_mat():
    assert list(vec(exact.identity(2))) == [1, 0, 0, 1]
    with pytest.raises(ValueError):
        mat_g(np.array([Fraction(1)] * 5, dtype=object), 2)


@given(st.lists(small_q, min_size=6, max_size=6), st.lists(small_q, min_size=4, max_size=4))
def test_vec_mat_inverse_and_projector(a, pe):
    A = np.array(a, dtype=object).reshape(2, 3)
    assert np.array_equal(mat_g(vec(A), 2), A)
    w = vec(A)
    assert np.array_equal(vec(mat_g(w, 2)), w)
    # mat_g((P kron I_g) w) = (mat_g w) P^T with P acting on the second index
    P = np.array(pe, dtype=object).reshape(2, 2)
    w = np.array(a[:4], dtype=object)
    assert np.array_equal(mat_g(exact.kron(P, exact.identity(2)) @ w, 2), mat_g(w, 2) @ P.T)


def test_structured_transpose_worked_example():
    g = 2
    C = np.array([[f"c{i}{j}" for j in range(1, 5)] for i in range(1, 3)], dtype=object)
    expect = np.array([["c11", "c12", "c21", "c22"], ["c13", "c14", "c23", "c24"]], dtype=object)
    assert np.array_equal(structured_transpose(C, g), expect)
    same = np.array([[1, 2, 1, 2], [1, 2, 1, 2]], dtype=object)
    assert np.array_equal(structured_transpose(same, 2), same)
    with pytest.raises(ValueError):
        structured_transpose(np.zeros((2, 3), dtype=object), 2)


@given(st.lists(small_q, min_size=18, max_size=18))
def test_structured_transpose_involution(entries):
    C = np.array(entries[:8], dtype=object).reshape(2, 4)
    assert np.array_equal(structured_transpose(structured_transpose(C, 2), 2), C)
    C3 = np.array(entries + entries[:9], dtype=object).reshape(3, 9)
    assert np.array_equal(structured_transpose(structured_transpose(C3, 3), 3), C3)


def test_border_vector():
    V1 = border_vector_symbolic(2, 1)[:, 0]
    assert list(V1) == [parse(s, 2, allow_h=True) for s in ("h1*x1", "h2*x1", "h1*x2", "h2*x2")]
    assert list(border_vector_symbolic(1, 2)[:, 0]) == [parse("h1*x1^2", 1, allow_h=True)]


@pytest.mark.parametrize("g", [1, 2, 3])
@pytest.mark.parametrize("j", [0, 1, 2, 3])
def test_border_transpose_is_kron(g, j):
    # V_j^T = [x]_j kron [h] (entries involuted)
    Vt = ptranspose(border_vector_symbolic(g, j), g)
    hr = np.array([[NcPoly.monomial((g + i,), g) for i in range(g)]], dtype=object)
    xr = x_row(g, j) if j else poly_matrix(np.array([[Fraction(1)]], dtype=object), g)
    assert pequal(Vt, pkron(xr, hr, g), g)


@pytest.mark.parametrize("g", [1, 2, 3])
@pytest.mark.parametrize("j", [0, 1, 2])
def test_vja_nov6d6(g, j):
    P = reversal_permutation(g, j).matrix()
    V = border_vector_symbolic(g, j)
    xc = x_col(g, j) if j else poly_matrix(np.array([[Fraction(1)]], dtype=object), g)
    assert pequal(pmatmul(P, V, g), pmatmul(pkron(h_col(g), exact.identity(g ** j), g), xc, g), g)
    assert pequal(x_col(g, j + 1), pmatmul(P, ptranspose(x_row(g, j + 1), g), g), g)


def test_wrapper_delegates():
    assert verify_identity("ids15", 2).ok
