from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from nchess import exact
from nchess.freealg import (
    MatrixTuple,
    NcPoly,
    add,
    evaluate,
    homogeneous_part,
    involution,
    is_symmetric,
    mul,
    substitute_linear,
)
from nchess.ncparse import parse

from conftest import matrix_tuples, polys


def P(s, g=3):
    return parse(s, g)


def test_add_examples():
    assert add(P("x1"), NcPoly.zero(3)) == P("x1")
    assert add(P("x1*x2 + x2"), P("-x2")) == P("x1*x2")
    p2 = P("x1*x2^3") + P("x2^3*x1") + P("x3*x1*x2") + P("x2*x1*x3")
    assert p2 == P("x1*x2^3 + x2^3*x1 + x3*x1*x2 + x2*x1*x3")


def test_mul_examples():
    assert mul(P("x1"), P("x2")) == P("x1*x2") != P("x2*x1")
    assert mul(P("x1 + x2"), P("x1 - x2")) == P("x1*x1 - x1*x2 + x2*x1 - x2*x2")
    assert mul(NcPoly.constant(1, 3), P("x3*x1")) == P("x3*x1")


def test_mismatched_g():
    with pytest.raises(ValueError):
        add(parse("x1", 1), parse("x1", 2))


def test_involution_and_symmetry():
    assert involution(P("x1*x2*x2*x2")) == P("x2*x2*x2*x1")
    assert is_symmetric(P("x1*x2^3 + x2^3*x1 + x3*x1*x2 + x2*x1*x3"))
    assert not is_symmetric(P("x1*x2^3 + x2 + x3*x1*x2"))
    assert is_symmetric(P("x1*x2 + x2*x1"))
    assert not is_symmetric(P("x1*x2"))


def test_homogeneous_parts():
    assert homogeneous_part(parse("x1 + x1*x1", 1), 2) == parse("x1^2", 1)
    p = parse("3 + x1^2", 1)
    assert [homogeneous_part(p, k) for k in range(3)] == [parse("3", 1), NcPoly.zero(1), parse("x1^2", 1)]
    assert homogeneous_part(p, 7).is_zero()


def test_substitute_linear_examples():
    p = P("x1*x2 + x3", 3)
    assert substitute_linear(p, exact.identity(3)) == p
    M = exact.fraction_array([[1, 0], [1, 1]])
    assert substitute_linear(parse("x2", 2), M) == parse("x1 + x2", 2)
    with pytest.raises(ValueError):
        substitute_linear(parse("x1", 2), exact.fraction_array([[1, 1], [1, 1]]))


@given(polys(g=2), st.lists(st.integers(-2, 2), min_size=4, max_size=4))
def test_substitute_round_trip(p, entries):
    M = exact.fraction_array(np.array(entries).reshape(2, 2))
    if exact.rank(M) < 2:
        M = M + exact.identity(2) * 7
    assert substitute_linear(substitute_linear(p, M), exact.inverse(M)) == p


def test_evaluate_examples():
    X = MatrixTuple([exact.fraction_array([[1, 2], [2, 0]])])
    assert np.array_equal(evaluate(parse("3 + x1^2", 1), X), exact.identity(2) * 3 + X[0] @ X[0])
    D = MatrixTuple([exact.fraction_array([[1, 0], [0, 2]]), exact.fraction_array([[3, 0], [0, 5]])])
    assert not evaluate(parse("x1*x2 - x2*x1", 2), D).any()
    with pytest.raises(ValueError):
        evaluate(parse("h1", 1, allow_h=True), X)


def test_matrix_tuple_rejects_nonsymmetric():
    with pytest.raises(ValueError):
        MatrixTuple([exact.fraction_array([[1, 2], [3, 4]])])


@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    if not (p.g == q.g == r.g):
        return
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p + q) * r == p * r + q * r


@given(st.integers(1, 3).flatmap(lambda g: st.tuples(polys(g=g), polys(g=g))))
def test_involution_anti_automorphism(pq):
    p, q = pq
    assert involution(involution(p)) == p
    assert involution(p * q) == involution(q) * involution(p)
    if not p.is_zero() and not q.is_zero():
        assert (p * q).degree == p.degree + q.degree


@given(st.integers(1, 2).flatmap(lambda g: st.tuples(polys(g=g, max_deg=3), polys(g=g, max_deg=3),
                                                     matrix_tuples(g))))
def test_evaluate_homomorphism(data):
    p, q, X = data
    assert np.array_equal(evaluate(p * q, X), evaluate(p, X) @ evaluate(q, X))
    assert np.array_equal(evaluate(p.T, X), evaluate(p, X).T)


def test_float_evaluation():
    X = MatrixTuple([np.array([[1.0, 0.5], [0.5, 2.0]])])
    out = evaluate(parse("x1^2 + 1/2", 1), X)
    assert np.allclose(out, X[0] @ X[0] + 0.5 * np.eye(2))
    assert out.dtype == float
    assert Fraction(1, 2) == parse("1/2", 1).constant_term()
