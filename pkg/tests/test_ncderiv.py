from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from nchess import exact
from nchess.freealg import MatrixTuple, evaluate
from nchess.ncderiv import directional_derivative, hessian, kth_derivative
from nchess.ncparse import parse
from nchess.oracles import taylor_derivative

from conftest import matrix_tuples, polys


def H(s, g):
    return parse(s, g, allow_h=True)


def test_examples():
    x4 = parse("x1^4", 1)
    assert directional_derivative(x4) == H("h1*x1^3 + x1*h1*x1^2 + x1^2*h1*x1 + x1^3*h1", 1)
    assert kth_derivative(x4, 3) == H("6*(h1^3*x1 + h1^2*x1*h1 + h1*x1*h1^2 + x1*h1^3)", 1)
    assert kth_derivative(x4, 4) == H("24*h1^4", 1)
    assert kth_derivative(x4, 5).is_zero()
    assert directional_derivative(parse("x2*x1*x2", 2)) == H("h2*x1*x2 + x2*h1*x2 + x2*x1*h2", 2)
    assert hessian(parse("x1^2*x2", 2)) == H("2*(h1^2*x2 + h1*x1*h2 + x1*h1*h2)", 2)
    assert hessian(parse("x1*x2*x1", 2)) == H("2*(h1*h2*x1 + h1*x2*h1 + x1*h2*h1)", 2)
    assert directional_derivative(parse("5", 2)).is_zero()
    assert hessian(parse("x1 + 3", 1)).is_zero()


def test_errors():
    with pytest.raises(ValueError):
        directional_derivative(H("h1", 1))
    with pytest.raises(ValueError):
        kth_derivative(parse("x1", 1), 0)


@given(polys(max_deg=5), st.integers(1, 3))
def test_matches_taylor_oracle(p, k):
    assert kth_derivative(p, k) == taylor_derivative(p, k)


@given(st.integers(1, 2).flatmap(lambda g: st.tuples(polys(g=g), polys(g=g))))
def test_linearity_and_product_rule(pq):
    p, q = pq
    D = directional_derivative
    assert D(p + q) == D(p) + D(q)
    assert D(p * q) == D(p) * q + p * D(q)


@given(polys(symmetric=True))
def test_symmetry_preserved(p):
    assert directional_derivative(p).T == directional_derivative(p)
    assert hessian(p).T == hessian(p)
    if p.degree is not None and p.degree >= 2 and not hessian(p).is_zero():
        assert hessian(p).degree == p.degree


@given(st.integers(1, 2).flatmap(lambda g: st.tuples(polys(g=g, max_deg=3), matrix_tuples(g, 2),
                                                     matrix_tuples(g, 2))))
def test_matrix_taylor_coefficients(data):
    # interpolate t -> p(X + tH) entrywise; read off the t and t^2 coefficients
    p, X, Hm = data
    ts = list(range(max(p.degree or 0, 2) + 1))
    vals = [evaluate(p, MatrixTuple([X[j] + Hm[j] * Fraction(t) for j in range(X.g)])) for t in ts]
    Vinv = exact.inverse(np.array([[Fraction(t) ** j for j in range(len(ts))] for t in ts], dtype=object))

    def coeff(k):
        return sum((Vinv[k, i] * vals[i] for i in range(len(ts))), start=vals[0] * 0)

    assert np.array_equal(coeff(1), evaluate(directional_derivative(p), X, Hm))
    assert np.array_equal(coeff(2) * 2, evaluate(hessian(p), X, Hm))
