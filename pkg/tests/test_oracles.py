import numpy as np
from hypothesis import given, strategies as st

from nchess import exact
from nchess.oracles import charpoly, descartes_inertia, taylor_derivative
from nchess.ncparse import parse

from conftest import sym_matrices


def test_charpoly_small():
    M = exact.fraction_array([[2, 1], [1, 2]])
    assert charpoly(M) == [1, -4, 3]
    assert descartes_inertia(M) == (2, 0, 0)
    assert descartes_inertia(exact.fraction_array([[0, 0, 2], [0, 2, 0], [2, 0, 0]])) == (2, 1, 0)
    assert descartes_inertia(exact.zeros(3, 3)) == (0, 0, 3)


@given(st.integers(1, 5).flatmap(lambda n: sym_matrices(n, bound=4)))
def test_charpoly_matches_numpy(M):
    ours = [float(c) for c in charpoly(M)]
    assert np.allclose(ours, np.poly(np.asarray(M, dtype=float)), atol=1e-6)


def test_taylor_small():
    assert taylor_derivative(parse("x1^2", 1), 2) == parse("2*h1^2", 1, allow_h=True)
    assert taylor_derivative(parse("x1*x2", 2), 3).is_zero()
