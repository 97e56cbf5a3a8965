import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

from nchess import exact
from nchess.inertia import exact_inertia, gram_sds, is_psd, min_signature_hessian, sds_from_hessian
from nchess.ncderiv import hessian
from nchess.ncparse import parse
from nchess.oracles import descartes_inertia

from conftest import polys, sym_matrices


def test_examples():
    assert exact_inertia(exact.identity(3))[0] == (3, 0, 0)
    assert exact_inertia(exact.fraction_array([[0, 2], [2, 0]]))[0] == (1, 1, 0)
    assert exact_inertia(exact.fraction_array([[0, 0, 2], [0, 2, 0], [2, 0, 0]]))[0] == (2, 1, 0)
    assert exact_inertia(exact.zeros(2, 2))[0] == (0, 0, 2)
    with pytest.raises(ValueError):
        exact_inertia(exact.fraction_array([[0, 1], [2, 0]]))
    assert is_psd(exact.zeros(0, 0))


@given(st.integers(1, 6).flatmap(lambda n: sym_matrices(n)))
def test_certificate_and_char_poly_oracle(M):
    inr, cert = exact_inertia(M)
    assert np.array_equal(cert.reconstruct(), exact.fraction_array(M))
    assert exact.rank(cert.T) == M.shape[0]
    assert tuple(inr) == descartes_inertia(M)


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(sym_matrices(n), sym_matrices(n))))
def test_sylvester(pair):
    M, S = pair
    T = S + exact.identity(M.shape[0]) * 20  # diagonally dominant, invertible
    assert exact_inertia(T.T @ M @ T)[0] == exact_inertia(M)[0]


def test_signature_examples():
    assert min_signature_hessian(parse("x1^4", 1)) == (2, 1)
    assert min_signature_hessian(parse("x1^2 + x2^2", 2)) == (2, 0)
    assert min_signature_hessian(parse("-x1^2", 1)) == (0, 1)
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        assert min_signature_hessian(parse("x1", 1)) == (0, 0)
        assert w


def test_sds_examples():
    dec = sds_from_hessian(parse("x1^2", 1))
    assert dec.counts == (1, 0) and dec.expand(1) == hessian(parse("x1^2", 1))
    dec = sds_from_hessian(parse("x1^4", 1))
    assert dec.counts == (2, 1) and dec.expand(1) == hessian(parse("x1^4", 1))
    assert sds_from_hessian(parse("-x1^2", 1)).counts == (0, 1)


@given(polys(max_deg=5, symmetric=True, min_deg=2))
def test_sds_minimal_and_exact(p):
    if p.degree is None or p.degree < 2:
        return
    dec = sds_from_hessian(p)
    assert dec.expand(p.g) == hessian(p)
    assert dec.counts == min_signature_hessian(p)
    assert all(w > 0 for w, _ in dec.plus_terms + dec.minus_terms)


def test_gram_examples():
    dec = gram_sds(parse("x1^2", 1))
    assert dec.counts == (1, 0) and dec.expand(1) == parse("x1^2", 1)
    dec = gram_sds(parse("x1*x2 + x2*x1", 2))
    assert dec.counts == (1, 1)
    assert gram_sds(parse("0", 1)).counts == (0, 0)


@given(polys(max_deg=4, symmetric=True))
def test_gram_valid(p):
    assert gram_sds(p).expand(p.g) == p
