from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from nchess import exact
from nchess.identities import verify_identity
from nchess.inertia import exact_inertia
from nchess.kronops import ptranspose, structured_transpose
from nchess.midmat import (
    build_W,
    build_middle_matrix,
    check_splits,
    gradient_coefficients,
    modified_scalar_middle,
    recover_homogeneous,
    relaxed_scalar_middle,
    verify_appendix,
    verify_oct20a8,
)
from nchess.ncderiv import directional_derivative, hessian
from nchess.ncparse import parse
from nchess.oracles import symbolic_hessian_from_middle

from conftest import polys


def F(rows):
    return exact.fraction_array(rows)


def test_x4():
    Z = build_middle_matrix(parse("x1^4", 1))
    expect = [["2*x1^2", "2*x1", "2"], ["2*x1", "2", "0"], ["2", "0", "0"]]
    full = Z.full()
    for r in range(3):
        for c in range(3):
            assert full[r, c] == parse(expect[r][c], 1)
    assert np.array_equal(Z.scalar, F([[0, 0, 2], [0, 2, 0], [2, 0, 0]]))


def test_x1x2x1():
    Z = build_middle_matrix(parse("x1*x2*x1", 2))
    Z01 = Z.scalar_block(0, 1)
    # column h2 x1 is kron position idx(x1)*g + 1 = 1
    assert [(r, c) for r, c in zip(*np.nonzero(Z01 != 0))] == [(0, 1)]
    assert Z01[0, 1] == 2
    assert Z.block(0, 0)[0, 0] == parse("2*x2", 2)


def test_degree_two_and_errors():
    Z = build_middle_matrix(parse("x1^2", 1))
    assert Z.scalar.tolist() == [[2]] and Z.nblocks == 1
    with pytest.raises(ValueError):
        build_middle_matrix(parse("x1*x2", 2))
    with pytest.raises(ValueError):
        build_middle_matrix(parse("x1 + 1", 1))


def test_recover_examples():
    parts = recover_homogeneous(build_middle_matrix(parse("x1^4", 1)))
    assert parts[4] == parse("x1^4", 1) and parts[2].is_zero() and parts[3].is_zero()
    parts = recover_homogeneous(build_middle_matrix(parse("x1*x2*x1", 2)))
    assert parts[3] == parse("x1*x2*x1", 2)


@given(polys(max_deg=5, max_terms=6, symmetric=True, min_deg=0))
def test_middle_matrix_contract(p):
    if p.degree is None or p.degree < 2:
        return
    Z = build_middle_matrix(p)
    assert symbolic_hessian_from_middle(Z) == hessian(p)
    assert np.array_equal(Z.scalar, Z.scalar.T)
    assert check_splits(Z)
    parts = recover_homogeneous(Z)
    assert all(parts[k] == p.homogeneous_part(k) for k in parts)
    for (i, j), blk in Z.blocks.items():
        assert i + j <= Z.d - 2
        other = ptranspose(Z.block(j, i), p.g)
        assert all(a == b for a, b in zip(blk.flat, other.flat))
        if i + j == Z.d - 2:
            assert all(e.is_constant() for e in blk.flat)


@given(polys(max_deg=5, max_terms=6, symmetric=True))
def test_z01_block_symmetric(p):
    if p.degree is None or p.degree < 3:
        return
    Z01 = build_middle_matrix(p).scalar_block(0, 1)
    assert np.array_equal(structured_transpose(Z01, p.g), Z01)


def test_gradient_examples():
    G = gradient_coefficients(parse("x1^2", 1))
    assert G.psi[0][0, 0] == parse("x1", 1) and G.psi[1][0, 0] == parse("1", 1)
    assert list(gradient_coefficients(parse("x1^4", 1)).at_zero(3)) == [1]
    assert gradient_coefficients(parse("x1", 1)).psi[0][0, 0] == parse("1", 1)
    W = build_W(parse("x1^2", 1))
    assert W[(0, 0)][0, 0] == parse("x1^2", 1) and W[(0, 1)][0, 0] == parse("x1", 1)
    assert W[(1, 1)][0, 0] == parse("1", 1)
    assert build_W(parse("3", 1)) == {}


@given(polys(g=2, max_deg=4, symmetric=True, min_deg=1))
def test_gradient_and_W(p):
    if p.degree is None or p.degree < 1:
        return
    G = gradient_coefficients(p)
    assert G.reconstruct() == directional_derivative(p)
    for s, col in enumerate(G.psi):
        assert all(e.is_zero() or e.degree <= p.degree - 1 - s for e in col.flat)
    W = build_W(p)
    for (i, j), blk in W.items():
        assert all(a == b for a, b in zip(blk.flat, ptranspose(W[(j, i)], 2).flat))


def test_modified_examples():
    M = modified_scalar_middle(parse("x1^2", 1), 1).matrix()
    assert M.tolist() == [[2, 0], [0, 1]]
    base = exact_inertia(build_middle_matrix(parse("x1^4", 1)).scalar)[0]
    mod = exact_inertia(modified_scalar_middle(parse("x1^4", 1), 1).matrix())[0]
    assert (mod.mu_plus, mod.mu_minus) == (3, 1) == (base.mu_plus + 1, base.mu_minus)
    zero = exact_inertia(modified_scalar_middle(parse("x1^4", 1), 0).matrix())[0]
    assert zero == (base.mu_plus, base.mu_minus, base.mu_zero + 1)
    R = relaxed_scalar_middle(parse("x1^2", 1), 1, Fraction(1, 2))
    assert R.tolist() == [[Fraction(5, 2), 0], [0, Fraction(3, 2)]]


@given(polys(max_deg=4, symmetric=True, min_deg=2), st.fractions(min_value=Fraction(1, 10), max_value=5))
def test_abs_mod_hess(p, lam):
    if p.degree is None or p.degree < 2:
        return
    base = exact_inertia(build_middle_matrix(p).scalar)[0]
    mod = exact_inertia(modified_scalar_middle(p, lam).matrix())[0]
    assert mod.mu_plus == base.mu_plus + 1 and mod.mu_minus == base.mu_minus
    assert (mod.mu_minus == 0) == (base.mu_minus == 0)


def test_oct20a8_examples():
    assert verify_oct20a8(parse("x1^4", 1))["ok"]
    assert verify_oct20a8(parse("x1^2 + x2^2", 2))["ok"]


@given(polys(g=2, max_deg=4, symmetric=True, min_deg=2))
def test_oct20a8_random(p):
    if p.degree is None or p.degree < 2:
        return
    assert verify_oct20a8(p)["ok"]


def test_appendix_examples():
    rep = verify_appendix(parse("x1^4", 1))
    assert rep == {"gradient_entries": True, "w_factorization": True, "end_terms_vanish": True, "ok": True}
    rep = verify_appendix(parse("x1^2 + x1", 1))
    assert rep["end_terms_vanish"] is None and rep["ok"]


@given(polys(g=2, max_deg=4, symmetric=True, min_deg=2))
def test_appendix_random(p):
    if p.degree is None or p.degree < 2:
        return
    assert verify_appendix(p)["ok"]
    hom = p.homogeneous_part(p.degree)
    rep = verify_appendix(hom)
    assert rep["w_factorization"] is True and rep["gradient_entries"]


def test_z0j_symmetry_reversed_identity_holds():
    assert verify_identity("Z0j-reversed-symmetry", 2).ok
