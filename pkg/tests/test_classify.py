from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from nchess import exact
from nchess.classify import (
    Verdict,
    assemble_scalar_middle,
    berkovich_factor,
    classify_one_negative,
    degree_bound_check,
    poly_from_quad_form,
    quad_form_matrix,
    qz_inertia_check,
    synthesize,
)
from nchess.freealg import NcPoly, evaluate, linear_form
from nchess.midmat import build_middle_matrix
from nchess.ncparse import parse
from nchess.sampling import random_certified_inputs, random_matrix_tuple, rng

from conftest import polys

seeds = st.integers(0, 2 ** 32 - 1)


def test_x4():
    rep = classify_one_negative(parse("x1^4", 1))
    D = rep.data
    assert rep.verdict is Verdict.SIGMA_ONE and rep.case == 1 and rep.sigma == (2, 1)
    assert list(D.u) == [1] and D.A.tolist() == [[2]] and not any(D.y) and not any(D.v)
    assert D.f0 == parse("x1^2", 1) and D.q.is_zero()
    assert D.E1.tolist() == [[0, 0], [0, 2]]


def test_x1x2x1():
    rep = classify_one_negative(parse("x1*x2*x1", 2))
    D = rep.data
    assert rep.verdict is Verdict.SIGMA_ONE and rep.case == 2
    assert list(D.u) == [1, 0] and list(D.y) == [0, 2]
    assert D.q == parse("1/2*x2*x1", 2) and D.f1 == parse("1/2*x2", 2)
    assert D.q == D.f1 * D.phi


def test_other_verdicts():
    rep = classify_one_negative(parse("x1^2 + x2^2", 2))
    assert rep.verdict is Verdict.SIGMA_ZERO and rep.case == 4
    assert classify_one_negative(parse("0", 1)).verdict is Verdict.SIGMA_ZERO
    rep = classify_one_negative(parse("x1^2 - x2^2", 2))
    assert rep.verdict is Verdict.SIGMA_ONE and rep.case == 3
    rep = classify_one_negative(parse("x1^4 + x2^4", 2))
    assert rep.verdict is Verdict.SIGMA_AT_LEAST_TWO and rep.sigma.minus == 2
    with pytest.raises(ValueError):
        classify_one_negative(parse("x1*x2", 2))


def test_synthesize_examples():
    z = NcPoly.zero(1)
    assert synthesize(0, z, z, [1], z, parse("x1^2", 1)) == parse("x1^4", 1)
    z2 = NcPoly.zero(2)
    assert synthesize(0, z2, z2, [1, 0], z2, z2).is_zero()
    with pytest.raises(ValueError):
        synthesize(0, z2, z2, [0, 0], z2, z2)
    with pytest.raises(ValueError):
        synthesize(0, z2, parse("x1", 2), [1, 0], z2, z2)


@given(seeds)
def test_round_trip(seed):
    inp = random_certified_inputs(rng(seed), 2)
    p = synthesize(**inp)
    rep = classify_one_negative(p)
    assert rep.verdict is not Verdict.SIGMA_AT_LEAST_TWO
    assert rep.data.reconstruct() == p
    D = rep.data
    assert D.E1_inertia[1] == 0
    if rep.degree == 3:
        assert not any(D.A.flat) and not any(D.v) and D.q == D.f1 * D.phi


@given(polys(g=2, max_deg=4, symmetric=True, max_terms=4))
def test_classification_is_consistent(p):
    rep = classify_one_negative(p)
    if rep.verdict is Verdict.SIGMA_AT_LEAST_TWO:
        assert rep.sigma.minus >= 2
        return
    if rep.data is not None:
        assert rep.data.reconstruct() == p
    if rep.verdict is Verdict.SIGMA_ZERO and p.degree is not None:
        assert p.degree <= 2
        r = rng(p.degree)
        for _ in range(20):
            X = random_matrix_tuple(r, 2, 3).as_float()
            w = np.linalg.eigvalsh(evaluate(p.homogeneous_part(2), X))
            assert w.min() >= -1e-9
    if rep.case == 1:
        Z = build_middle_matrix(p)
        assert qz_inertia_check(Z, rep.data.u)["ok"]
        D = rep.data
        full = assemble_scalar_middle(Z.scalar_block(0, 0), D.u, D.y, D.v, D.A)
        assert np.array_equal(full, Z.scalar)


def test_degree_bound():
    rep = degree_bound_check(parse("x1^4", 1))
    assert rep["ok"] and rep["degree"] == 2 * rep["sigma"].minus + 2
    assert degree_bound_check(parse("x1^2", 1))["ok"]
    with pytest.raises(ValueError):
        degree_bound_check(parse("x1", 1))


@given(polys(max_deg=5, symmetric=True, min_deg=2))
def test_degree_bound_random(p):
    if p.degree is not None and p.degree >= 2:
        assert degree_bound_check(p)["ok"]


def test_berkovich_examples():
    x = parse("x1", 1)
    assert berkovich_factor([1], [1], parse("x1^2", 1), parse("x1^2", 1)) == x
    f3 = berkovich_factor([1, 0], [0, 1], parse("x1*x2", 2), parse("x1*x1", 2))
    assert f3 == parse("x1", 2)
    with pytest.raises(ValueError):
        berkovich_factor([1, 0], [0, 0], parse("x1", 2), parse("x1", 2))
    with pytest.raises(ValueError):
        berkovich_factor([1, 0], [0, 1], parse("x1", 2), parse("x2", 2))


@given(polys(g=2, max_deg=3, min_deg=1, max_terms=4),
       st.lists(st.integers(-2, 2), min_size=2, max_size=2),
       st.lists(st.integers(-2, 2), min_size=2, max_size=2))
def test_berkovich_random(f3, u, b):
    if not any(u) or not any(b) or f3.constant_term():
        return
    phi, psi = linear_form(u, 2), linear_form(b, 2)
    assert berkovich_factor(u, b, f3 * psi, phi * f3) == f3


def test_quad_form():
    assert quad_form_matrix(parse("x1*x2", 2)).tolist() == [[0, 1], [0, 0]]
    assert quad_form_matrix(parse("1/2*x2*x1", 2)).tolist() == [[0, 0], [Fraction(1, 2), 0]]
    with pytest.raises(ValueError):
        quad_form_matrix(parse("x1", 2))


@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=3), min_size=9, max_size=9))
def test_quad_form_round_trip(entries):
    Q = np.array(entries, dtype=object).reshape(3, 3)
    q = poly_from_quad_form(Q, 3)
    assert np.array_equal(quad_form_matrix(q) if not q.is_zero() else exact.zeros(3, 3), Q)
