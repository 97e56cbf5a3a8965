"""Seeded random generators for polynomials, matrices and matrix points."""
from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from . import exact
from .freealg import MatrixTuple, NcPoly

__all__ = [
    "rng",
    "random_rational",
    "random_word",
    "random_poly",
    "random_symmetric_poly",
    "random_homogeneous_symmetric",
    "random_vector",
    "random_matrix",
    "random_symmetric_matrix",
    "random_matrix_tuple",
    "random_certified_inputs",
]


def rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_rational(r: random.Random, bound: int = 5, denom: int = 3) -> Fraction:
    return Fraction(r.randint(-bound, bound), r.randint(1, denom))


def _nonzero_rational(r, bound=5, denom=3):
    while True:
        c = random_rational(r, bound, denom)
        if c:
            return c


def random_word(r: random.Random, g: int, length: int) -> tuple:
    return tuple(r.randrange(g) for _ in range(length))


def random_poly(r, g: int, d: int, nterms: int = 6) -> NcPoly:
    """Random x-polynomial with a term of degree exactly ``d``."""
    terms = {random_word(r, g, d): _nonzero_rational(r)}
    for _ in range(nterms - 1):
        w = random_word(r, g, r.randint(0, d))
        terms[w] = terms.get(w, 0) + _nonzero_rational(r)
    p = NcPoly(g, terms)
    return p if p.degree == d else random_poly(r, g, d, nterms)


def random_symmetric_poly(r, g: int, d: int, max_terms: int = 12) -> NcPoly:
    """Symmetric polynomial of degree exactly ``d`` with at most ``max_terms`` terms."""
    while True:
        q = random_poly(r, g, d, max(1, max_terms // 2))
        p = q + q.T
        if p.degree == d and len(p.terms) <= max_terms:
            return p


def random_homogeneous_symmetric(r, g: int, k: int, nterms: int = 4) -> NcPoly:
    while True:
        terms = {}
        for _ in range(nterms):
            w = random_word(r, g, k)
            terms[w] = terms.get(w, 0) + _nonzero_rational(r)
        q = NcPoly(g, terms)
        p = q + q.T
        if not p.is_zero():
            return p


def random_vector(r, n: int, bound: int = 5, denom: int = 3) -> np.ndarray:
    return np.array([random_rational(r, bound, denom) for _ in range(n)], dtype=object)


def random_matrix(r, rows: int, cols: int, bound: int = 5, denom: int = 3) -> np.ndarray:
    out = exact.zeros(rows, cols)
    for i in range(rows):
        for j in range(cols):
            out[i, j] = random_rational(r, bound, denom)
    return out


def random_symmetric_matrix(r, n: int, bound: int = 5, denom: int = 3) -> np.ndarray:
    m = random_matrix(r, n, n, bound, denom)
    return (m + m.T) * Fraction(1, 2)


def random_matrix_tuple(r, g: int, n: int, bound: int = 3, denom: int = 1) -> MatrixTuple:
    return MatrixTuple([random_symmetric_matrix(r, n, bound, denom) for _ in range(g)])


def random_certified_inputs(r, g: int) -> dict:
    """Random ``(p0, p1, p2, u, q, f0)`` whose certificate ``E2`` is PSD.

    ``E2 = diag(P, I) R^T R diag(P, I)``; extra terms along ``u`` are added
    to ``Q(p2)`` and ``Q(q)`` where the projector ``P`` cannot see them.
    Roughly a third of the draws drop ``f0`` (degree three) and a few also
    drop ``q`` (degree two).
    """
    from .classify import poly_from_quad_form

    while True:
        u = np.array([Fraction(r.randint(-2, 2)) for _ in range(g)], dtype=object)
        if any(u):
            break
    k = r.randint(1, 2 * g)
    R = random_matrix(r, k, 2 * g, bound=2, denom=1)
    G = R.T @ R
    G11, G12, G22 = G[:g, :g], G[:g, g:], G[g:, g:]
    mode = r.random()
    if mode < 0.35:
        G12 = exact.zeros(g, g)
        G22 = exact.zeros(g, g)
    b = random_vector(r, g, 2, 2)
    c = random_vector(r, g, 2, 2)
    alpha = random_rational(r, 2, 2)
    Qp2 = G11 + np.outer(u, u) * alpha + np.outer(u, b) + np.outer(b, u)
    Qq = G12.T + np.outer(c, u)
    if mode < 0.1:
        Qq = exact.zeros(g, g)
    return {
        "p0": random_rational(r),
        "p1": NcPoly(g, {(j,): random_rational(r) for j in range(g)}),
        "p2": poly_from_quad_form(Qp2, g),
        "u": u,
        "q": poly_from_quad_form(Qq, g),
        "f0": poly_from_quad_form(G22, g),
    }
