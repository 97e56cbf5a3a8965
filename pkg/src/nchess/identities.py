"""Executable Kronecker / structured-transpose identities.

Each identity is checked by expanding both sides into polynomial matrices
and comparing exactly.  Identities that are linear in each of their vector
or matrix arguments are checked on every tuple of standard basis elements,
which proves them for all arguments.  The rest (quadratic in ``u``, or
quantified over polynomials) are checked on random rational instances.

Where an identity pairs two independent sets of noncommuting variables,
the h-letters play the second set.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from . import exact
from .kronops import (
    h_col,
    h_row,
    mat_g,
    pequal,
    pkron,
    pmatmul,
    poly_matrix,
    ptranspose,
    reversal_permutation,
    structured_transpose,
    vec,
    x_col,
    x_row,
    border_vector_symbolic,
)
from .sampling import random_symmetric_poly, random_vector, rng

__all__ = ["IdentityResult", "IDENTITIES", "verify_identity", "run_suite"]


@dataclass(frozen=True)
class IdentityResult:
    name: str
    g: int
    ok: bool
    method: str  # "basis", "random" or "symbolic"
    cases: int
    counterexample: str = ""


def _basis(n):
    out = []
    for i in range(n):
        e = np.array([Fraction(0)] * n, dtype=object)
        e[i] = Fraction(1)
        out.append(e)
    return out


def _basis_mats(r, c):
    out = []
    for i, j in product(range(r), range(c)):
        m = exact.zeros(r, c)
        m[i, j] = Fraction(1)
        out.append(m)
    return out


def _col(v):
    return np.asarray(v, dtype=object).reshape(-1, 1)


def _row(v):
    return np.asarray(v, dtype=object).reshape(1, -1)


def _T(A, g):
    return ptranspose(A, g)


def _mm(g, *mats):
    out = mats[0]
    for m in mats[1:]:
        out = pmatmul(out, m, g)
    return out


def _pi1(g):
    return reversal_permutation(g, 1).matrix()


# Each checker takes (g, args...) and returns (lhs, rhs) polynomial matrices.

def _id1(g, u, A):
    lhs = _mm(g, x_row(g, 2), exact.kron(_col(u), A))
    phi = _mm(g, x_row(g, 1), _col(u))
    return lhs, _mm(g, phi, x_row(g, 1), A)


def _id2(g, u, A):
    lhs = _mm(g, exact.kron(_col(u), A).T, _T(x_row(g, 2), g))
    phi = _mm(g, x_row(g, 1), _col(u))
    return lhs, _mm(g, A.T, x_col(g, 1), phi)


def _id3(g, u, A):
    lhs = _mm(g, x_row(g, 1), exact.kron(_col(u), A).T)
    return lhs, pkron(_row(u), _mm(g, x_row(g, 1), A.T), g)


def _id4(g):
    lhs = _T(x_row(g, 2), g)
    rhs = _mm(g, pkron(exact.identity(g), _T(x_row(g, 1), g), g), _T(x_row(g, 1), g))
    return lhs, rhs


def _id5(g, a, b):
    lhs = _mm(g, _mm(g, x_row(g, 1), _col(a)), _mm(g, h_row(g), _col(b)))
    rhs = _mm(g, exact.kron(_row(b), _row(a)), _T(pkron(h_row(g), x_row(g, 1), g), g))
    return lhs, rhs


def _id6(g, u):
    phi = _mm(g, x_row(g, 1), _col(u))
    uu = exact.kron(_row(u), _row(u))
    lhs2, rhs2 = _mm(g, phi, phi), _mm(g, uu, _T(x_row(g, 2), g))
    lhs3 = _mm(g, phi, phi, phi)
    rhs3 = _mm(g, exact.kron(uu, _row(u)), _T(x_row(g, 3), g))
    return np.concatenate([lhs2, lhs3], axis=1), np.concatenate([rhs2, rhs3], axis=1)


def _id7(g, u, w):
    lhs = _mm(g, x_row(g, 1), _col(u), _row(w), _T(x_row(g, 2), g))
    return lhs, _mm(g, exact.kron(_row(w), _row(u)), _T(x_row(g, 3), g))


def _id8(g, u, w):
    lhs = _mm(g, x_row(g, 2), _col(w), _row(u))
    inner = _mm(g, _row(_pi1(g).T @ w), _T(x_row(g, 2), g))
    return lhs, pkron(_row(u), inner, g)


def _id9(g, u, w):
    lhs = _mm(g, x_row(g, 2), _col(w), _row(u), _T(x_row(g, 1), g))
    coef = exact.kron(_row(u), _row(_pi1(g).T @ w))
    return lhs, _mm(g, coef, _T(x_row(g, 3), g))


def _id10(g):
    lhs, rhs = [], []
    for k in (1, 2):
        lhs.append(_mm(g, pkron(x_col(g, 1), exact.identity(g ** k), g), x_col(g, k)))
        rhs.append(x_col(g, k + 1))
    return np.concatenate(lhs, axis=0), np.concatenate(rhs, axis=0)


def _id11(g, A):
    w = vec(A)
    l1 = _mm(g, x_row(g, 1), A)
    r1 = _mm(g, _row(w), pkron(exact.identity(g), x_col(g, 1), g))
    l2 = _mm(g, x_row(g, 2), _col(w))
    r2 = _mm(g, x_row(g, 1), A.T, _T(x_row(g, 1), g))
    return np.concatenate([l1, l2], axis=1), np.concatenate([r1, r2], axis=1)


def _id12(g, u, A):
    lhs = A @ exact.kron(_col(u), exact.identity(g)).T
    return poly_matrix(lhs, g), poly_matrix(exact.kron(_row(u), A), g)


def _id13(g):
    lhs = _mm(g, pkron(exact.identity(g * g), x_col(g, 1), g), _T(x_row(g, 2), g))
    return lhs, _T(x_row(g, 3), g)


def _id14(g, k, l, v, w):
    lhs = _mm(g, exact.kron(_row(v), _row(w)), x_col(g, k + l))
    rhs = _mm(g, _mm(g, _row(v), x_col(g, k)), _mm(g, _row(w), x_col(g, l)))
    return lhs, rhs


def _id15(g, a, b, c, d):
    lhs = exact.kron(_row(a), _row(b)) @ exact.kron(_col(c), _col(d))
    rhs = (_row(a) @ _col(c)) * (_row(b) @ _col(d))[0, 0]
    return poly_matrix(lhs, g), poly_matrix(rhs, g)


def _nicesplit(g, u, w):
    X1, X2, X3 = x_row(g, 1), x_row(g, 2), x_row(g, 3)
    lhs = _mm(g, X1, _col(u), _row(w), _T(X2, g)) + _mm(g, X2, _col(w), _row(u), _T(X1, g))
    coef = exact.kron(_row(w), _row(u)) + exact.kron(_row(u), _row(_pi1(g).T @ w))
    return lhs, _mm(g, coef, _T(X3, g))


def _jun3a7(g, u, B):
    U = exact.kron(_col(u), exact.identity(g))
    uu = np.outer(u, u)
    l1 = structured_transpose(B @ U @ U.T, g)
    r1 = uu @ structured_transpose(B, g)
    l2 = structured_transpose(uu @ B, g)
    r2 = structured_transpose(B, g) @ U @ U.T
    return poly_matrix(np.concatenate([l1, l2]), g), poly_matrix(np.concatenate([r1, r2]), g)


def _aug12a8(g, u, A):
    lhs = structured_transpose(exact.kron(_row(u), A.T), g)
    return poly_matrix(lhs, g), poly_matrix(_col(u) @ _row(vec(A)), g)


def _aug14c8_1(g, u, v, w):
    U = exact.kron(_col(u), exact.identity(g))
    vw = exact.kron(_row(v), _row(w))
    a = _col(u) @ vw
    b = exact.kron(_col(u), vw)
    st = structured_transpose(b, g)
    vwt = exact.kron(_col(v), _row(w))
    c1 = exact.kron(_row(u), vwt)
    c2 = vwt @ U.T
    c3 = _col(v) @ exact.kron(_row(u), _row(w))
    lhs = np.concatenate([a, st, st, st])
    rhs = np.concatenate([b, c1, c2, c3])
    return poly_matrix(lhs, g), poly_matrix(rhs, g)


def _aug14c8_2(g, u, y):
    U = exact.kron(_col(u), exact.identity(g))
    lhs = structured_transpose(_col(u) @ _row(y), g)
    return poly_matrix(lhs, g), poly_matrix(mat_g(y, g).T @ U.T, g)


def _vja(g):
    lhs, rhs = [], []
    for j in range(0, 4):
        P = reversal_permutation(g, j).matrix()
        lhs.append(_mm(g, P, border_vector_symbolic(g, j)))
        rhs.append(_mm(g, pkron(h_col(g), exact.identity(g ** j), g), x_col(g, j)))
    return np.concatenate(lhs), np.concatenate(rhs)


def _nov6d6(g):
    lhs, rhs = [], []
    for j in range(0, 3):
        lhs.append(x_col(g, j + 1))
        rhs.append(_mm(g, reversal_permutation(g, j).matrix(), _T(x_row(g, j + 1), g)))
    return np.concatenate(lhs), np.concatenate(rhs)


def _oct1a(g, a):
    A = a.reshape(g, g)
    lhs = _mm(g, pkron(x_row(g, 1), h_row(g), g), _col(a))
    return lhs, _mm(g, x_row(g, 1), A, _T(h_row(g), g))


def _nov6a(g):
    lhs = pkron(x_col(g, 1), h_col(g), g)
    return lhs, _mm(g, pkron(x_col(g, 1), exact.identity(g), g), h_col(g))


def _q3c(g, k, u, v):
    lhs = _mm(g, _mm(g, x_row(g, k), _col(u)), _mm(g, h_row(g), _col(v)))
    rhs = _mm(g, pkron(x_row(g, k), h_row(g), g), exact.kron(_col(u), _col(v)))
    return lhs, rhs


# name -> (checker, argument shapes as callables of g, linear?)
def _vec(n):
    return ("vec", n)


def _mat(r, c):
    return ("mat", r, c)


IDENTITIES = {
    "ids1": (_id1, lambda g: [_vec(g), _mat(g, g)], True),
    "ids2": (_id2, lambda g: [_vec(g), _mat(g, g)], True),
    "ids3": (_id3, lambda g: [_vec(g), _mat(g, g)], True),
    "ids4": (_id4, lambda g: [], True),
    "ids5": (_id5, lambda g: [_vec(g), _vec(g)], True),
    "ids6": (_id6, lambda g: [_vec(g)], False),
    "ids7": (_id7, lambda g: [_vec(g), _vec(g * g)], True),
    "ids8": (_id8, lambda g: [_vec(g), _vec(g * g)], True),
    "ids9": (_id9, lambda g: [_vec(g), _vec(g * g)], True),
    "ids10": (_id10, lambda g: [], True),
    "ids11": (_id11, lambda g: [_mat(g, g)], True),
    "ids12": (_id12, lambda g: [_vec(g), _mat(g, g)], True),
    "ids13": (_id13, lambda g: [], True),
    "ids14": (None, None, True),  # handled specially: several (k, l)
    "ids15": (_id15, lambda g: [_vec(g)] * 4, True),
    "Nicesplit": (_nicesplit, lambda g: [_vec(g), _vec(g * g)], True),
    "jun3a7": (_jun3a7, lambda g: [_vec(g), _mat(g, g * g)], False),
    "aug12a8": (_aug12a8, lambda g: [_vec(g), _mat(g, g)], True),
    "aug14c8": (None, None, True),  # two parts
    "Z01sym": (None, None, False),
    "Z01sym-general": (None, None, False),  # literal block symmetry of every Z_{0j}
    "Z0j-reversed-symmetry": (None, None, False),
    "vja": (_vja, lambda g: [], True),
    "nov6d6": (_nov6d6, lambda g: [], True),
    "oct1a": (_oct1a, lambda g: [_vec(g * g)], True),
    "nov6a": (_nov6a, lambda g: [], True),
    "Q3c": (None, None, True),
}


def _basis_args(shapes):
    pools = []
    for s in shapes:
        if s[0] == "vec":
            pools.append(_basis(s[1]))
        else:
            pools.append(_basis_mats(s[1], s[2]))
    return product(*pools)


def _random_args(shapes, r):
    out = []
    for s in shapes:
        if s[0] == "vec":
            out.append(random_vector(r, s[1]))
        else:
            m = exact.zeros(s[1], s[2])
            for idx in np.ndindex(m.shape):
                m[idx] = random_vector(r, 1)[0]
            out.append(m)
    return out


def _run(name, g, fn, shapes, linear, r, trials):
    if linear:
        tuples, method = list(_basis_args(shapes)), ("basis" if shapes else "symbolic")
    else:
        tuples, method = [_random_args(shapes, r) for _ in range(trials)], "random"
    for args in tuples:
        lhs, rhs = fn(g, *args)
        if not pequal(lhs, rhs, g):
            return IdentityResult(name, g, False, method, len(tuples),
                                  counterexample=f"args={[np.asarray(a).tolist() for a in args]}")
    return IdentityResult(name, g, True, method, len(tuples))


def _block_pairs(p):
    """Yield ``(j, s, t, b_st, b_ts)`` over the row blocks of every ``Z_{0j}``."""
    from .midmat import build_middle_matrix

    g = p.g
    Z = build_middle_matrix(p)
    for j in range(p.degree - 1):
        Z0j = Z.scalar_block(0, j)
        w = g ** j
        for s in range(g):
            for t in range(g):
                yield j, s, t, Z0j[s, t * w:(t + 1) * w], Z0j[t, s * w:(s + 1) * w]


def _z01sym(g, r, trials):
    from .midmat import build_middle_matrix

    for _ in range(trials):
        p = random_symmetric_poly(r, g, r.randint(3, 5 if g == 2 else 4))
        Z01 = build_middle_matrix(p).scalar_block(0, 1)
        if not np.array_equal(structured_transpose(Z01, g), Z01):
            return IdentityResult("Z01sym", g, False, "random", trials, counterexample=f"p={p}")
    return IdentityResult("Z01sym", g, True, "random", trials)


def _z0j_symmetry(g, r, trials, twisted):
    # literal form: b_st == b_ts.  Twisted form: b_st == b_ts after reversing
    # the middle word, i.e. b_st[m] == b_ts[rev(m)]; the two agree for j <= 1.
    name = "Z0j-reversed-symmetry" if twisted else "Z01sym-general"
    polys = [random_symmetric_poly(r, g, r.randint(3, 5 if g == 2 else 4)) for _ in range(trials)]
    for p in polys:
        for j, s, t, bst, bts in _block_pairs(p):
            if twisted and j >= 1:
                bts = bts[list(reversal_permutation(g, j - 1).image)]
            if not np.array_equal(bst, bts):
                return IdentityResult(name, g, False, "random", trials,
                                      counterexample=f"p={p}, j={j}, s={s + 1}, t={t + 1}")
    return IdentityResult(name, g, True, "random", trials)


def verify_identity(name: str, g: int, seed=0, trials: int = 20) -> IdentityResult:
    """Check one named identity for ``g`` variables; failure is a result, not an error."""
    if name not in IDENTITIES:
        raise KeyError(f"unknown identity {name!r}")
    r = rng(seed)
    if name == "ids14":
        res = None
        for k, l in ((1, 1), (1, 2), (2, 1)):
            res = _run(name, g, lambda gg, v, w: _id14(gg, k, l, v, w),
                       [_vec(g ** k), _vec(g ** l)], True, r, trials)
            if not res.ok:
                return res
        return res
    if name == "Q3c":
        res = None
        for k in (1, 2):
            res = _run(name, g, lambda gg, u, v: _q3c(gg, k, u, v),
                       [_vec(g ** k), _vec(g)], True, r, trials)
            if not res.ok:
                return res
        return res
    if name == "aug14c8":
        res = _run(name, g, _aug14c8_1, [_vec(g)] * 3, True, r, trials)
        if not res.ok:
            return res
        return _run(name, g, _aug14c8_2, [_vec(g), _vec(g * g)], True, r, trials)
    if name == "Z01sym":
        return _z01sym(g, r, trials)
    if name in ("Z01sym-general", "Z0j-reversed-symmetry"):
        return _z0j_symmetry(g, r, trials, twisted=name != "Z01sym-general")
    fn, shapes, linear = IDENTITIES[name]
    return _run(name, g, fn, shapes(g), linear, r, trials)


def run_suite(gs=(2, 3), seed=0, trials: int = 20, names=None) -> list[IdentityResult]:
    names = list(IDENTITIES) if names is None else names
    return [verify_identity(n, g, seed=seed, trials=trials) for g in gs for n in names]
