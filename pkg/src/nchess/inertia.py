"""Exact inertia and sum/difference-of-squares decompositions.

Symmetric elimination over the rationals: 1x1 pivots on the largest
diagonal entry, 2x2 pivots when the remaining diagonal is zero.  The
certificate stores rows ``t_k`` and scalars ``d_k`` with
``M = sum_k d_k t_k t_k^T``, i.e. ``M = T^T D T``.

The same elimination run on the polynomial middle matrix ``Z(x)`` with
constant pivots gives a sum/difference of squares for the Hessian whose
term counts equal the inertia of ``Z(0)``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from . import exact
from .errors import InternalConsistencyError
from .freealg import NcPoly, is_symmetric
from .kronops import words
from .midmat import build_middle_matrix
from .ncderiv import hessian

__all__ = [
    "Inertia",
    "CongruenceCert",
    "Signature",
    "SdsDecomposition",
    "exact_inertia",
    "is_psd",
    "min_signature_hessian",
    "sds_from_hessian",
    "gram_sds",
]


class Inertia(NamedTuple):
    mu_plus: int
    mu_minus: int
    mu_zero: int


class Signature(NamedTuple):
    plus: int
    minus: int


@dataclass(frozen=True)
class CongruenceCert:
    """``M = T^T diag(D) T`` with ``T`` invertible."""

    T: np.ndarray = field(repr=False)
    D: tuple

    def reconstruct(self) -> np.ndarray:
        n = self.T.shape[1]
        out = exact.zeros(n, n)
        for k, dk in enumerate(self.D):
            if dk:
                t = self.T[k]
                out = out + np.outer(t, t) * dk
        return out


def _sym_dict(M):
    n = M.shape[0]
    S = {i: {} for i in range(n)}
    for i in range(n):
        for j in range(n):
            if M[i, j] != 0:
                S[i][j] = M[i, j]
    return S


def exact_inertia(M) -> tuple[Inertia, CongruenceCert]:
    """Inertia of a rational symmetric matrix with a congruence certificate."""
    M = exact.fraction_array(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("matrix must be square")
    if not np.array_equal(M, M.T):
        raise ValueError("matrix is not symmetric")
    n = M.shape[0]
    S = _sym_dict(M)
    alive = set(range(n))
    rows, D = [], []

    def unit_plus(k, extra):
        t = [Fraction(0)] * n
        t[k] = Fraction(1)
        for j, v in extra.items():
            t[j] += v
        return t

    while alive:
        diag = [(abs(S[k].get(k, 0)), -k) for k in alive if S[k].get(k, 0) != 0]
        if diag:
            _, negk = max(diag)
            k = -negk
            a = S[k][k]
            rowk = {j: v for j, v in S[k].items() if j != k}
            rows.append(unit_plus(k, {j: v / a for j, v in rowk.items()}))
            D.append(a)
            alive.discard(k)
            for i in rowk:
                S[i].pop(k, None)
            del S[k]
            for i, vi in rowk.items():
                for j, vj in rowk.items():
                    s = S[i].get(j, 0) - vi * vj / a
                    if s:
                        S[i][j] = s
                    else:
                        S[i].pop(j, None)
            continue
        pair = next(((k, l) for k in sorted(alive) for l in sorted(S[k]) if l != k), None)
        if pair is None:
            for k in sorted(alive):
                t = [Fraction(0)] * n
                t[k] = Fraction(1)
                rows.append(t)
                D.append(Fraction(0))
            break
        k, l = pair
        c = S[k][l]
        rk = {j: v for j, v in S[k].items() if j not in (k, l)}
        rl = {j: v for j, v in S[l].items() if j not in (k, l)}
        # 2c (y_k + rl/c . y)(y_l + rk/c . y) = c/2 (A+B)^2 - c/2 (A-B)^2
        A = unit_plus(k, {j: v / c for j, v in rl.items()})
        B = unit_plus(l, {j: v / c for j, v in rk.items()})
        rows.append([a + b for a, b in zip(A, B)])
        D.append(c / 2)
        rows.append([a - b for a, b in zip(A, B)])
        D.append(-c / 2)
        alive.discard(k)
        alive.discard(l)
        for i in set(rk) | set(rl):
            S[i].pop(k, None)
            S[i].pop(l, None)
        del S[k], S[l]
        touched = set(rk) | set(rl)
        for i in touched:
            for j in touched:
                s = S[i].get(j, 0) - (rl.get(i, 0) * rk.get(j, 0) + rk.get(i, 0) * rl.get(j, 0)) / c
                if s:
                    S[i][j] = s
                else:
                    S[i].pop(j, None)

    T = np.array(rows, dtype=object).reshape(len(rows), n)
    plus = sum(1 for v in D if v > 0)
    minus = sum(1 for v in D if v < 0)
    return Inertia(plus, minus, n - plus - minus), CongruenceCert(T, tuple(D))


def is_psd(M) -> bool:
    if np.asarray(M).size == 0:
        return True
    return exact_inertia(M)[0].mu_minus == 0


def min_signature_hessian(p: NcPoly) -> Signature:
    """``(mu_+, mu_-)`` of the scalar middle matrix of ``p''``.

    These are the minimal numbers of positive and negative squares in any
    SDS of the Hessian.  Degree below two gives ``(0, 0)`` with a warning.
    """
    if p.degree is None or p.degree < 2:
        warnings.warn("Hessian vanishes for degree < 2; returning (0, 0)", stacklevel=2)
        return Signature(0, 0)
    inr, _ = exact_inertia(build_middle_matrix(p).scalar)
    return Signature(inr.mu_plus, inr.mu_minus)


# -- sum / difference of squares --------------------------------------------

@dataclass(frozen=True)
class SdsDecomposition:
    """``target = sum w f^T f (plus) - sum w f^T f (minus)`` with ``w > 0``."""

    plus_terms: tuple  # of (weight, NcPoly)
    minus_terms: tuple

    @property
    def counts(self) -> Signature:
        return Signature(len(self.plus_terms), len(self.minus_terms))

    def expand(self, g: int) -> NcPoly:
        out = NcPoly.zero(g)
        for w, f in self.plus_terms:
            out = out + (f.T * f).scale(w)
        for w, f in self.minus_terms:
            out = out - (f.T * f).scale(w)
        return out


def _split_signed(pairs):
    plus, minus = [], []
    for w, f in pairs:
        if w > 0:
            plus.append((w, f))
        elif w < 0:
            minus.append((-w, f))
    return SdsDecomposition(tuple(plus), tuple(minus))


def _border_entries(g, d):
    out = []
    for j in range(d - 1):
        for m in words(g, j):
            for i in range(g):
                out.append(NcPoly.monomial((g + i,) + m[::-1], g))
    return out


def _row_poly(row: dict, V, g) -> NcPoly:
    out = NcPoly.zero(g)
    for m, c in row.items():
        out = out + c * V[m]
    return out


def sds_from_hessian(p: NcPoly) -> SdsDecomposition:
    """Minimal SDS of ``p''`` by constant-pivot elimination on ``Z(x)``.

    Each square is ``f = sum_m c_m(x) V_m`` over border entries ``V_m``.
    The result is checked by expansion and by comparing its counts with the
    inertia of ``Z(0)``.
    """
    g = p.g
    if p.degree is None or p.degree < 2:
        return SdsDecomposition((), ())
    Zm = build_middle_matrix(p)
    full = Zm.full()
    N = full.shape[0]
    S = {i: {j: full[i, j] for j in range(N) if not full[i, j].is_zero()} for i in range(N)}
    alive = set(range(N))
    V = _border_entries(g, Zm.d)
    terms = []

    def get(i, j):
        return S[i].get(j) or NcPoly.zero(g)

    def put(i, j, val):
        if val.is_zero():
            S[i].pop(j, None)
        else:
            S[i][j] = val

    def eliminate(piv, Pinv):
        # Z' = Z - C^T Pinv C over the remaining indices
        others = set()
        for s in piv:
            others |= {j for j in S[s] if j not in piv}
        for s in piv:
            alive.discard(s)
        cols = {s: {j: S[s][j] for j in S[s] if j not in piv} for s in piv}
        for i in others:
            for s in piv:
                S[i].pop(s, None)
        for s in piv:
            del S[s]
        for i in others:
            for j in others:
                acc = get(i, j)
                for s in piv:
                    zis = cols[s].get(i)
                    if zis is None:
                        continue
                    zis = zis.T
                    for t in piv:
                        ztj = cols[t].get(j)
                        if ztj is None or Pinv[s][t].is_zero():
                            continue
                        acc = acc - zis * Pinv[s][t] * ztj
                put(i, j, acc)
        return cols

    while alive:
        if all(not S[k] for k in alive):
            break
        cand = [(abs(S[k][k].constant_term()), -k) for k in alive
                if k in S[k] and S[k][k].is_constant()]
        if cand:
            k = -max(cand)[1]
            a = S[k][k].constant_term()
            row = {j: v.scale(1 / a) for j, v in S[k].items()}
            terms.append((a, _row_poly(row, V, g)))
            eliminate([k], {k: {k: NcPoly.constant(1 / a, g)}})
            continue
        pair = None
        for l in sorted(alive):
            if l in S[l]:
                continue
            for k in sorted(S[l]):
                if k != l and S[l][k].is_constant():
                    pair = (k, l)
                    break
            if pair:
                break
        if pair is None:
            raise InternalConsistencyError("no constant pivot available in Z(x)")
        k, l = pair
        c = S[k][l].constant_term()
        a = get(k, k)
        inv_c = 1 / c
        Pinv = {
            k: {k: NcPoly.zero(g), l: NcPoly.constant(inv_c, g)},
            l: {k: NcPoly.constant(inv_c, g), l: a.scale(-inv_c * inv_c)},
        }
        rows_k = {j: v for j, v in S[k].items()}
        rows_l = {j: v for j, v in S[l].items()}
        # r = e + Pinv C; rows r1 (for k) and r2 (for l)
        r1 = {}
        r2 = {}
        for j in set(rows_k) | set(rows_l):
            if j in (k, l):
                continue
            zk = rows_k.get(j, NcPoly.zero(g))
            zl = rows_l.get(j, NcPoly.zero(g))
            r1[j] = zl.scale(inv_c)
            r2[j] = zk.scale(inv_c) - (a * zl).scale(inv_c * inv_c)
        r1[k] = NcPoly.constant(1, g)
        r2[l] = NcPoly.constant(1, g)
        f1 = _row_poly(r1, V, g)
        f2 = _row_poly(r2, V, g)
        s1 = f1
        s2 = (a * f1).scale(inv_c / 2) + f2
        terms.append((c / 2, s1 + s2))
        terms.append((-c / 2, s1 - s2))
        eliminate([k, l], Pinv)

    out = _split_signed(terms)
    if out.expand(g) != hessian(p):
        raise InternalConsistencyError("Hessian SDS does not expand to p''")
    inr, _ = exact_inertia(Zm.scalar)
    if out.counts != (inr.mu_plus, inr.mu_minus):
        raise InternalConsistencyError("Hessian SDS counts differ from the middle-matrix inertia")
    return out


def gram_sds(p: NcPoly) -> SdsDecomposition:
    """A valid, not necessarily minimal, SDS of a symmetric ``p``.

    Gram matrix over all words of length up to ``ceil(d/2)``: the word
    ``a b`` with ``|a| = floor(|w|/2)`` goes to cell ``(reverse a, b)``.
    """
    if not is_symmetric(p):
        raise ValueError("polynomial is not symmetric")
    g = p.g
    if p.is_zero():
        return SdsDecomposition((), ())
    half = math.ceil(p.degree / 2)
    basis = [w for k in range(half + 1) for w in words(g, k)]
    pos = {w: i for i, w in enumerate(basis)}
    n = len(basis)
    G = exact.zeros(n, n)
    for w, c in p.terms.items():
        cut = len(w) // 2
        a, b = w[:cut], w[cut:]
        G[pos[a[::-1]], pos[b]] += c
    G = (G + G.T) * Fraction(1, 2)
    _, cert = exact_inertia(G)
    terms = []
    for t, dk in zip(cert.T, cert.D):
        if dk:
            f = NcPoly(g, {basis[j]: t[j] for j in range(n) if t[j]})
            terms.append((dk, f))
    out = _split_signed(terms)
    if out.expand(g) != p:
        raise InternalConsistencyError("Gram SDS does not expand to p")
    return out
