"""Middle-matrix representation of Hessians.

For symmetric ``p`` of degree ``d`` the Hessian factors as
``p''(x)[h] = V(x)[h]^T Z(x) V(x)[h]`` with ``V = col(V_0, ..., V_{d-2})``.
Each two-h word ``a h_i z h_j b`` splits uniquely, and its coefficient
times ``z`` lands in block ``(|a|, |b|)`` at row ``idx(a) g + i`` and
column ``idx(reverse b) g + j``.  The scalar middle matrix is ``Z(0)``.

The gradient is handled the same way: ``p'(x)[h] = sum_s psi_s^T V_s``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import exact
from .errors import InternalConsistencyError
from .freealg import NcPoly, is_symmetric
from .kronops import (
    index_word,
    kron_index,
    pequal,
    pkron,
    pmatmul,
    poly_matrix,
    ptranspose,
    pzeros,
    reversal_permutation,
    x_col,
    x_row,
)
from .ncderiv import directional_derivative, hessian

__all__ = [
    "MiddleMatrix",
    "GradientCoeffs",
    "ModifiedScalarMiddle",
    "build_middle_matrix",
    "middle_from_quadratic",
    "recover_homogeneous",
    "homogeneous_from_block",
    "check_splits",
    "gradient_coefficients",
    "build_W",
    "modified_scalar_middle",
    "relaxed_scalar_middle",
    "block_offsets",
    "quadratic_form",
    "verify_oct20a8",
    "verify_appendix",
]


def block_offsets(g: int, nblocks: int) -> list[int]:
    """Start of each border block ``V_0..V_{nblocks-1}`` plus the total height."""
    out = [0]
    for k in range(nblocks):
        out.append(out[-1] + g ** (k + 1))
    return out


def _split_two_h(word, g):
    hs = [k for k, a in enumerate(word) if a >= g]
    if len(hs) != 2:
        raise ValueError("word does not have exactly two h-letters")
    s, t = hs
    return word[:s], word[s] - g, word[s + 1:t], word[t] - g, word[t + 1:]


def middle_from_quadratic(q: NcPoly, nblocks: int) -> dict:
    """Blocks ``{(i, j): NcPoly matrix}`` of the middle matrix of ``q``.

    ``q`` must be homogeneous of degree two in h and its x-prefixes and
    suffixes must have length below ``nblocks``.
    """
    g = q.g
    raw: dict = {}
    for w, c in q.terms.items():
        a, i, z, j, b = _split_two_h(w, g)
        if len(a) >= nblocks or len(b) >= nblocks:
            raise ValueError("border too short for this polynomial")
        key = (len(a), len(b))
        row = kron_index(a, g) * g + i
        col = kron_index(b[::-1], g) * g + j
        cell = raw.setdefault(key, {}).setdefault((row, col), {})
        cell[z] = cell.get(z, 0) + c
    blocks = {}
    for (bi, bj), cells in raw.items():
        m = pzeros(g ** (bi + 1), g ** (bj + 1), g)
        for (r, cc), poly in cells.items():
            m[r, cc] = NcPoly(g, poly)
        blocks[(bi, bj)] = m
    return blocks


@dataclass(frozen=True)
class MiddleMatrix:
    """Middle matrix ``Z(x)`` of the Hessian of a symmetric polynomial.

    ``blocks`` holds the nonzero blocks only; ``scalar`` is ``Z(0)`` as a
    Fraction matrix of size ``g * nu`` with ``nu = 1 + g + ... + g^(d-2)``.
    """

    g: int
    d: int
    blocks: dict
    scalar: np.ndarray = field(repr=False)

    @property
    def nblocks(self) -> int:
        return self.d - 1

    @property
    def offsets(self) -> list[int]:
        return block_offsets(self.g, self.nblocks)

    @property
    def size(self) -> int:
        return self.offsets[-1]

    def block(self, i: int, j: int) -> np.ndarray:
        """Block ``Z_ij(x)`` (zero matrix when absent)."""
        if (i, j) in self.blocks:
            return self.blocks[(i, j)]
        return pzeros(self.g ** (i + 1), self.g ** (j + 1), self.g)

    def scalar_block(self, i: int, j: int) -> np.ndarray:
        off = self.offsets
        return self.scalar[off[i]:off[i + 1], off[j]:off[j + 1]]

    def full(self) -> np.ndarray:
        """Whole ``Z(x)`` as one NcPoly matrix."""
        off = self.offsets
        out = pzeros(self.size, self.size, self.g)
        for (i, j), b in self.blocks.items():
            out[off[i]:off[i + 1], off[j]:off[j + 1]] = b
        return out


def _scalar_from_blocks(g, blocks, nblocks):
    off = block_offsets(g, nblocks)
    S = exact.zeros(off[-1], off[-1])
    for (i, j), b in blocks.items():
        for r, c in np.ndindex(b.shape):
            S[off[i] + r, off[j] + c] = b[r, c].constant_term()
    return S


def build_middle_matrix(p: NcPoly) -> MiddleMatrix:
    """Middle matrix of ``p''`` for symmetric ``p`` of degree ``d >= 2``."""
    if p.uses_h():
        raise ValueError("polynomial must use x-letters only")
    if not is_symmetric(p):
        raise ValueError("polynomial is not symmetric")
    d = p.degree
    if d is None or d < 2:
        raise ValueError("middle matrix needs degree at least 2")
    blocks = middle_from_quadratic(hessian(p), d - 1)
    return MiddleMatrix(p.g, d, blocks, _scalar_from_blocks(p.g, blocks, d - 1))


def quadratic_form(blocks: dict, g: int) -> NcPoly:
    """``sum_ij V_i^T Z_ij V_j`` expanded by word concatenation."""
    out: dict = {}
    for (bi, bj), m in blocks.items():
        for r, c in np.ndindex(m.shape):
            entry = m[r, c]
            if entry.is_zero():
                continue
            a_idx, i = divmod(r, g)
            b_idx, j = divmod(c, g)
            a = index_word(a_idx, g, bi)
            b = index_word(b_idx, g, bj)[::-1]
            left = a + (g + i,)
            right = (g + j,) + b
            for z, coef in entry.terms.items():
                w = left + z + right
                out[w] = out.get(w, 0) + coef
    return NcPoly(g, out)


def homogeneous_from_block(S_ij: np.ndarray, g: int, i: int, j: int) -> NcPoly:
    """``1/2 [x]_{i+1} S_ij ([x]_{j+1})^T``."""
    out: dict = {}
    half = Fraction(1, 2)
    for r, c in np.ndindex(S_ij.shape):
        val = S_ij[r, c]
        if val:
            w = index_word(r, g, i + 1) + index_word(c, g, j + 1)[::-1]
            out[w] = out.get(w, 0) + half * val
    return NcPoly(g, out)


def recover_homogeneous(Z: MiddleMatrix) -> dict:
    """Homogeneous parts ``p_k``, ``k = 2..d``, read off the scalar middle matrix.

    Uses the split ``(0, k-2)``; every other split of ``k - 2`` gives the
    same answer (see ``check_splits``).
    """
    return {k: homogeneous_from_block(Z.scalar_block(0, k - 2), Z.g, 0, k - 2)
            for k in range(2, Z.d + 1)}


def check_splits(Z: MiddleMatrix) -> bool:
    """True when every anti-diagonal block recovers the same part."""
    parts = recover_homogeneous(Z)
    for i in range(Z.nblocks):
        for j in range(Z.nblocks - i):
            if homogeneous_from_block(Z.scalar_block(i, j), Z.g, i, j) != parts[i + j + 2]:
                return False
    return True


# -- gradient ---------------------------------------------------------------

@dataclass(frozen=True)
class GradientCoeffs:
    """Columns ``psi_s`` with ``p'(x)[h] = sum_s psi_s(x)^T V_s(x)[h]``."""

    g: int
    d: int
    psi: tuple  # of (g^(s+1) x 1) NcPoly matrices

    def at_zero(self, s: int) -> np.ndarray:
        """``psi_s(0)`` as a Fraction vector."""
        return np.array([e.constant_term() for e in self.psi[s][:, 0]], dtype=object)

    def reconstruct(self) -> NcPoly:
        out: dict = {}
        g = self.g
        for s, col in enumerate(self.psi):
            for k in range(col.shape[0]):
                m_idx, i = divmod(k, g)
                tail = (g + i,) + index_word(m_idx, g, s)[::-1]
                for w, c in col[k, 0].T.terms.items():
                    key = w + tail
                    out[key] = out.get(key, 0) + c
        return NcPoly(g, out)


def gradient_coefficients(p: NcPoly) -> GradientCoeffs:
    """Unique ``psi_0..psi_{d-1}`` for ``p`` of degree ``d >= 1``."""
    d = p.degree
    if d is None or d < 1:
        raise ValueError("gradient coefficients need degree at least 1")
    g = p.g
    raw = [dict() for _ in range(d)]
    for w, c in directional_derivative(p).terms.items():
        pos = next(k for k, a in enumerate(w) if a >= g)
        a, i, b = w[:pos], w[pos] - g, w[pos + 1:]
        k = kron_index(b[::-1], g) * g + i
        cell = raw[len(b)].setdefault(k, {})
        ra = a[::-1]
        cell[ra] = cell.get(ra, 0) + c
    psi = []
    for s in range(d):
        col = pzeros(g ** (s + 1), 1, g)
        for k, terms in raw[s].items():
            col[k, 0] = NcPoly(g, terms)
        psi.append(col)
    return GradientCoeffs(g, d, tuple(psi))


def build_W(p: NcPoly) -> dict:
    """Blocks ``W_ij = psi_i psi_j^T`` with ``V^T W V = (p')^T p'``."""
    if p.degree is None or p.degree < 1:
        return {}
    G = gradient_coefficients(p)
    g = p.g
    out = {}
    for i, a in enumerate(G.psi):
        for j, b in enumerate(G.psi):
            out[(i, j)] = pmatmul(a, ptranspose(b, g), g)
    return out


# -- modified / relaxed scalar middle matrices ------------------------------

@dataclass(frozen=True)
class ModifiedScalarMiddle:
    """``blockdiag(Zscal, lam * t t^T)`` with ``t = psi_{d-1}(0)``."""

    base: np.ndarray = field(repr=False)
    tail: np.ndarray = field(repr=False)
    lam: Fraction = Fraction(0)

    def matrix(self) -> np.ndarray:
        n0 = self.base.shape[0]
        m = len(self.tail)
        out = exact.zeros(n0 + m, n0 + m)
        out[:n0, :n0] = self.base
        t = self.tail
        for r in range(m):
            for c in range(m):
                out[n0 + r, n0 + c] = self.lam * t[r] * t[c]
        return out


def _scalar_or_empty(p: NcPoly) -> np.ndarray:
    if p.degree is not None and p.degree >= 2:
        return build_middle_matrix(p).scalar
    return exact.zeros(0, 0)


def modified_scalar_middle(p: NcPoly, lam) -> ModifiedScalarMiddle:
    """Scalar middle matrix of ``p'' + lam (p')^T p'``."""
    d = p.degree
    if d is None or d < 1:
        raise ValueError("modified Hessian needs degree at least 1")
    G = gradient_coefficients(p)
    last = G.psi[d - 1]
    if not all(e.is_constant() for e in last[:, 0]):
        raise InternalConsistencyError("top gradient coefficient is not constant")
    tail = G.at_zero(d - 1)
    if not any(tail):
        raise InternalConsistencyError("top gradient coefficient vanishes")
    return ModifiedScalarMiddle(_scalar_or_empty(p), tail, exact.to_fraction(lam))


def relaxed_scalar_middle(p: NcPoly, lam, delta) -> np.ndarray:
    """Modified scalar middle matrix plus ``delta * I`` on the long border."""
    M = modified_scalar_middle(p, lam).matrix()
    delta = exact.to_fraction(delta)
    for k in range(M.shape[0]):
        M[k, k] += delta
    return M


# -- checks ----------------------------------------------------------------

def _K(g: int, j: int) -> np.ndarray:
    """``K_j(x) = Pi_{j+1}^{-1} (col(x) kron I) Pi_j``."""
    inner = pkron(x_col(g, 1), exact.identity(g ** (j + 1)), g)
    left = reversal_permutation(g, j + 1).inverse().matrix()
    right = reversal_permutation(g, j).matrix()
    return pmatmul(pmatmul(left, inner, g), right, g)


def verify_oct20a8(p: NcPoly) -> dict:
    """Check ``Z_0i(x) = sum_{j>=i} Zscal_0j K_{j-1}...K_i`` for every ``i``."""
    Z = build_middle_matrix(p)
    g, ell = p.g, Z.d - 2
    K = [_K(g, j) for j in range(ell)]
    results = {}
    for i in range(ell + 1):
        total = pzeros(g, g ** (i + 1), g)
        chain = poly_matrix(exact.identity(g ** (i + 1)), g)
        for j in range(i, ell + 1):
            if j > i:
                chain = pmatmul(K[j - 1], chain, g)
            term = pmatmul(Z.scalar_block(0, j), chain, g)
            total = total + term
        results[i] = pequal(total, Z.block(0, i), g)
    return {"ok": all(results.values()), "per_block": results}


def verify_appendix(p: NcPoly) -> dict:
    """Check the gradient/middle-matrix relations for symmetric ``p``.

    * ``psi_s^T = 1/2 [x] Z_0s(x) + psi_s(0)^T`` for every ``s``;
    * ``W_ij = Z_i0 Q Z_0j`` with ``Q = 1/4 col(x) row(x)`` when
      ``psi_j(0) = 0`` for all ``j <= d-2`` (otherwise skipped);
    * ``psi_0(0) = psi_{d-2}(0) = 0`` when ``p`` has no terms of degree one
      or ``d-1`` (otherwise skipped).
    """
    Z = build_middle_matrix(p)
    G = gradient_coefficients(p)
    g, d = p.g, Z.d
    ell = d - 2
    xr = x_row(g, 1)
    n2 = True
    for s in range(d):
        lhs = ptranspose(G.psi[s], g)
        if s <= ell:
            rhs = pmatmul(xr, Z.block(0, s), g) * Fraction(1, 2)
        else:
            rhs = pzeros(1, g ** (s + 1), g)
        rhs = rhs + poly_matrix(G.at_zero(s).reshape(1, -1), g)
        n2 = n2 and pequal(lhs, rhs, g)
    report = {"gradient_entries": n2}

    if all(not any(G.at_zero(j)) for j in range(ell + 1)):
        W = build_W(p)
        Q = pmatmul(x_col(g, 1), xr, g) * Fraction(1, 4)
        ok = True
        for i in range(ell + 1):
            for j in range(ell + 1):
                rhs = pmatmul(pmatmul(Z.block(i, 0), Q, g), Z.block(0, j), g)
                ok = ok and pequal(W[(i, j)], rhs, g)
        report["w_factorization"] = ok
    else:
        report["w_factorization"] = None

    if p.homogeneous_part(1).is_zero() and p.homogeneous_part(d - 1).is_zero():
        report["end_terms_vanish"] = (not any(G.at_zero(0))) and (not any(G.at_zero(ell)))
    else:
        report["end_terms_vanish"] = None
    report["ok"] = all(v is not False for v in report.values())
    return report
