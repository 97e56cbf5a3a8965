"""Hessian forms at matrix points ``(X, v)``.

Symmetric directions ``H = (H_1..H_g)`` are coordinatized by the upper
triangle of each ``H_l`` with basis matrices ``E_aa`` and ``E_ab + E_ba``;
coordinates run letter-major, then over pairs ``a <= b`` row by row.  Border
vectors ``V_k(X)[H] v`` are stacked position-major (the kronops order of
``h_i reverse(m)``) with the ``n`` components innermost, matching the
layout of ``Z(X)``: scalar position kron ``n x n`` block.

Rational ``X`` and ``v`` keep everything exact; eigenvalues are only ever
taken in floating point to *find* directions, and every sign claim about a
witness is re-checked exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import exact
from .freealg import MatrixTuple, NcPoly, evaluate, is_symmetric
from .inertia import exact_inertia, min_signature_hessian
from .kronops import words
from .midmat import build_middle_matrix, gradient_coefficients

__all__ = [
    "BorderMap",
    "PositivityVerdict",
    "h_coords",
    "coords_to_H",
    "word_vectors",
    "independent_family",
    "generic_point",
    "evaluate_middle",
    "middle_inertia_transport",
    "border_map",
    "gradient_map",
    "chsy_codim",
    "hessian_form",
    "relaxed_form_value",
    "relaxed_positivity",
    "relative_hessian_positivity",
    "epsilon_neighborhood_search",
]


def _alpha(g: int, k: int) -> int:
    return sum(g ** j for j in range(k + 1))


def h_coords(n: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(n) for b in range(a, n)]


def coords_to_H(c, g: int, n: int) -> MatrixTuple:
    """Symmetric direction with coordinate vector ``c``."""
    pairs = h_coords(n)
    c = list(c)
    if len(c) != g * len(pairs):
        raise ValueError("coordinate vector has the wrong length")
    is_exact = all(isinstance(x, (int, Fraction)) for x in c)
    mats = []
    for l in range(g):
        m = exact.zeros(n, n) if is_exact else np.zeros((n, n))
        for k, (a, b) in enumerate(pairs):
            val = c[l * len(pairs) + k]
            m[a, b] = m[a, b] + val
            if a != b:
                m[b, a] = m[b, a] + val
        mats.append(m)
    return MatrixTuple(mats, is_exact)


def _vec(v, is_exact):
    return exact.fraction_array(v) if is_exact else np.asarray(v, dtype=float)


def word_vectors(X: MatrixTuple, v, length: int) -> dict:
    """``{m: m(X) v}`` for every word with ``|m| <= length``."""
    out = {(): _vec(v, X.exact)}
    for j in range(1, length + 1):
        for m in words(X.g, j):
            out[m] = X[m[0]] @ out[m[1:]]
    return out


def _rank(M, is_exact):
    if M.size == 0:
        return 0
    return exact.rank(M) if is_exact else exact.float_rank(np.asarray(M, dtype=float))


def independent_family(X: MatrixTuple, v, length: int) -> bool:
    """Are the vectors ``m(X) v``, ``|m| <= length``, linearly independent?"""
    vecs = list(word_vectors(X, v, length).values())
    if len(vecs) > X.n:
        return False
    return _rank(np.array(vecs, dtype=object if X.exact else float), X.exact) == len(vecs)


def generic_point(r, g: int, n: int, length: int, bound: int = 2, scale=1, tries: int = 200):
    """Random integer ``(X, v)`` (times ``scale``) with an independent word family.

    Resampled until the family ``{m(X) v : |m| <= length}`` is independent,
    which is checked exactly.
    """
    scale = exact.to_fraction(scale)
    for _ in range(tries):
        mats = []
        for _ in range(g):
            m = exact.zeros(n, n)
            for a in range(n):
                for b in range(a, n):
                    m[a, b] = m[b, a] = Fraction(r.randint(-bound, bound)) * scale
            mats.append(m)
        X = MatrixTuple(mats)
        v = np.array([Fraction(r.randint(-bound, bound)) for _ in range(n)], dtype=object)
        if independent_family(X, v, length):
            return X, v
    raise RuntimeError(f"no independent point found for g={g}, n={n}, length={length}")


# -- Z(X) ------------------------------------------------------------------

def evaluate_middle(Z, X: MatrixTuple) -> np.ndarray:
    """``Z(X)`` with entry ``(r, c)`` in the ``n x n`` block at ``(r n, c n)``."""
    n = X.n
    size = Z.size * n
    out = exact.zeros(size, size) if X.exact else np.zeros((size, size))
    off = Z.offsets
    for (i, j), blk in Z.blocks.items():
        for r, c in np.ndindex(blk.shape):
            e = blk[r, c]
            if e.is_zero():
                continue
            R, C = (off[i] + r) * n, (off[j] + c) * n
            out[R:R + n, C:C + n] = evaluate(e, X)
    return out


def middle_inertia_transport(p: NcPoly, X: MatrixTuple) -> dict:
    """Compare the inertia of ``Z(X)`` with ``n`` times that of ``Z(0)``."""
    if not X.exact:
        raise ValueError("transport check needs rational X")
    Z = build_middle_matrix(p)
    scal, _ = exact_inertia(Z.scalar)
    big, _ = exact_inertia(evaluate_middle(Z, X))
    expected = tuple(X.n * k for k in scal)
    return {"n": X.n, "scalar": tuple(scal), "at_X": tuple(big), "expected": expected,
            "ok": tuple(big) == expected}


# -- border and gradient maps ----------------------------------------------

@dataclass(frozen=True)
class BorderMap:
    """Matrix of ``H -> (V_0(X)[H]v; ...; V_upto(X)[H]v)`` in H-coordinates."""

    g: int
    n: int
    upto: int
    matrix: np.ndarray = field(repr=False)

    def apply(self, c) -> np.ndarray:
        return self.matrix @ np.asarray(c, dtype=self.matrix.dtype)

    def rank(self) -> int:
        return _rank(self.matrix, self.matrix.dtype == object)


def border_map(X: MatrixTuple, v, upto: int) -> BorderMap:
    g, n = X.g, X.n
    if len(v) != n:
        raise ValueError("v must have length n")
    pairs = h_coords(n)
    npairs = len(pairs)
    wv = word_vectors(X, v, upto)
    rows = n * g * _alpha(g, upto)
    L = exact.zeros(rows, g * npairs) if X.exact else np.zeros((rows, g * npairs))
    pos = 0
    for j in range(upto + 1):
        for m in words(g, j):
            y = wv[m[::-1]]  # entry h_i reverse(m)
            for i in range(g):
                base = pos * n
                for k, (a, b) in enumerate(pairs):
                    col = i * npairs + k
                    L[base + a, col] += y[b]
                    if a != b:
                        L[base + b, col] += y[a]
                pos += 1
    return BorderMap(g, n, upto, L)


def gradient_map(p: NcPoly, X: MatrixTuple, v) -> np.ndarray:
    """Matrix of ``H -> p'(X)[H] v`` via ``p' = sum_s psi_s^T V_s``."""
    d = p.degree
    n = X.n
    L = border_map(X, v, d - 1).matrix
    G = gradient_coefficients(p)
    row = []
    for col in G.psi:
        for e in col[:, 0]:
            row.append(evaluate(e.T, X) if not e.is_zero() else
                       (exact.zeros(n, n) if X.exact else np.zeros((n, n))))
    return np.concatenate(row, axis=1) @ L


# -- CHSY ------------------------------------------------------------------

def chsy_codim(X: MatrixTuple, v, k: int, r: int) -> dict:
    """Codimension of the stacked border range against the CHSY bound."""
    if k < r:
        raise ValueError("need k >= r")
    g, n = X.g, X.n
    if not independent_family(X, v, r):
        return {"hypothesis": False, "k": k, "r": r, "ok": None,
                "reason": "the vectors m(X)v with |m| <= r are dependent"}
    ak, ar = _alpha(g, k), _alpha(g, r)
    codim = n * g * ak - border_map(X, v, k).rank()
    bound = n * g * (ak - ar) + g * ar * (ar - 1) // 2
    ok = codim <= bound and (k != r or codim == bound)
    return {"hypothesis": True, "k": k, "r": r, "codim": codim, "bound": bound, "ok": ok}


# -- Hessian forms ---------------------------------------------------------

def _variant(variant):
    if isinstance(variant, str):
        variant = (variant,)
    kind = variant[0]
    lam = exact.to_fraction(variant[1]) if len(variant) > 1 else Fraction(0)
    delta = exact.to_fraction(variant[2]) if len(variant) > 2 else Fraction(0)
    if kind not in ("plain", "modified", "relaxed"):
        raise ValueError(f"unknown variant {kind!r}")
    if lam < 0 or delta < 0:
        raise ValueError("lambda and delta must be nonnegative")
    return kind, lam, delta


def _pieces(p, X, v):
    """``(plain, G^T G, Ltilde^T Ltilde)`` in H-coordinates."""
    if not is_symmetric(p):
        raise ValueError("polynomial is not symmetric")
    d = p.degree
    ncoords = X.g * len(h_coords(X.n))
    zero = exact.zeros(ncoords, ncoords) if X.exact else np.zeros((ncoords, ncoords))
    if d is None or d < 1:
        return zero, zero, zero
    Lt = border_map(X, v, d - 1).matrix
    if d >= 2:
        Z = build_middle_matrix(p)
        L = Lt[:X.n * Z.size]
        plain = L.T @ evaluate_middle(Z, X) @ L
    else:
        plain = zero
    G = gradient_map(p, X, v)
    return plain, G.T @ G, Lt.T @ Lt


def hessian_form(p: NcPoly, X: MatrixTuple, v, variant="plain") -> np.ndarray:
    """Matrix of ``H -> <Hess(X)[H] v, v>`` for the chosen Hessian variant.

    ``variant`` is ``"plain"``, ``("modified", lam)`` or
    ``("relaxed", lam, delta)``.
    """
    kind, lam, delta = _variant(variant)
    plain, GG, LL = _pieces(p, X, v)
    if not X.exact:
        lam, delta = float(lam), float(delta)
    M = plain
    if kind in ("modified", "relaxed"):
        M = M + GG * lam
    if kind == "relaxed":
        M = M + LL * delta
    return M


def relaxed_form_value(p: NcPoly, X: MatrixTuple, H: MatrixTuple, v, lam=0, delta=0):
    """``<(p'' + lam p'^T p' + delta Vt^T Vt)(X)[H] v, v>`` by direct evaluation."""
    from .ncderiv import directional_derivative, hessian

    v = _vec(v, X.exact)
    val = v @ evaluate(hessian(p), X, H) @ v if p.degree and p.degree >= 2 else 0
    if p.degree and p.degree >= 1:
        gv = evaluate(directional_derivative(p), X, H) @ v
        val = val + exact.to_fraction(lam) * (gv @ gv) if X.exact else val + float(lam) * (gv @ gv)
        # Vt entries h_i reverse(m), |m| <= d-1
        for m, y in word_vectors(X, v, p.degree - 1).items():
            for i in range(X.g):
                hv = H[i] @ y
                val = val + (exact.to_fraction(delta) if X.exact else float(delta)) * (hv @ hv)
    return val


@dataclass(frozen=True)
class PositivityVerdict:
    kind: str  # "Positive", "Negative" or "Indeterminate"
    lam: Fraction | None = None
    witness: tuple | None = None  # H-coordinates
    value: object = None
    reason: str = ""

    def witness_H(self, g: int, n: int) -> MatrixTuple:
        return coords_to_H(self.witness, g, n)


def _min_eig(M):
    if M.size == 0:
        return 0.0, None
    w, U = np.linalg.eigh(np.asarray(M, dtype=float))
    return w[0], U[:, 0]


def _scale(M):
    return max(1.0, float(np.abs(np.asarray(M, dtype=float)).max())) if M.size else 1.0


def _float_nullspace(G, rel_tol=1e-10):
    G = np.asarray(G, dtype=float)
    _, s, Vt = np.linalg.svd(G)
    thresh = rel_tol * (s[0] if s.size else 1.0)
    rank = int((s > thresh).sum())
    return Vt[rank:].T


def _rationalize(x, max_den=10 ** 6):
    return Fraction(float(x)).limit_denominator(max_den)


def relaxed_positivity(p: NcPoly, X: MatrixTuple, v, delta, lam_max=2 ** 20, tol: float = 1e-9):
    """Decide positivity of the relaxed Hessian at ``(X, v)`` for one ``delta``.

    Negative: the form ``plain + delta Vt^T Vt`` is negative somewhere on
    the kernel of ``H -> p'(X)[H]v``, where the ``lam`` term vanishes, so no
    ``lam`` can help.  Positive: the full form is PSD (to ``tol``) for some
    ``lam`` on the schedule ``1, 2, 4, ..., lam_max``.  Anything else is
    Indeterminate.
    """
    delta = exact.to_fraction(delta)
    if delta <= 0 or lam_max <= 0:
        raise ValueError("delta and lam_max must be positive")
    plain, GG, LL = _pieces(p, X, v)
    d = p.degree
    A = plain + LL * (delta if X.exact else float(delta))
    if d is not None and d >= 1:
        G = gradient_map(p, X, v)
        if X.exact:
            ker = exact.nullspace(G)
            N = np.array(ker, dtype=object).T if ker else exact.zeros(A.shape[0], 0)
        else:
            N = _float_nullspace(G)
    else:
        N = exact.identity(A.shape[0]) if X.exact else np.eye(A.shape[0])
    if N.shape[1]:
        R = N.T @ A @ N
        w, u = _min_eig(R)
        if w < -tol * _scale(R):
            if X.exact:
                c = N @ np.array([_rationalize(x) for x in u], dtype=object)
                value = c @ A @ c
            else:
                c = N @ u
                value = float(c @ A @ c)
            if value < 0:
                return PositivityVerdict("Negative", witness=tuple(c), value=value,
                                         reason="negative on the kernel of the gradient map")
    lam = Fraction(1)
    while lam <= lam_max:
        M = A + GG * (lam if X.exact else float(lam))
        w, _ = _min_eig(M)
        if w >= -tol * _scale(M):
            return PositivityVerdict("Positive", lam=lam)
        lam *= 2
    return PositivityVerdict("Indeterminate", reason=f"not PSD for any lambda <= {lam_max}")


def relative_hessian_positivity(p: NcPoly, X: MatrixTuple, v, basis, tol: float = 1e-9) -> dict:
    """Plain Hessian on a subspace of directions, with the implied bound.

    ``basis`` lists H-coordinate vectors spanning the subspace.  When the
    form is PSD there, the codimension ``c`` of ``{V(X)[H]v}`` in
    ``R^(n g nu)`` gives ``sigma_- < k`` for the least ``k`` with
    ``c <= k n - 1``; the bound is informative when ``k <= g nu``.
    """
    d = p.degree
    n, g = X.n, X.g
    Z = build_middle_matrix(p)
    gnu = Z.size
    S = np.array(basis, dtype=object if X.exact else float).T if len(basis) else \
        (exact.zeros(g * len(h_coords(n)), 0) if X.exact else np.zeros((g * len(h_coords(n)), 0)))
    L = border_map(X, v, d - 2).matrix
    codim = n * gnu - _rank(L @ S, X.exact)
    M = S.T @ hessian_form(p, X, v) @ S
    w, u = _min_eig(M)
    psd = bool(w >= -tol * _scale(M)) if M.size else True
    witness = None
    if not psd:
        if X.exact:
            c = S @ np.array([_rationalize(x) for x in u], dtype=object)
        else:
            c = S @ u
        witness = tuple(c)
    k = -(-(codim + 1) // n)
    out = {"psd": psd, "codim": codim, "k": k, "informative": psd and k <= gnu,
           "witness": witness}
    if psd:
        sigma = min_signature_hessian(p).minus
        out["sigma_minus"] = sigma
        out["consistent"] = sigma < k
    return out


def epsilon_neighborhood_search(p: NcPoly, eps=Fraction(1, 2), samples: int = 100, seed=0,
                                n: int | None = None, deltas=None) -> dict:
    """Sample ``(X, v)`` with ``||X|| < eps`` until the relaxed Hessian fails.

    Points are generic (independent words of length ``< d``); by default
    ``n`` is the least size with ``n > g nut (nut - 1) / 2``.
    """
    from .sampling import rng

    r = rng(seed)
    g, d = p.g, p.degree
    nut = _alpha(g, d - 1)
    if n is None:
        n = g * nut * (nut - 1) // 2 + 1
    eps = exact.to_fraction(eps)
    if deltas is None:
        deltas = [Fraction(1, 10 ** k) for k in (2, 4, 6, 8)]
    for t in range(samples):
        # integer entries in [-1, 1]; spectral norm <= n, so scale below eps/n
        X, v = generic_point(r, g, n, d - 1, bound=1, scale=eps / (n + 1))
        for delta in deltas:
            verdict = relaxed_positivity(p, X, v, delta)
            if verdict.kind == "Negative":
                return {"found": True, "sample": t, "n": n, "delta": delta, "verdict": verdict,
                        "X": X, "v": v}
    return {"found": False, "samples": samples, "n": n}
