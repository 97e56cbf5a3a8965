"""Kronecker index algebra for words and border vectors.

Word ``w`` of length ``j`` over ``x_1..x_g`` sits at Kronecker position
``sum_k w_k * g**(j-1-k)`` (0-based letters, leftmost most significant).
That is the order of the entries of the row ``[x_1 ... x_g]_j``.

Matrices of polynomials are numpy object arrays of :class:`NcPoly`;
products keep the left-to-right order of entries, and the transpose of a
polynomial matrix also applies the involution entrywise.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product

import numpy as np

from . import exact
from .freealg import NcPoly

__all__ = [
    "kron_index",
    "index_word",
    "words",
    "Permutation",
    "reversal_permutation",
    "vec",
    "mat_g",
    "structured_transpose",
    "border_vector_symbolic",
    "x_row",
    "x_col",
    "h_row",
    "h_col",
    "poly_matrix",
    "pmatmul",
    "pkron",
    "ptranspose",
    "pequal",
    "pzeros",
    "verify_identity",
]


# -- word <-> index ---------------------------------------------------------

def kron_index(word, g: int) -> int:
    idx = 0
    for a in word:
        if not 0 <= a < g:
            raise ValueError(f"letter {a} is not an x-letter for g={g}")
        idx = idx * g + a
    return idx


def index_word(idx: int, g: int, j: int) -> tuple:
    if not 0 <= idx < g ** j:
        raise ValueError(f"index {idx} out of range for length {j}")
    out = []
    for _ in range(j):
        idx, r = divmod(idx, g)
        out.append(r)
    return tuple(reversed(out))


def words(g: int, j: int) -> list[tuple]:
    """All x-words of length ``j`` in Kronecker order."""
    return [tuple(w) for w in product(range(g), repeat=j)]


class Permutation:
    """Bijection on ``range(size)``; ``matrix()[k, image[k]] = 1``.

    Applied to a column ``c``, ``(P c)[k] = c[image[k]]``.
    """

    __slots__ = ("image",)

    def __init__(self, image):
        image = tuple(int(i) for i in image)
        if sorted(image) != list(range(len(image))):
            raise ValueError("not a permutation")
        self.image = image

    @property
    def size(self) -> int:
        return len(self.image)

    def matrix(self) -> np.ndarray:
        m = exact.zeros(self.size, self.size)
        for k, t in enumerate(self.image):
            m[k, t] = Fraction(1)
        return m

    def apply(self, column):
        column = list(column)
        return [column[t] for t in self.image]

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for k, t in enumerate(self.image):
            inv[t] = k
        return Permutation(inv)

    def compose(self, other: "Permutation") -> "Permutation":
        # matrix product self @ other
        return Permutation([other.image[t] for t in self.image])

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.image == other.image

    def __hash__(self):
        return hash(self.image)

    def __repr__(self):
        return f"Permutation({list(self.image)})"


def reversal_permutation(g: int, j: int) -> Permutation:
    """``Pi_j`` on ``g**(j+1)`` positions: word index -> reversed word index."""
    if g < 1 or j < 0:
        raise ValueError("need g >= 1 and j >= 0")
    n = j + 1
    return Permutation([kron_index(w[::-1], g) for w in words(g, n)])


# -- vec / mat_g / structured transpose ------------------------------------

def vec(A) -> np.ndarray:
    """Stack the columns of ``A`` into one column (1-d array)."""
    A = np.asarray(A, dtype=object)
    if A.ndim != 2:
        raise ValueError("vec expects a matrix")
    return A.T.reshape(-1).copy()


def mat_g(w, g: int) -> np.ndarray:
    """Inverse of :func:`vec` for matrices with ``g`` rows."""
    w = np.asarray(w, dtype=object).reshape(-1)
    if w.size % g:
        raise ValueError(f"length {w.size} is not divisible by g={g}")
    return w.reshape(w.size // g, g).T.copy()


def structured_transpose(C, g: int | None = None) -> np.ndarray:
    """Swap the ``1 x g`` blocks ``c_ij`` and ``c_ji`` of a ``g x g^2`` matrix."""
    C = np.asarray(C, dtype=object)
    if g is None:
        g = C.shape[0]
    if C.shape != (g, g * g):
        raise ValueError(f"structured transpose needs a {g}x{g * g} matrix")
    out = np.empty_like(C)
    for i in range(g):
        for j in range(g):
            out[i, j * g:(j + 1) * g] = C[j, i * g:(i + 1) * g]
    return out


# -- polynomial matrices ---------------------------------------------------

def _as_poly(entry, g: int) -> NcPoly:
    if isinstance(entry, NcPoly):
        return entry
    return NcPoly.constant(exact.to_fraction(entry), g)


def poly_matrix(A, g: int) -> np.ndarray:
    """Object array of NcPoly (2-d); scalars become constants."""
    A = np.asarray(A, dtype=object)
    if A.ndim == 1:
        A = A.reshape(-1, 1)
    out = np.empty(A.shape, dtype=object)
    for idx, v in np.ndenumerate(A):
        out[idx] = _as_poly(v, g)
    return out


def pzeros(rows: int, cols: int, g: int) -> np.ndarray:
    out = np.empty((rows, cols), dtype=object)
    z = NcPoly.zero(g)
    for idx in np.ndindex(rows, cols):
        out[idx] = z
    return out


def pmatmul(A, B, g: int) -> np.ndarray:
    """Ordered product: entry ``sum_k A[i,k] * B[k,j]``."""
    A = poly_matrix(A, g)
    B = poly_matrix(B, g)
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    out = pzeros(A.shape[0], B.shape[1], g)
    for i in range(A.shape[0]):
        for k in range(A.shape[1]):
            a = A[i, k]
            if a.is_zero():
                continue
            for j in range(B.shape[1]):
                b = B[k, j]
                if not b.is_zero():
                    out[i, j] = out[i, j] + a * b
    return out


def pkron(A, B, g: int) -> np.ndarray:
    A = poly_matrix(A, g)
    B = poly_matrix(B, g)
    ra, ca = A.shape
    rb, cb = B.shape
    out = pzeros(ra * rb, ca * cb, g)
    for i, j in np.ndindex(ra, ca):
        if A[i, j].is_zero():
            continue
        for k, l in np.ndindex(rb, cb):
            out[i * rb + k, j * cb + l] = A[i, j] * B[k, l]
    return out


def ptranspose(A, g: int) -> np.ndarray:
    A = poly_matrix(A, g)
    out = np.empty((A.shape[1], A.shape[0]), dtype=object)
    for i, j in np.ndindex(A.shape):
        out[j, i] = A[i, j].T
    return out


def pequal(A, B, g: int) -> bool:
    A = poly_matrix(A, g)
    B = poly_matrix(B, g)
    return A.shape == B.shape and all(a == b for a, b in zip(A.flat, B.flat))


def x_row(g: int, j: int) -> np.ndarray:
    """``[x_1 ... x_g]_j`` as a ``1 x g^j`` polynomial matrix."""
    ws = words(g, j)
    out = np.empty((1, len(ws)), dtype=object)
    for k, w in enumerate(ws):
        out[0, k] = NcPoly.monomial(w, g)
    return out


def x_col(g: int, j: int) -> np.ndarray:
    """j-fold Kronecker power of the column ``col(x_1..x_g)``."""
    return x_row(g, j).T.copy()


def h_row(g: int) -> np.ndarray:
    out = np.empty((1, g), dtype=object)
    for i in range(g):
        out[0, i] = NcPoly.monomial((g + i,), g)
    return out


def h_col(g: int) -> np.ndarray:
    return h_row(g).T.copy()


def border_vector_symbolic(g: int, j: int) -> np.ndarray:
    """``V_j(x)[h]`` as a ``g^(j+1) x 1`` polynomial matrix.

    Position ``kron_index(m) * g + i`` holds ``h_i * reverse(m)``.
    """
    out = np.empty((g ** (j + 1), 1), dtype=object)
    for k, m in enumerate(words(g, j)):
        for i in range(g):
            out[k * g + i, 0] = NcPoly.monomial((g + i,) + m[::-1], g)
    return out


def verify_identity(name: str, g: int, seed=0, trials: int = 20):
    """Evaluate one named Kronecker identity; see :mod:`nchess.identities`."""
    from .identities import verify_identity as _verify  # identities imports this module

    return _verify(name, g, seed=seed, trials=trials)
