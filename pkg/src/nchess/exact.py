"""Small exact linear algebra over the rationals.

Matrices are numpy object arrays holding :class:`fractions.Fraction`.
Sizes in this package stay in the low hundreds, so plain Gaussian
elimination is adequate.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import numpy as np

__all__ = [
    "to_fraction",
    "fraction_array",
    "is_exact_array",
    "identity",
    "zeros",
    "rref",
    "rank",
    "nullspace",
    "inverse",
    "float_rank",
    "format_fraction",
    "kron",
]


def to_fraction(value) -> Fraction:
    """Convert an integer, Fraction or rational string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (bool, np.bool_)):
        return Fraction(int(value))
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"not an exact rational: {value!r}")


def is_exact_array(a) -> bool:
    arr = np.asarray(a, dtype=object)
    return all(
        isinstance(v, (Rational, np.integer)) and not isinstance(v, float)
        for v in arr.flat
    )


def fraction_array(a) -> np.ndarray:
    """Copy ``a`` into an object array of Fractions (any shape)."""
    arr = np.asarray(a, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = to_fraction(v)
    return out


def zeros(rows: int, cols: int) -> np.ndarray:
    out = np.empty((rows, cols), dtype=object)
    out.fill(Fraction(0))
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def rref(a):
    """Reduced row echelon form. Returns ``(R, pivot_columns)``."""
    m = fraction_array(a)
    if m.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if m[i, c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = 1 / m[r, c]
        m[r] = m[r] * inv
        for i in range(rows):
            if i != r and m[i, c] != 0:
                m[i] = m[i] - m[i, c] * m[r]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a) -> int:
    arr = np.asarray(a, dtype=object)
    if arr.size == 0:
        return 0
    # eliminate along the shorter side
    if arr.shape[0] > arr.shape[1]:
        arr = arr.T
    return len(rref(arr)[1])


def nullspace(a) -> list[np.ndarray]:
    """Basis of the right kernel ``{x : a @ x = 0}`` as Fraction vectors."""
    m, pivots = rref(a)
    cols = m.shape[1]
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for f in free:
        vec = np.array([Fraction(0)] * cols, dtype=object)
        vec[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -m[r, f]
        basis.append(vec)
    return basis


def inverse(a) -> np.ndarray:
    m = fraction_array(a)
    n, k = m.shape
    if n != k:
        raise ValueError("inverse of a non-square matrix")
    aug = np.concatenate([m, identity(n)], axis=1)
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return r[:, n:]


def float_rank(a, rel_tol: float = 1e-10) -> int:
    """Numerical rank with singular-value threshold ``rel_tol * ||a||_2``."""
    arr = np.asarray(a, dtype=float)
    if arr.size == 0:
        return 0
    s = np.linalg.svd(arr, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > rel_tol * s[0]))


def format_fraction(value) -> str:
    f = to_fraction(value)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def kron(a, b) -> np.ndarray:
    """Kronecker product of 2-d object arrays (no float coercion)."""
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    if a.ndim != 2 or b.ndim != 2:
        raise ValueError("kron expects 2-d arrays")
    rb, cb = b.shape
    out = np.empty((a.shape[0] * rb, a.shape[1] * cb), dtype=object)
    for i, j in np.ndindex(a.shape):
        out[i * rb:(i + 1) * rb, j * cb:(j + 1) * cb] = a[i, j] * b
    return out
