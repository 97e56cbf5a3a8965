"""Free algebra on symmetric letters over the rationals.

A polynomial lives on the alphabet ``x_1..x_g, h_1..h_g``.  Letters are
stored as small integers: ``x_j`` is ``j - 1`` and ``h_j`` is ``g + j - 1``,
so a word is a tuple of ints and canonical ordering (length, then
lexicographic on codes) puts x-letters ahead of h-letters.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from numbers import Rational
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from . import exact

__all__ = [
    "LetterKind",
    "Letter",
    "NcPoly",
    "MatrixTuple",
    "add",
    "mul",
    "involution",
    "is_symmetric",
    "homogeneous_part",
    "substitute_linear",
    "evaluate",
    "linear_form",
]


class LetterKind(enum.Enum):
    X = "x"
    H = "h"


class Letter(NamedTuple):
    kind: LetterKind
    index: int  # 1-based

    def code(self, g: int) -> int:
        if not 1 <= self.index <= g:
            raise ValueError(f"letter index {self.index} outside 1..{g}")
        return self.index - 1 if self.kind is LetterKind.X else g + self.index - 1

    @classmethod
    def from_code(cls, code: int, g: int) -> "Letter":
        if code < g:
            return cls(LetterKind.X, code + 1)
        return cls(LetterKind.H, code - g + 1)

    def __str__(self):
        return f"{self.kind.value}{self.index}"


def _is_scalar(value) -> bool:
    return isinstance(value, (Rational, np.integer)) and not isinstance(value, bool)


class NcPoly:
    """Immutable nc polynomial with exact rational coefficients.

    ``terms`` maps words (tuples of letter codes) to nonzero Fractions.
    The zero polynomial has ``degree is None``.
    """

    __slots__ = ("g", "_terms", "_hash")

    def __init__(self, g: int, terms: Mapping[tuple, object] | None = None):
        if g < 1:
            raise ValueError("need at least one variable")
        self.g = int(g)
        clean = {}
        if terms:
            top = 2 * self.g
            for word, c in terms.items():
                word = tuple(int(a) for a in word)
                if any(a < 0 or a >= top for a in word):
                    raise ValueError(f"word {word} has letters outside the alphabet of g={g}")
                c = exact.to_fraction(c)
                if c:
                    clean[word] = clean.get(word, 0) + c
                    if not clean[word]:
                        del clean[word]
        self._terms = clean
        self._hash = None

    # -- construction -------------------------------------------------
    @classmethod
    def zero(cls, g: int) -> "NcPoly":
        return cls(g)

    @classmethod
    def constant(cls, c, g: int) -> "NcPoly":
        return cls(g, {(): c})

    @classmethod
    def x(cls, i: int, g: int) -> "NcPoly":
        return cls(g, {(Letter(LetterKind.X, i).code(g),): 1})

    @classmethod
    def h(cls, i: int, g: int) -> "NcPoly":
        return cls(g, {(Letter(LetterKind.H, i).code(g),): 1})

    @classmethod
    def monomial(cls, word: Iterable[int], g: int, coeff=1) -> "NcPoly":
        return cls(g, {tuple(word): coeff})

    @classmethod
    def _raw(cls, g: int, terms: dict) -> "NcPoly":
        # trusted constructor: terms already canonical
        obj = cls.__new__(cls)
        obj.g = g
        obj._terms = terms
        obj._hash = None
        return obj

    # -- inspection ---------------------------------------------------
    @property
    def terms(self) -> Mapping[tuple, Fraction]:
        return MappingProxyType(self._terms)

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    @property
    def degree(self) -> int | None:
        """Maximum word length, or ``None`` for the zero polynomial."""
        if not self._terms:
            return None
        return max(len(w) for w in self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, word) -> Fraction:
        return self._terms.get(tuple(word), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coeff(())

    def is_constant(self) -> bool:
        return all(len(w) == 0 for w in self._terms)

    def uses_h(self) -> bool:
        g = self.g
        return any(a >= g for w in self._terms for a in w)

    def h_degrees(self) -> set[int]:
        g = self.g
        return {sum(1 for a in w if a >= g) for w in self._terms}

    def __len__(self):
        return len(self._terms)

    # -- algebra ------------------------------------------------------
    def _coerce(self, other) -> "NcPoly":
        if isinstance(other, NcPoly):
            if other.g != self.g:
                raise ValueError(f"mismatched variable counts {self.g} and {other.g}")
            return other
        if _is_scalar(other):
            return NcPoly.constant(other, self.g)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for w, c in other._terms.items():
            s = out.get(w, 0) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return NcPoly._raw(self.g, out)

    __radd__ = __add__

    def __neg__(self):
        return NcPoly._raw(self.g, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "NcPoly":
        c = exact.to_fraction(c)
        if not c:
            return NcPoly._raw(self.g, {})
        return NcPoly._raw(self.g, {w: c * v for w, v in self._terms.items()})

    def __mul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = w1 + w2
                s = out.get(w, 0) + c1 * c2
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return NcPoly._raw(self.g, out)

    def __rmul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if _is_scalar(other):
            return self.scale(Fraction(1) / exact.to_fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = NcPoly.constant(1, self.g)
        for _ in range(k):
            out = out * self
        return out

    @property
    def T(self) -> "NcPoly":
        return NcPoly._raw(self.g, {w[::-1]: c for w, c in self._terms.items()})

    def transpose(self) -> "NcPoly":
        return self.T

    def homogeneous_part(self, k: int) -> "NcPoly":
        if k < 0:
            raise ValueError("k must be nonnegative")
        return NcPoly._raw(self.g, {w: c for w, c in self._terms.items() if len(w) == k})

    def map_words(self, fn) -> "NcPoly":
        """Apply ``fn`` to every word; coefficients of colliding words add."""
        return NcPoly(self.g, _accumulate((fn(w), c) for w, c in self._terms.items()))

    # -- comparison ---------------------------------------------------
    def __eq__(self, other):
        if _is_scalar(other):
            other = NcPoly.constant(other, self.g)
        if not isinstance(other, NcPoly):
            return NotImplemented
        return self.g == other.g and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.g, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        from .ncparse import to_string

        return f"NcPoly({to_string(self)!r}, g={self.g})"

    def __str__(self):
        from .ncparse import to_string

        return to_string(self)


def _accumulate(pairs) -> dict:
    out: dict = {}
    for w, c in pairs:
        out[w] = out.get(w, 0) + c
    return out


def add(p: NcPoly, q: NcPoly) -> NcPoly:
    if p.g != q.g:
        raise ValueError(f"mismatched variable counts {p.g} and {q.g}")
    return p + q


def mul(p: NcPoly, q: NcPoly) -> NcPoly:
    if p.g != q.g:
        raise ValueError(f"mismatched variable counts {p.g} and {q.g}")
    return p * q


def involution(p: NcPoly) -> NcPoly:
    return p.T


def is_symmetric(p: NcPoly) -> bool:
    return p == p.T


def homogeneous_part(p: NcPoly, k: int) -> NcPoly:
    return p.homogeneous_part(k)


def linear_form(u, g: int | None = None) -> NcPoly:
    """The degree-one polynomial ``sum_j u_j x_j``."""
    u = list(u)
    g = len(u) if g is None else g
    return NcPoly(g, {(j,): c for j, c in enumerate(u)})


def substitute_linear(p: NcPoly, M) -> NcPoly:
    """Replace each ``x_j`` by ``sum_k M[j, k] x_k``; h-letters are untouched.

    ``M`` must be an invertible rational ``g x g`` matrix.
    """
    g = p.g
    M = exact.fraction_array(M)
    if M.shape != (g, g):
        raise ValueError(f"substitution matrix must be {g}x{g}")
    if exact.rank(M) < g:
        raise ValueError("substitution matrix is singular")
    images = {}
    for j in range(g):
        images[j] = NcPoly(g, {(k,): M[j, k] for k in range(g)})
    for j in range(g, 2 * g):
        images[j] = NcPoly(g, {(j,): 1})
    one = NcPoly.constant(1, g)
    out = NcPoly.zero(g)
    cache: dict = {(): one}

    def word_image(w):
        if w not in cache:
            cache[w] = word_image(w[:-1]) * images[w[-1]]
        return cache[w]

    for w, c in p.terms.items():
        out = out + word_image(w).scale(c)
    return out


class MatrixTuple:
    """``g`` real symmetric ``n x n`` matrices.

    Integer/Fraction input is kept exact (object arrays of Fraction) and must
    be symmetric.  Floating input is stored as float64 and symmetrized.
    """

    def __init__(self, mats, exact_entries: bool | None = None):
        mats = [np.asarray(m, dtype=object) for m in mats]
        if not mats:
            raise ValueError("need at least one matrix")
        n = mats[0].shape[0]
        for m in mats:
            if m.ndim != 2 or m.shape != (n, n):
                raise ValueError("all matrices must be square of one size")
        if exact_entries is None:
            exact_entries = all(exact.is_exact_array(m) for m in mats)
        if exact_entries:
            conv = []
            for m in mats:
                fm = exact.fraction_array(m)
                if not np.array_equal(fm, fm.T):
                    raise ValueError("rational input matrices must be exactly symmetric")
                conv.append(fm)
        else:
            conv = []
            for m in mats:
                fm = np.asarray(m, dtype=float)
                conv.append((fm + fm.T) / 2)
        self.mats = tuple(conv)
        self.exact = bool(exact_entries)
        self.g = len(conv)
        self.n = n

    @classmethod
    def zeros(cls, g: int, n: int) -> "MatrixTuple":
        return cls([exact.zeros(n, n) for _ in range(g)])

    def __getitem__(self, j):
        return self.mats[j]

    def __iter__(self):
        return iter(self.mats)

    def __len__(self):
        return self.g

    def scaled(self, c) -> "MatrixTuple":
        if self.exact:
            c = exact.to_fraction(c)
        return MatrixTuple([m * c for m in self.mats], self.exact)

    def as_float(self) -> "MatrixTuple":
        return MatrixTuple([np.asarray(m, dtype=float) for m in self.mats], False)

    def norm(self) -> float:
        """Largest spectral norm among the matrices."""
        return max(np.linalg.norm(np.asarray(m, dtype=float), 2) for m in self.mats)

    def __repr__(self):
        kind = "exact" if self.exact else "float"
        return f"MatrixTuple(g={self.g}, n={self.n}, {kind})"


def _identity_like(n: int, is_exact: bool):
    return exact.identity(n) if is_exact else np.eye(n)


def evaluate(p: NcPoly, X: MatrixTuple, H: MatrixTuple | None = None) -> np.ndarray:
    """Substitute matrices for the letters of ``p``.

    x-letters take ``X``, h-letters take ``H``; the constant term becomes a
    multiple of the identity.  Exact inputs give an exact result.
    """
    g = p.g
    if X.g != g:
        raise ValueError(f"polynomial has g={g} but X has {X.g} matrices")
    if p.uses_h():
        if H is None:
            raise ValueError("polynomial contains h-letters but no H was given")
        if H.g != g or H.n != X.n:
            raise ValueError("H must match X in count and size")
    n = X.n
    is_exact = X.exact and (H is None or H.exact)
    letters = list(X.mats) + (list(H.mats) if H is not None else [])
    if not is_exact:
        letters = [np.asarray(m, dtype=float) for m in letters]
    eye = _identity_like(n, is_exact)
    cache: dict = {(): eye}

    def word_matrix(w):
        if w not in cache:
            cache[w] = word_matrix(w[:-1]) @ letters[w[-1]]
        return cache[w]

    out = exact.zeros(n, n) if is_exact else np.zeros((n, n))
    for w, c in p.terms.items():
        out = out + word_matrix(w) * (c if is_exact else float(c))
    return out
