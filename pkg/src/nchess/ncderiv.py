"""Directional derivatives of nc polynomials by letter replacement.

The k-th derivative replaces, in every possible way, k of the x-letters of
each word by the h-letter with the same index.
"""
from __future__ import annotations

from .freealg import NcPoly

__all__ = ["directional_derivative", "kth_derivative", "hessian", "replace_one"]


def _require_x_only(p: NcPoly):
    if p.uses_h():
        raise ValueError("polynomial already contains h-letters")


def replace_one(p: NcPoly) -> NcPoly:
    """Sum over single x -> h replacements; works on mixed words too."""
    g = p.g
    out: dict = {}
    for w, c in p.terms.items():
        for pos, a in enumerate(w):
            if a < g:
                nw = w[:pos] + (a + g,) + w[pos + 1:]
                out[nw] = out.get(nw, 0) + c
    return NcPoly(g, out)


def directional_derivative(p: NcPoly) -> NcPoly:
    """``p'(x)[h]``, the coefficient of t in ``p(x + t h)``."""
    _require_x_only(p)
    return replace_one(p)


def kth_derivative(p: NcPoly, k: int) -> NcPoly:
    _require_x_only(p)
    if k < 1:
        raise ValueError("derivative order must be at least 1")
    out = p
    for _ in range(k):
        out = replace_one(out)
        if out.is_zero():
            break
    return out


def hessian(p: NcPoly) -> NcPoly:
    """``p''(x)[h]``: homogeneous of degree two in h."""
    return kth_derivative(p, 2)
