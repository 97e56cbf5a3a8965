"""Independent reference computations used to cross-check the main modules.

None of these share code paths with the routines they check:

* derivatives by expanding ``p(x + t h)`` letter by letter,
* inertia by the characteristic polynomial (Faddeev-LeVerrier) and
  Descartes' rule of signs, which is exact for real-rooted polynomials,
* ``V^T Z V`` by multiplying polynomial matrices,
* Hessian values at matrix points by interpolating ``t -> <p(X+tH)v, v>``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import exact
from .freealg import MatrixTuple, NcPoly, evaluate
from .kronops import border_vector_symbolic, pmatmul, ptranspose

__all__ = [
    "taylor_derivative",
    "charpoly",
    "descartes_inertia",
    "symbolic_hessian_from_middle",
    "hessian_value_by_interpolation",
]


def taylor_derivative(p: NcPoly, k: int) -> NcPoly:
    """``k!`` times the ``t^k`` coefficient of ``p(x + t h)``."""
    if p.uses_h():
        raise ValueError("polynomial must use x-letters only")
    g = p.g
    out: dict = {}
    fact = math.factorial(k)
    for w, c in p.terms.items():
        for pos in combinations(range(len(w)), k):
            key = tuple(a + g if i in pos else a for i, a in enumerate(w))
            out[key] = out.get(key, 0) + c * fact
    return NcPoly(g, out)


def charpoly(M) -> list[Fraction]:
    """Coefficients ``[1, c_1, ..., c_n]`` of ``det(tI - M)``, highest first."""
    M = exact.fraction_array(M)
    n = M.shape[0]
    coeffs = [Fraction(1)]
    Mk = exact.zeros(n, n)
    eye = exact.identity(n)
    for k in range(1, n + 1):
        Mk = M @ (Mk + eye * coeffs[-1])
        coeffs.append(-sum(Mk[i, i] for i in range(n)) / k)
    return coeffs


def _sign_changes(seq) -> int:
    signs = [c > 0 for c in seq if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def descartes_inertia(M) -> tuple[int, int, int]:
    """``(mu_+, mu_-, mu_0)`` of a rational symmetric matrix from its char poly."""
    c = charpoly(M)
    n = len(c) - 1
    zero = 0
    while zero < n and c[n - zero] == 0:
        zero += 1
    core = c[:n + 1 - zero]
    plus = _sign_changes(core)
    # roots of q(-t): flip signs of odd-degree coefficients
    deg = len(core) - 1
    minus = _sign_changes([a if (deg - i) % 2 == 0 else -a for i, a in enumerate(core)])
    return plus, minus, zero


def symbolic_hessian_from_middle(Z) -> NcPoly:
    """``V(x)[h]^T Z(x) V(x)[h]`` by polynomial matrix products."""
    g = Z.g
    V = np.concatenate([border_vector_symbolic(g, j) for j in range(Z.nblocks)], axis=0)
    prod = pmatmul(pmatmul(ptranspose(V, g), Z.full(), g), V, g)
    return prod[0, 0]


def _interpolate_coeff(ts, ys, power):
    """Coefficient of ``t^power`` of the polynomial through ``(ts, ys)``."""
    n = len(ts)
    V = exact.zeros(n, n)
    for i, t in enumerate(ts):
        for j in range(n):
            V[i, j] = Fraction(t) ** j
    sol = exact.inverse(V) @ np.array(ys, dtype=object)
    return sol[power]


def hessian_value_by_interpolation(p: NcPoly, X: MatrixTuple, H: MatrixTuple, v) -> Fraction:
    """``<p''(X)[H] v, v>`` as twice the ``t^2`` coefficient of ``<p(X+tH)v, v>``."""
    d = p.degree or 0
    v = exact.fraction_array(v)
    ts = list(range(d + 1))
    ys = []
    for t in ts:
        Xt = MatrixTuple([X[j] + H[j] * Fraction(t) for j in range(X.g)])
        ys.append(v @ evaluate(p, Xt) @ v)
    if d < 2:
        return Fraction(0)
    return 2 * _interpolate_coeff(ts, ys, 2)
