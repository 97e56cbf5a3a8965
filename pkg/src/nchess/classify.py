"""Symmetric polynomials whose Hessian has at most one negative square.

Every such ``p`` has the form

    p = p0 + p1 + p2 + phi q + q^T phi + phi f0 phi,    phi = [x] u,

with ``p2, q, f0`` homogeneous of degree two and a PSD certificate ``E2``.
:func:`classify_one_negative` reads this data off the scalar middle matrix;
:func:`synthesize` goes the other way.

``u`` is kept unnormalized (first nonzero entry 1) together with
``N = u^T u``, so everything stays rational: ``P = I - u u^T / N`` and the
stored ``y, v, A`` are the unit-vector quantities rescaled so that the
structural formulas hold verbatim with this ``u``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import exact
from .errors import InternalConsistencyError
from .freealg import NcPoly, is_symmetric, linear_form, substitute_linear
from .inertia import Inertia, Signature, exact_inertia
from .kronops import mat_g, structured_transpose, vec
from .midmat import build_middle_matrix

__all__ = [
    "Verdict",
    "ClassificationData",
    "ClassificationReport",
    "classify_one_negative",
    "synthesize",
    "degree_bound_check",
    "berkovich_factor",
    "quad_form_matrix",
    "poly_from_quad_form",
    "assemble_scalar_middle",
    "qz_inertia_check",
]


class Verdict(enum.Enum):
    SIGMA_ZERO = "SigmaZero"
    SIGMA_ONE = "SigmaOne"
    SIGMA_AT_LEAST_TWO = "SigmaAtLeastTwo"


# -- small exact helpers -----------------------------------------------------

def _col(v):
    return np.asarray(v, dtype=object).reshape(-1, 1)


def _kron(a, b):
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    if a.ndim == 1 and b.ndim == 1:
        return exact.kron(a.reshape(-1, 1), b.reshape(-1, 1)).reshape(-1)
    return exact.kron(a, b)


def _projector(u):
    N = sum(x * x for x in u)
    P = exact.identity(len(u)) - np.outer(u, u) * (Fraction(1) / N)
    return P, N


def _first_nonzero_column(M):
    for c in range(M.shape[1]):
        col = M[:, c]
        if any(col):
            lead = next(x for x in col if x)
            return np.array([x / lead for x in col], dtype=object)
    return None


def quad_form_matrix(q: NcPoly) -> np.ndarray:
    """``Q`` with ``q = sum Q[i, j] x_i x_j`` for homogeneous quadratic ``q``."""
    g = q.g
    Q = exact.zeros(g, g)
    for w, c in q.terms.items():
        if len(w) != 2 or any(a >= g for a in w):
            raise ValueError("expected a homogeneous quadratic in x")
        Q[w[0], w[1]] = c
    return Q


def poly_from_quad_form(Q, g: int) -> NcPoly:
    Q = exact.fraction_array(Q)
    return NcPoly(g, {(i, j): Q[i, j] for i in range(g) for j in range(g)})


# -- report types ------------------------------------------------------------

@dataclass(frozen=True)
class ClassificationData:
    """Decomposition data; see the module docstring for the scaling of ``u``."""

    u: np.ndarray = field(repr=False)
    norm2: Fraction
    y: np.ndarray = field(repr=False)
    v: np.ndarray = field(repr=False)
    A: np.ndarray = field(repr=False)
    p0: Fraction
    p1: NcPoly
    p2: NcPoly
    phi: NcPoly
    q: NcPoly
    f0: NcPoly
    f1: NcPoly | None
    E1: np.ndarray = field(repr=False)
    E2: np.ndarray = field(repr=False)
    E1_inertia: Inertia
    E2_inertia: Inertia

    def reconstruct(self) -> NcPoly:
        return synthesize(self.p0, self.p1, self.p2, self.u, self.q, self.f0)


@dataclass(frozen=True)
class ClassificationReport:
    verdict: Verdict
    case: int | None
    degree: int | None
    sigma: Signature
    data: ClassificationData | None = None
    reason: str = ""


# -- synthesis ---------------------------------------------------------------

def synthesize(p0, p1: NcPoly, p2: NcPoly, u, q: NcPoly, f0: NcPoly) -> NcPoly:
    """``p0 + p1 + p2 + phi q + q^T phi + phi f0 phi`` with ``phi = [x] u``."""
    u = exact.fraction_array(u).reshape(-1)
    g = len(u)
    if not any(u):
        raise ValueError("u must be nonzero")
    for name, poly, deg in (("p1", p1, 1), ("p2", p2, 2), ("q", q, 2), ("f0", f0, 2)):
        if poly.g != g:
            raise ValueError(f"{name} has g={poly.g}, expected {g}")
        if not poly.is_zero() and (poly.uses_h() or any(len(w) != deg for w in poly.terms)):
            raise ValueError(f"{name} must be zero or homogeneous of degree {deg}")
    phi = linear_form(u, g)
    return NcPoly.constant(exact.to_fraction(p0), g) + p1 + p2 + phi * q + q.T * phi + phi * f0 * phi


# -- structural formulas -------------------------------------------------------

def assemble_scalar_middle(Z00, u, y, v, A) -> np.ndarray:
    """Scalar middle matrix of a degree-four polynomial from ``(Z00, u, y, v, A)``.

    ``Z01 = u (u^T kron y^T) + u v^T + (u v^T)^sT``, ``Z11 = U A U^T`` and
    ``Z02 = u (u^T kron vec(A)^T)`` with ``U = u kron I``.
    """
    u = exact.fraction_array(u).reshape(-1)
    g = len(u)
    y = exact.fraction_array(y).reshape(-1)
    v = exact.fraction_array(v).reshape(-1)
    A = exact.fraction_array(A)
    U = _kron(_col(u), exact.identity(g))
    Z01 = np.outer(u, _kron(u, y)) + np.outer(u, v)
    Z01 = Z01 + structured_transpose(np.outer(u, v), g)
    Z11 = U @ A @ U.T
    Z02 = np.outer(u, _kron(u, vec(A)))
    n0, n1, n2 = g, g * g, g ** 3
    out = exact.zeros(n0 + n1 + n2, n0 + n1 + n2)
    out[:n0, :n0] = exact.fraction_array(Z00)
    out[:n0, n0:n0 + n1] = Z01
    out[n0:n0 + n1, :n0] = Z01.T
    out[n0:n0 + n1, n0:n0 + n1] = Z11
    out[:n0, n0 + n1:] = Z02
    out[n0 + n1:, :n0] = Z02.T
    return out


def qz_inertia_check(Z, u) -> dict:
    """Inertia of ``Z`` against ``E = [[P Z00 P, P Z01], [Z10 P, Z11]]``."""
    P, _ = _projector(u)
    Z00 = Z.scalar_block(0, 0)
    Z01 = Z.scalar_block(0, 1)
    Z11 = Z.scalar_block(1, 1)
    g = Z.g
    E = exact.zeros(g + g * g, g + g * g)
    E[:g, :g] = P @ Z00 @ P
    E[:g, g:] = P @ Z01
    E[g:, :g] = (P @ Z01).T
    E[g:, g:] = Z11
    iz, _ = exact_inertia(Z.scalar)
    ie, _ = exact_inertia(E)
    return {"Z": iz, "E": ie,
            "ok": iz.mu_plus == ie.mu_plus + 1 and iz.mu_minus == ie.mu_minus + 1}


def _fail(msg):
    raise InternalConsistencyError(msg)


def _build_data(p, g, u, y, v, A, Z00, want_f1):
    P, N = _projector(u)
    mv = mat_g(v, g)
    E1 = exact.zeros(2 * g, 2 * g)
    E1[:g, :g] = P @ Z00 @ P
    E1[:g, g:] = mv.T
    E1[g:, :g] = mv
    E1[g:, g:] = A
    E2 = E1 * Fraction(1, 2)
    i1, _ = exact_inertia(E1)
    i2, _ = exact_inertia(E2)
    if i1.mu_minus or i2.mu_minus:
        _fail("certificate matrix E1 is not positive semidefinite")
    c = (_kron(u, y) + v * 2) * Fraction(1, 4)
    q = poly_from_quad_form(mat_g(c, g), g)
    f0 = poly_from_quad_form(A * Fraction(1, 2), g)
    phi = linear_form(u, g)
    f1 = linear_form(y * Fraction(1, 4), g) if want_f1 else None
    data = ClassificationData(
        u=u, norm2=N, y=y, v=v, A=A,
        p0=p.constant_term(), p1=p.homogeneous_part(1), p2=p.homogeneous_part(2),
        phi=phi, q=q, f0=f0, f1=f1, E1=E1, E2=E2, E1_inertia=i1, E2_inertia=i2,
    )
    if data.reconstruct() != p:
        _fail("decomposition does not reproduce p")
    if f1 is not None and f1 * phi != q:
        _fail("q does not factor as f1 * phi")
    # E2 is the block matrix built from the quadratic-form matrices
    Qp2 = quad_form_matrix(data.p2) if not data.p2.is_zero() else exact.zeros(g, g)
    Qq = quad_form_matrix(q) if not q.is_zero() else exact.zeros(g, g)
    Qf0 = quad_form_matrix(f0) if not f0.is_zero() else exact.zeros(g, g)
    E2q = exact.zeros(2 * g, 2 * g)
    E2q[:g, :g] = P @ Qp2 @ P
    E2q[:g, g:] = P @ Qq.T
    E2q[g:, :g] = Qq @ P
    E2q[g:, g:] = Qf0
    if not np.array_equal(E2q, E2):
        _fail("E2 differs from half of E1")
    return data


def classify_one_negative(p: NcPoly) -> ClassificationReport:
    """Decide whether the Hessian of ``p`` has at most one negative square.

    Cases: (1) ``rank Z02 = 1``; (2) ``Z02 = 0`` and ``rank Z01 = 1``;
    (3) degree two with one negative eigenvalue; (4) ``Z`` positive
    semidefinite.  Every structural identity is re-checked and a failure
    raises :class:`InternalConsistencyError`.
    """
    if p.uses_h():
        raise ValueError("polynomial must use x-letters only")
    if not is_symmetric(p):
        raise ValueError("polynomial is not symmetric")
    g, d = p.g, p.degree
    e1 = np.array([Fraction(1)] + [Fraction(0)] * (g - 1), dtype=object)
    zero_g = np.array([Fraction(0)] * g, dtype=object)
    zero_g2 = np.array([Fraction(0)] * (g * g), dtype=object)
    if d is None:
        return ClassificationReport(Verdict.SIGMA_ZERO, 4, None, Signature(0, 0),
                                    reason="zero polynomial")
    if d <= 1:
        data = _build_data(p, g, e1, zero_g, zero_g2, exact.zeros(g, g), exact.zeros(g, g), False)
        return ClassificationReport(Verdict.SIGMA_ZERO, 4, d, Signature(0, 0), data)

    Z = build_middle_matrix(p)
    inr, cert = exact_inertia(Z.scalar)
    sig = Signature(inr.mu_plus, inr.mu_minus)
    if inr.mu_minus >= 2:
        return ClassificationReport(Verdict.SIGMA_AT_LEAST_TWO, None, d, sig,
                                    reason=f"middle matrix has {inr.mu_minus} negative eigenvalues")
    Z00 = Z.scalar_block(0, 0)
    if inr.mu_minus == 0:
        if d > 2:
            _fail("positive semidefinite middle matrix with degree above two")
        data = _build_data(p, g, e1, zero_g, zero_g2, exact.zeros(g, g), Z00, False)
        return ClassificationReport(Verdict.SIGMA_ZERO, 4, d, sig, data)

    if d == 2:
        k = next(i for i, dk in enumerate(cert.D) if dk < 0)
        u = _first_nonzero_column(_col(cert.T[k]))
        data = _build_data(p, g, u, zero_g, zero_g2, exact.zeros(g, g), Z00, False)
        return ClassificationReport(Verdict.SIGMA_ONE, 3, d, sig, data)

    if d > 4:
        _fail(f"one negative square but degree {d} > 4")
    Z01 = Z.scalar_block(0, 1)
    if d == 4:
        Z02 = Z.scalar_block(0, 2)
        if exact.rank(Z02) != 1:
            _fail("Z02 does not have rank one")
        u = _first_nonzero_column(Z02)
        P, N = _projector(u)
        w = Z02.T @ u * (Fraction(1) / N)
        if not np.array_equal(np.outer(u, w), Z02):
            _fail("Z02 is not u w^T")
        r = next(i for i, x in enumerate(u) if x)
        w1 = w[r * g * g:(r + 1) * g * g] * (Fraction(1) / u[r])
        if not np.array_equal(_kron(u, w1), w):
            _fail("w is not u kron w1")
        A = mat_g(w1, g)
        if not np.array_equal(A, A.T):
            _fail("A = mat_g(w1) is not symmetric")
        case = 1
    else:
        if exact.rank(Z01) != 1:
            _fail("Z01 does not have rank one")
        u = _first_nonzero_column(Z01)
        P, N = _projector(u)
        A = exact.zeros(g, g)
        case = 2
    I = exact.identity(g)
    y = (u @ Z01 @ _kron(_col(u), I)) * (Fraction(1) / (N * N))
    v = (u @ Z01 @ _kron(P, I)) * (Fraction(1) / N)
    if any(mat_g(v, g) @ u):
        _fail("(mat_g v) u is not zero")
    full = assemble_scalar_middle(Z00, u, y, v, A)
    expect = full[:Z.size, :Z.size]
    if not np.array_equal(expect, Z.scalar):
        _fail("middle matrix does not match the structural formulas")
    if case == 2 and (any(v) or any(A.flat)):
        _fail("degree three but v or A is nonzero")
    data = _build_data(p, g, u, y, v, A, Z00, case == 2)
    return ClassificationReport(Verdict.SIGMA_ONE, case, d, sig, data)


def degree_bound_check(p: NcPoly) -> dict:
    """``d <= 2 mu_+ + 2`` and ``d <= 2 mu_- + 2`` for the scalar middle matrix."""
    d = p.degree
    if d is None or d < 2:
        raise ValueError("degree bound needs degree at least 2")
    inr, _ = exact_inertia(build_middle_matrix(p).scalar)
    return {
        "degree": d,
        "sigma": Signature(inr.mu_plus, inr.mu_minus),
        "plus_ok": d <= 2 * inr.mu_plus + 2,
        "minus_ok": d <= 2 * inr.mu_minus + 2,
        "ok": d <= 2 * inr.mu_plus + 2 and d <= 2 * inr.mu_minus + 2,
    }


def berkovich_factor(u, b, f1: NcPoly, f2: NcPoly) -> NcPoly:
    """``f3`` with ``f1 = f3 psi`` and ``f2 = phi f3`` given ``phi f1 = f2 psi``.

    ``phi = [x] u`` and ``psi = [x] b``.  A change of variables making
    ``psi`` a coordinate lets us strip it from the right of ``f1``.
    """
    u = exact.fraction_array(u).reshape(-1)
    b = exact.fraction_array(b).reshape(-1)
    g = f1.g
    if not any(b):
        raise ValueError("b must be nonzero")
    if f1.constant_term() or f2.constant_term():
        raise ValueError("f1 and f2 must vanish at 0")
    phi = linear_form(u, g)
    psi = linear_form(b, g)
    if phi * f1 != f2 * psi:
        raise ValueError("hypothesis phi f1 = f2 psi fails")
    r = max(i for i, x in enumerate(b) if x)
    M = exact.identity(g)
    M[r, :] = b
    Minv = exact.inverse(M)
    tilde = substitute_linear(f1, Minv)
    stripped = {}
    for w, c in tilde.terms.items():
        if not w or w[-1] != r:
            raise InternalConsistencyError("f1 is not right divisible by psi")
        stripped[w[:-1]] = c
    f3 = substitute_linear(NcPoly(g, stripped), M)
    if f3 * psi != f1 or phi * f3 != f2:
        raise InternalConsistencyError("factorisation check failed")
    return f3
