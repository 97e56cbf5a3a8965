"""Acceptance scoreboard: twelve end-to-end checks with fixed seeds.

Each ``criterion_k(seed)`` returns a :class:`CriterionResult`; nothing is
loosened to make a check pass, so a red line means a genuine mismatch.
"""
from __future__ import annotations

import os
import subprocess
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from .classify import Verdict, classify_one_negative, degree_bound_check, synthesize
from .freealg import MatrixTuple, NcPoly
from .identities import verify_identity
from .inertia import exact_inertia, min_signature_hessian
from .midmat import (
    build_middle_matrix,
    check_splits,
    modified_scalar_middle,
    recover_homogeneous,
    verify_appendix,
)
from .ncderiv import directional_derivative, hessian, kth_derivative
from .ncparse import parse
from .oracles import descartes_inertia, symbolic_hessian_from_middle
from .positivity import (
    chsy_codim,
    generic_point,
    middle_inertia_transport,
    relaxed_form_value,
    relaxed_positivity,
)
from .sampling import (
    random_certified_inputs,
    random_homogeneous_symmetric,
    random_matrix_tuple,
    random_symmetric_matrix,
    random_symmetric_poly,
    random_vector,
    rng,
)

__all__ = ["CriterionResult", "CRITERIA", "run_criteria", "format_line"]


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    ok: bool
    detail: str
    seconds: float


def _timed(number, title, fn, seed):
    t0 = time.perf_counter()
    ok, detail = fn(seed)
    return CriterionResult(number, title, bool(ok), detail, time.perf_counter() - t0)


def _random_instances(seed, count=200):
    r = rng(seed)
    out = []
    for _ in range(count):
        g = r.randint(1, 3)
        d = r.randint(2, 5 if g < 3 else 4)
        out.append(random_symmetric_poly(r, g, d, max_terms=12))
    return out


# 1 ------------------------------------------------------------------------

def _c1(seed):
    x4 = parse("x1^4", 1)
    checks = {
        "x^4 first": directional_derivative(x4)
        == parse("h1*x1^3 + x1*h1*x1^2 + x1^2*h1*x1 + x1^3*h1", 1, allow_h=True),
        "x^4 second": hessian(x4) == parse(
            "2*h1^2*x1^2 + 2*h1*x1*h1*x1 + 2*h1*x1^2*h1"
            " + 2*x1*h1^2*x1 + 2*x1*h1*x1*h1 + 2*x1^2*h1^2", 1, allow_h=True),
        "x^4 third": kth_derivative(x4, 3) == parse(
            "6*h1^3*x1 + 6*h1^2*x1*h1 + 6*h1*x1*h1^2 + 6*x1*h1^3", 1, allow_h=True),
        "x^4 fourth": kth_derivative(x4, 4) == parse("24*h1^4", 1, allow_h=True),
        "x^4 fifth": kth_derivative(x4, 5).is_zero(),
        "x2x1x2": directional_derivative(parse("x2*x1*x2", 2))
        == parse("h2*x1*x2 + x2*h1*x2 + x2*x1*h2", 2, allow_h=True),
        "x1^2x2": hessian(parse("x1^2*x2", 2))
        == parse("2*h1^2*x2 + 2*h1*x1*h2 + 2*x1*h1*h2", 2, allow_h=True),
    }
    bad = [k for k, v in checks.items() if not v]
    return not bad, "all examples exact" if not bad else f"mismatch: {bad}"


# 2 ------------------------------------------------------------------------

def _block_degrees_ok(Z):
    for (i, j), blk in Z.blocks.items():
        if i + j > Z.d - 2:
            return False
        for e in blk.flat:
            if not e.is_zero() and e.degree > Z.d - 2 - i - j:
                return False
    return True


def _c2(seed):
    for k, p in enumerate(_random_instances(seed)):
        Z = build_middle_matrix(p)
        if symbolic_hessian_from_middle(Z) != hessian(p):
            return False, f"V^T Z V != p'' for instance {k}: {p}"
        parts = recover_homogeneous(Z)
        if any(parts[m] != p.homogeneous_part(m) for m in parts) or not check_splits(Z):
            return False, f"homogeneous recovery failed for instance {k}: {p}"
        if not _block_degrees_ok(Z):
            return False, f"block degree invariant failed for instance {k}: {p}"
    return True, "200 random polynomials"


# 3 ------------------------------------------------------------------------

def _c3(seed):
    sig = min_signature_hessian(parse("x1^4", 1))
    if tuple(sig) != (2, 1):
        return False, f"x^4 signature {tuple(sig)}"
    r = rng(seed)
    for t in range(100):
        n = r.randint(1, 8)
        M = random_symmetric_matrix(r, n)
        if t % 4 == 0 and n > 1:  # force a kernel
            M[:, 0] = M[:, 1]
            M[0, :] = M[1, :]
        if tuple(exact_inertia(M)[0]) != descartes_inertia(M):
            return False, f"inertia disagreement on {M.tolist()}"
    return True, "x^4 gives (2, 1); 100 matrices agree with the char-poly count"


# 4 ------------------------------------------------------------------------

def _c4(seed):
    for k, p in enumerate(_random_instances(seed)):
        if not degree_bound_check(p)["ok"]:
            return False, f"degree bound fails for {p}"
    rep = degree_bound_check(parse("x1^4", 1))
    if rep["degree"] != 2 * rep["sigma"].minus + 2:
        return False, "x^4 does not attain the bound"
    return True, "200 random polynomials; x^4 attains d = 2 mu_- + 2"


# 5 ------------------------------------------------------------------------

def _c5(seed):
    rep = classify_one_negative(parse("x1^4", 1))
    D = rep.data
    ok1 = (rep.verdict is Verdict.SIGMA_ONE and rep.case == 1 and list(D.u) == [1]
           and D.A.tolist() == [[2]] and not any(D.y) and not any(D.v)
           and D.f0 == parse("x1^2", 1) and D.q.is_zero()
           and D.E1.tolist() == [[0, 0], [0, 2]])
    if not ok1:
        return False, "x^4 data differ"
    rep = classify_one_negative(parse("x1*x2*x1", 2))
    D = rep.data
    ok2 = (rep.verdict is Verdict.SIGMA_ONE and rep.case == 2 and list(D.u) == [1, 0]
           and list(D.y) == [0, 2] and D.q == parse("1/2*x2*x1", 2)
           and D.f1 == parse("1/2*x2", 2) and D.q == D.f1 * D.phi)
    if not ok2:
        return False, "x1x2x1 data differ"
    r = rng(seed)
    cases = set()
    for t in range(50):
        inp = random_certified_inputs(r, 2)
        p = synthesize(**inp)
        rep = classify_one_negative(p)
        if rep.verdict is Verdict.SIGMA_AT_LEAST_TWO:
            return False, f"certified input {t} classified as sigma >= 2: {p}"
        if rep.data is None or rep.data.reconstruct() != p:
            return False, f"reconstruction failed for input {t}: {p}"
        cases.add(rep.case)
    return True, f"examples exact; 50 round trips, cases hit {sorted(cases)}"


# 6 ------------------------------------------------------------------------

def _c6(seed):
    r = rng(seed)
    for t in range(50):
        g = r.randint(1, 2)
        p = random_symmetric_poly(r, g, r.randint(2, 4))
        base, _ = exact_inertia(build_middle_matrix(p).scalar)
        mod, _ = exact_inertia(modified_scalar_middle(p, 1).matrix())
        if mod.mu_plus != base.mu_plus + 1 or mod.mu_minus != base.mu_minus:
            return False, f"inertia {tuple(base)} -> {tuple(mod)} for {p}"
    return True, "50 random polynomials"


# 7 ------------------------------------------------------------------------

_C7_NAMES = [f"ids{k}" for k in range(1, 16)] + [
    "Nicesplit", "jun3a7", "aug12a8", "aug14c8", "Z01sym", "Z01sym-general"]


def _literal_counterexample():
    """Block ``(1, 2)`` of ``Z_02`` for ``x1^2 x2^2 + x2^2 x1^2`` differs from block ``(2, 1)``."""
    Z02 = build_middle_matrix(parse("x1^2*x2^2 + x2^2*x1^2", 2)).scalar_block(0, 2)
    b12, b21 = Z02[0, 4:8], Z02[1, 0:4]
    return [str(x) for x in b12], [str(x) for x in b21]


def _c7(seed):
    failed = []
    for g in (2, 3):
        for name in _C7_NAMES:
            if not verify_identity(name, g, seed=seed).ok:
                failed.append(f"{name} (g={g})")
    if not failed:
        return True, f"{len(_C7_NAMES)} identities for g = 2, 3"
    detail = "failed: " + ", ".join(failed)
    if any(f.startswith("Z01sym-general") for f in failed):
        b12, b21 = _literal_counterexample()
        twisted = all(verify_identity("Z0j-reversed-symmetry", g, seed=seed).ok for g in (2, 3))
        detail += (f"; x1^2x2^2+x2^2x1^2 has b12={b12}, b21={b21} in Z02"
                   + ("; reversed-middle form b_st = b_ts Pi holds" if twisted else ""))
    return False, detail


# 8 ------------------------------------------------------------------------

def _c8(seed):
    r = rng(seed)
    for t in range(20):
        g = r.randint(1, 2)
        p = random_symmetric_poly(r, g, r.randint(2, 4))
        X = random_matrix_tuple(r, g, r.randint(1, 3))
        rep = middle_inertia_transport(p, X)
        if not rep["ok"]:
            return False, f"{rep} for {p}"
    return True, "20 random (p, X)"


# 9 ------------------------------------------------------------------------

def _c9(seed):
    r = rng(seed)
    for t in range(20):
        g = 1 + t % 2
        rr = 1 + (t // 2) % 2
        n = sum(g ** j for j in range(rr + 1)) + 2
        X, v = generic_point(r, g, n, rr)
        eq = chsy_codim(X, v, rr, rr)
        if not eq["ok"] or eq["codim"] != eq["bound"]:
            return False, f"equality fails: {eq}"
        above = chsy_codim(X, v, rr + 1, rr)
        if not above["ok"]:
            return False, f"bound violated: {above}"
    return True, "20 generic instances: equality at k = r, bound at k = r + 1"


# 10 -----------------------------------------------------------------------

def _c10(seed):
    r = rng(seed)
    x2 = parse("x1^2", 1)
    for t in range(20):
        n = r.randint(1, 4)
        X = random_matrix_tuple(r, 1, n)
        v = random_vector(r, n)
        delta = Fraction(r.randint(1, 100), 100)
        verdict = relaxed_positivity(x2, X, v, delta)
        if verdict.kind != "Positive":
            return False, f"x^2 gave {verdict.kind}"
    x4 = parse("x1^4", 1)
    X, v = generic_point(r, 1, 7, 3)
    delta = Fraction(1, 1000)
    verdict = relaxed_positivity(x4, X, v, delta)
    if verdict.kind != "Negative":
        return False, f"x^4 at a generic point gave {verdict.kind}"
    H = verdict.witness_H(1, 7)
    value = relaxed_form_value(x4, X, H, v, lam=10 ** 6, delta=delta)
    if not value < 0:
        return False, "witness does not re-evaluate negative"
    at_zero = relaxed_positivity(x4, MatrixTuple.zeros(1, 7), v, delta)
    if at_zero.kind != "Positive":
        return False, f"x^4 at X = 0 gave {at_zero.kind}"
    return True, f"x^2 Positive x20; x^4 Negative (witness value {float(value):.3g}); x^4 at 0 Positive"


# 11 -----------------------------------------------------------------------

def _c11(seed):
    r = rng(seed)
    hyp = 0
    for t in range(30):
        g = r.randint(1, 2)
        p = random_symmetric_poly(r, g, r.randint(2, 4))
        if t % 3 == 0:  # drop degree-1 and degree-(d-1) terms so the end-term vanishing check applies
            d = p.degree
            p = NcPoly(g, {w: c for w, c in p.terms.items() if len(w) not in (1, d - 1)})
            if p.degree != d:
                continue
        rep = verify_appendix(p)
        if not rep["gradient_entries"] or rep["end_terms_vanish"] is False:
            return False, f"{rep} for {p}"
        hyp += rep["end_terms_vanish"] is not None
    for t in range(30):
        p = random_homogeneous_symmetric(r, 2, r.randint(2, 4))
        rep = verify_appendix(p)
        if rep["w_factorization"] is not True or not rep["gradient_entries"]:
            return False, f"{rep} for homogeneous {p}"
    return True, f"gradient entries on 30; W factorization on 30 homogeneous; end-term vanishing checked {hyp} times"


# 12 -----------------------------------------------------------------------

def _c12(seed):
    t0 = time.perf_counter()
    env = dict(os.environ)
    src = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    env["PYTHONPATH"] = src + os.pathsep + env.get("PYTHONPATH", "")
    proc = subprocess.run([sys.executable, "-m", "nchess.cli", "check-all", "--seed", str(seed)],
                          capture_output=True, text=True, env=env, timeout=600)
    elapsed = time.perf_counter() - t0
    ok = proc.returncode == 0 and elapsed < 300
    red = [ln for ln in proc.stdout.splitlines() if ln.startswith("FAIL")]
    detail = f"exit {proc.returncode} in {elapsed:.1f}s"
    if red:
        detail += "; red: " + ", ".join(ln.split(":")[0] for ln in red)
    return ok, detail


CRITERIA = {
    1: ("derivative examples", _c1),
    2: ("middle matrix contract", _c2),
    3: ("signature exactness", _c3),
    4: ("degree bound", _c4),
    5: ("classification round trip", _c5),
    6: ("modified Hessian inertia", _c6),
    7: ("identity suite", _c7),
    8: ("inertia transport", _c8),
    9: ("CHSY codimension", _c9),
    10: ("relaxed Hessian dichotomy", _c10),
    11: ("gradient coefficient relations", _c11),
    12: ("check-all CLI", _c12),
}


def run_criteria(numbers=None, seed=0) -> list[CriterionResult]:
    numbers = sorted(CRITERIA) if numbers is None else numbers
    return [_timed(k, CRITERIA[k][0], CRITERIA[k][1], seed) for k in numbers]


def format_line(res: CriterionResult) -> str:
    tag = "PASS" if res.ok else "FAIL"
    return f"{tag} criterion {res.number:>2} ({res.title}): {res.detail} [{res.seconds:.2f}s]"
