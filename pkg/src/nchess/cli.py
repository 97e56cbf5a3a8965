"""``nchess`` command line.

Exit codes: 0 success, 1 domain error (bad polynomial, failed check),
2 usage error, 3 internal-consistency failure.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

import numpy as np

from . import exact
from .errors import InternalConsistencyError
from .ncparse import ParseError, parse, to_string

SCHEMA = 1


# -- output helpers ----------------------------------------------------------

def _q(x) -> str:
    return exact.format_fraction(x)


def _mat(M) -> list:
    M = np.asarray(M, dtype=object)
    if M.ndim == 1:
        return [_q(x) for x in M]
    return [[_q(x) for x in row] for row in M]


def _emit(args, command, inputs, body, text_lines):
    if args.json:
        out = {"schema": SCHEMA, "command": command, "inputs": inputs}
        out.update(body)
        out["timings"] = {"seconds": round(time.perf_counter() - args._t0, 6)}
        print(json.dumps(out, indent=2))
    else:
        for line in text_lines:
            print(line)


def _read_poly(args, allow_h=False):
    text = sys.stdin.read() if args.poly == "-" else args.poly
    return text.strip(), parse(text, args.g, allow_h=allow_h)


def _fractions(text: str) -> list[Fraction]:
    try:
        return [Fraction(s.strip()) for s in text.split(",") if s.strip()]
    except ValueError as exc:
        raise ValueError(f"bad rational list {text!r}") from exc


def _rows(M) -> list[str]:
    width = max((len(_q(x)) for x in np.asarray(M).flat), default=1)
    return ["  " + " ".join(_q(x).rjust(width) for x in row) for row in np.asarray(M)]


# -- subcommands -------------------------------------------------------------

def cmd_parse(args):
    text, p = _read_poly(args, allow_h=True)
    s = to_string(p)
    _emit(args, "parse", {"poly": text, "g": args.g},
          {"polynomial": s, "degree": p.degree, "symmetric": p == p.T}, [s])
    return 0


def cmd_diff(args):
    from .ncderiv import kth_derivative

    text, p = _read_poly(args)
    d = kth_derivative(p, args.order)
    s = to_string(d)
    _emit(args, "diff", {"poly": text, "g": args.g, "order": args.order}, {"polynomial": s}, [s])
    return 0


def cmd_hessian(args):
    from .ncderiv import hessian

    text, p = _read_poly(args)
    s = to_string(hessian(p))
    _emit(args, "hessian", {"poly": text, "g": args.g}, {"polynomial": s}, [s])
    return 0


def cmd_middle(args):
    from .inertia import exact_inertia
    from .midmat import build_middle_matrix

    text, p = _read_poly(args)
    Z = build_middle_matrix(p)
    inr, _ = exact_inertia(Z.scalar)
    blocks = {f"{i},{j}": [[to_string(e) for e in row] for row in b]
              for (i, j), b in sorted(Z.blocks.items())} if args.symbolic else None
    body = {"degree": Z.d, "size": Z.size, "scalar": _mat(Z.scalar),
            "inertia": {"plus": inr.mu_plus, "minus": inr.mu_minus, "zero": inr.mu_zero}}
    if blocks is not None:
        body["blocks"] = blocks
    lines = [f"scalar middle matrix ({Z.size}x{Z.size}), inertia {tuple(inr)}:"] + _rows(Z.scalar)
    if blocks is not None:
        for key, b in blocks.items():
            lines.append(f"Z_{key}(x): {b}")
    _emit(args, "middle", {"poly": text, "g": args.g}, body, lines)
    return 0


def cmd_signature(args):
    from .inertia import min_signature_hessian, sds_from_hessian

    text, p = _read_poly(args)
    sig = min_signature_hessian(p)
    body = {"sigma_plus": sig.plus, "sigma_minus": sig.minus}
    lines = [f"sigma_+ = {sig.plus}", f"sigma_- = {sig.minus}"]
    if args.sds and p.degree is not None and p.degree >= 2:
        dec = sds_from_hessian(p)
        body["sds"] = {
            "plus": [{"weight": _q(w), "square": to_string(f)} for w, f in dec.plus_terms],
            "minus": [{"weight": _q(w), "square": to_string(f)} for w, f in dec.minus_terms],
        }
        lines += [f"  + {_q(w)} * ({to_string(f)})^T ({to_string(f)})" for w, f in dec.plus_terms]
        lines += [f"  - {_q(w)} * ({to_string(f)})^T ({to_string(f)})" for w, f in dec.minus_terms]
    _emit(args, "signature", {"poly": text, "g": args.g}, body, lines)
    return 0


def cmd_classify(args):
    from .classify import classify_one_negative

    text, p = _read_poly(args)
    rep = classify_one_negative(p)
    body = {"verdict": rep.verdict.value, "case": rep.case, "degree": rep.degree,
            "sigma": {"plus": rep.sigma.plus, "minus": rep.sigma.minus}}
    lines = [f"verdict: {rep.verdict.value}", f"case: {rep.case}",
             f"sigma: ({rep.sigma.plus}, {rep.sigma.minus})"]
    if rep.reason:
        body["reason"] = rep.reason
        lines.append(f"reason: {rep.reason}")
    D = rep.data
    if D is not None:
        data = {
            "u": _mat(D.u), "norm2": _q(D.norm2), "y": _mat(D.y), "v": _mat(D.v), "A": _mat(D.A),
            "p0": _q(D.p0), "p1": to_string(D.p1), "p2": to_string(D.p2), "phi": to_string(D.phi),
            "q": to_string(D.q), "f0": to_string(D.f0),
            "f1": None if D.f1 is None else to_string(D.f1),
            "E1": _mat(D.E1), "E2": _mat(D.E2),
        }
        body["data"] = data
        for k in ("u", "y", "v", "A", "p0", "p1", "p2", "phi", "q", "f0", "f1"):
            if data[k] is not None:
                lines.append(f"{k}: {data[k]}")
    _emit(args, "classify", {"poly": text, "g": args.g}, body, lines)
    return 0


def cmd_synthesize(args):
    from .classify import synthesize
    from .freealg import NcPoly

    g = args.g

    def poly(s):
        return parse(s, g) if s else NcPoly.zero(g)

    u = _fractions(args.u)
    if len(u) != g:
        raise ValueError(f"u needs {g} entries")
    p = synthesize(Fraction(args.p0), poly(args.p1), poly(args.p2), u, poly(args.q), poly(args.f0))
    s = to_string(p)
    inputs = {"g": g, "p0": args.p0, "p1": args.p1, "p2": args.p2, "u": args.u, "q": args.q,
              "f0": args.f0}
    _emit(args, "synthesize", inputs, {"polynomial": s}, [s])
    return 0


def cmd_identities(args):
    from .identities import IDENTITIES, verify_identity

    names = list(IDENTITIES) if args.all or not args.names else args.names
    for n in names:
        if n not in IDENTITIES:
            raise ValueError(f"unknown identity {n!r}; choose from {', '.join(IDENTITIES)}")
    gs = args.gs or [2, 3]
    results = [verify_identity(n, g, seed=args.seed, trials=args.trials) for g in gs for n in names]
    body = {"results": [{"name": r.name, "g": r.g, "ok": r.ok, "method": r.method,
                         "cases": r.cases, "counterexample": r.counterexample} for r in results],
            "all_ok": all(r.ok for r in results)}
    lines = [f"{'ok  ' if r.ok else 'FAIL'} {r.name:<18} g={r.g} {r.method:<8} {r.cases} cases"
             + (f"  {r.counterexample}" if r.counterexample else "") for r in results]
    _emit(args, "identities", {"names": names, "g": gs, "seed": args.seed, "trials": args.trials},
          body, lines)
    return 0 if body["all_ok"] else 1


def cmd_chsy(args):
    from .positivity import chsy_codim, generic_point
    from .sampling import rng

    r = rng(args.seed)
    alpha_r = sum(args.g ** j for j in range(args.r + 1))
    n = args.n if args.n is not None else alpha_r + 2
    X, v = generic_point(r, args.g, n, args.r)
    k = args.k if args.k is not None else args.r
    rep = chsy_codim(X, v, k, args.r)
    _emit(args, "chsy", {"g": args.g, "n": n, "k": k, "r": args.r, "seed": args.seed}, rep,
          [f"{key}: {val}" for key, val in rep.items()])
    return 0 if rep["ok"] is not False else 1


def cmd_positivity(args):
    from .freealg import MatrixTuple
    from .positivity import generic_point, relaxed_positivity
    from .sampling import rng

    text, p = _read_poly(args)
    r = rng(args.seed)
    d = p.degree or 1
    n = args.n if args.n is not None else 3
    if args.zero:
        X = MatrixTuple.zeros(p.g, n)
        v = np.array([Fraction(1)] + [Fraction(0)] * (n - 1), dtype=object)
    else:
        # longest independent word family that fits in R^n, capped at d - 1
        length = 0
        while length < d - 1 and sum(p.g ** j for j in range(length + 2)) <= n:
            length += 1
        X, v = generic_point(r, p.g, n, length)
    verdict = relaxed_positivity(p, X, v, Fraction(args.delta), args.lambda_max, args.tol)
    body = {"verdict": verdict.kind,
            "lambda": None if verdict.lam is None else _q(verdict.lam),
            "value": None if verdict.value is None else (
                _q(verdict.value) if isinstance(verdict.value, Fraction) else float(verdict.value)),
            "reason": verdict.reason,
            "X": [_mat(m) for m in X], "v": _mat(v)}
    if verdict.witness is not None:
        body["witness"] = [_mat(m) for m in verdict.witness_H(p.g, n)]
    lines = [f"verdict: {verdict.kind}"]
    if verdict.lam is not None:
        lines.append(f"lambda: {_q(verdict.lam)}")
    if verdict.value is not None:
        lines.append(f"witness value: {float(verdict.value):.6g}")
    if verdict.reason:
        lines.append(f"reason: {verdict.reason}")
    inputs = {"poly": text, "g": args.g, "n": n, "delta": args.delta, "lambda_max": args.lambda_max,
              "tol": args.tol, "seed": args.seed, "zero": args.zero}
    _emit(args, "positivity", inputs, body, lines)
    return 0


def cmd_check_all(args):
    from .acceptance import format_line, run_criteria

    numbers = args.criteria or list(range(1, 12))
    results = run_criteria(numbers, seed=args.seed)
    body = {"criteria": [{"number": r.number, "title": r.title, "ok": r.ok, "detail": r.detail,
                          "seconds": round(r.seconds, 3)} for r in results],
            "all_ok": all(r.ok for r in results)}
    lines = [format_line(r) for r in results]
    lines.append(f"{sum(r.ok for r in results)}/{len(results)} criteria pass")
    _emit(args, "check-all", {"seed": args.seed, "criteria": numbers}, body, lines)
    return 0 if body["all_ok"] else 1


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nchess", description="Hessians of noncommutative polynomials.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, poly=True, g_required=True):
        sp = sub.add_parser(name, help=help_)
        if poly:
            sp.add_argument("poly", help='polynomial text, or "-" to read stdin')
        sp.add_argument("-g", type=int, required=g_required, default=None if g_required else 2,
                        help="number of variables")
        sp.add_argument("--json", action="store_true", help="print a JSON report")
        sp.add_argument("--seed", type=int, default=0)
        sp.set_defaults(func=fn)
        return sp

    add("parse", cmd_parse, "parse and print canonically")
    add("diff", cmd_diff, "k-th directional derivative").add_argument("--order", type=int, default=1)
    add("hessian", cmd_hessian, "Hessian p''(x)[h]")
    add("middle", cmd_middle, "middle matrix of the Hessian").add_argument(
        "--symbolic", action="store_true", help="also print the polynomial blocks Z_ij(x)")
    add("signature", cmd_signature, "minimal SDS signature of the Hessian").add_argument(
        "--sds", action="store_true", help="print a minimal sum/difference of squares")
    add("classify", cmd_classify, "one-negative-square classification")

    sp = add("synthesize", cmd_synthesize, "build p0 + p1 + p2 + phi q + q^T phi + phi f0 phi",
             poly=False)
    sp.add_argument("--u", required=True, help="comma-separated rationals")
    sp.add_argument("--p0", default="0")
    for name in ("p1", "p2", "q", "f0"):
        sp.add_argument(f"--{name}", default="")

    sp = add("identities", cmd_identities, "run the Kronecker identity suite", poly=False,
             g_required=False)
    sp.set_defaults(g=None)
    sp.add_argument("names", nargs="*")
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--gs", type=int, nargs="+", help="variable counts (default 2 3)")
    sp.add_argument("--trials", type=int, default=20)

    sp = add("chsy", cmd_chsy, "CHSY codimension at a generic point", poly=False)
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--k", type=int)
    sp.add_argument("--n", type=int)

    sp = add("positivity", cmd_positivity, "relaxed Hessian positivity at a generic point")
    sp.add_argument("--n", type=int)
    sp.add_argument("--delta", default="1/1000")
    sp.add_argument("--lambda-max", type=float, default=2.0 ** 20)
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument("--zero", action="store_true", help="use X = 0")

    sp = add("check-all", cmd_check_all, "acceptance scoreboard", poly=False, g_required=False)
    sp.add_argument("--criteria", type=int, nargs="+", help="subset of 1..12")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)  # exits with 2 on usage errors
    args._t0 = time.perf_counter()
    try:
        return args.func(args)
    except InternalConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 3
    except (ParseError, ValueError, ZeroDivisionError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
