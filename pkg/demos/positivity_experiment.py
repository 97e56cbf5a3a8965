"""Relaxed Hessian positivity near the origin for x^2 and x^4.

For a convex polynomial the relaxed Hessian is positive at every point.
For x^4 a small generic point already carries a direction on which the
relaxed Hessian is negative whatever the gradient weight, and the
witness is checked by evaluating the form directly.

Run with ``python demos/positivity_experiment.py``.
"""
from fractions import Fraction

from nchess import parse
from nchess.positivity import epsilon_neighborhood_search, relaxed_form_value

for text in ("x1^2", "x1^4"):
    p = parse(text, 1)
    out = epsilon_neighborhood_search(p, eps=Fraction(1, 2), samples=5, seed=0)
    if not out["found"]:
        print(f"{text}: positive at all {out['samples']} sampled points (n = {out['n']})")
        continue
    ver, X, v = out["verdict"], out["X"], out["v"]
    H = ver.witness_H(p.g, X.n)
    direct = relaxed_form_value(p, X, H, v, lam=10 ** 6, delta=out["delta"])
    print(f"{text}: Negative at sample {out['sample']} with n = {out['n']}, delta = {out['delta']}")
    print(f"    form value {float(ver.value):.4g}, direct re-evaluation {float(direct):.4g}")
