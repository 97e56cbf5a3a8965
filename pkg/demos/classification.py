"""Classify a few polynomials whose Hessian has at most one negative square.

Run with ``python demos/classification.py``.
"""
from nchess import classify_one_negative, parse, synthesize, to_string

examples = [
    ("x1^4", 1),
    ("x1*x2*x1", 2),
    ("x1^2 - x2^2", 2),
    ("x1^2 + x2^2", 2),
    ("x1^4 + x2^4", 2),
]

for text, g in examples:
    p = parse(text, g)
    rep = classify_one_negative(p)
    print(f"{text:<14} verdict={rep.verdict.value:<16} case={rep.case} sigma={tuple(rep.sigma)}")
    D = rep.data
    if D is None:
        continue
    print("    u =", [str(c) for c in D.u], " q =", to_string(D.q), " f0 =", to_string(D.f0))
    print("    reconstruction exact:", D.reconstruct() == p)

# going the other way: build p from certificate data.  A PSD form f0 keeps
# one negative square; an indefinite one adds a second.
z = parse("0", 2)
for f0 in ("x1^2 + x2^2", "x1*x2 + x2*x1"):
    p = synthesize(0, z, z, [1, 1], z, parse(f0, 2))
    rep = classify_one_negative(p)
    print(f"\nf0 = {f0}: synthesized p has {len(p.terms)} terms -> {rep.verdict.value}")
