"""Walk through the Hessian machinery for p = x^4 in one variable.

Run with ``python demos/x4_walkthrough.py``.
"""
from nchess import (build_middle_matrix, exact_inertia, hessian, kth_derivative,
                    min_signature_hessian, parse, sds_from_hessian, to_string)

p = parse("x1^4", 1)
print("p            =", to_string(p))
print("p'(x)[h]     =", to_string(kth_derivative(p, 1)))
print("p''(x)[h]    =", to_string(hessian(p)))

# the middle matrix is a polynomial matrix sandwiched by the border vector
Z = build_middle_matrix(p)
print("\nmiddle matrix scalar part (size %d):" % Z.size)
for row in Z.scalar:
    print("   ", [str(c) for c in row])

inertia, _ = exact_inertia(Z.scalar)
print("inertia of the scalar part (+, -, 0):", tuple(inertia))

sig = min_signature_hessian(p)
print("signature of the Hessian: sigma_+ = %d, sigma_- = %d" % (sig.plus, sig.minus))
print("degree bound d <= 2 sigma_- + 2 is tight here:", p.degree == 2 * sig.minus + 2)

sds = sds_from_hessian(p)
print("\nHessian as a signed sum of squares:")
for w, f in sds.plus_terms:
    print("   +", w, "*", to_string(f.T * f))
for w, f in sds.minus_terms:
    print("   -", w, "*", to_string(f.T * f))
print("expands back to p'':", sds.expand(p.g) == hessian(p))
