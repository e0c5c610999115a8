"""Exponent arithmetic: from a window density to an exponent for g1.

delta(lambda) = 1/4 + lambda/2 feeds gamma = max(a, (1 - d(1-a))/(2 - d));
at lambda = 1/30 the pipeline lands exactly on 1/2 - 1/390.  The companion
heuristic alpha1 bottoms out near 0.4566, which is why ~0.456 is the
natural floor for this family of bounds.
"""

from fractions import Fraction

from grimmsmooth import (
    alpha1_heuristic,
    alpha1_quartic,
    alpha1_scan,
    exponent_report,
)

# exact rational instantiation
rep = exponent_report(Fraction(1, 30))
print("lambda = 1/30 exactly:")
print(f"  alpha = {rep.alpha} = {float(rep.alpha):.6f}")
print(f"  delta = {rep.delta} = {float(rep.delta):.6f}")
print(f"  gamma = {rep.gamma} = {float(rep.gamma):.9f}")
print(f"  1/2 - 1/390 = {Fraction(1, 2) - Fraction(1, 390)}  "
      f"(equal: {rep.gamma == Fraction(1, 2) - Fraction(1, 390)})")

# the admissible lambda range, tabulated
print("\nlambda grid across (1/33, 1/29):")
print("lambda,alpha,delta,gamma,alpha1")
for i in range(1, 8):
    lam = 1 / 33 + i * (1 / 29 - 1 / 33) / 8
    r = exponent_report(lam)
    print(f"{lam:.6f},{float(r.alpha):.6f},{float(r.delta):.6f},"
          f"{float(r.gamma):.6f},{r.alpha1:.6f}")

# the alpha1 heuristic and its quartic shadow
print("\nalpha1 branches at alpha = 1/3:")
print(f"  exact formula : {alpha1_heuristic(1 / 3):.6f}")
print(f"  quartic approx: {alpha1_quartic(1 / 3):.6f}")

scan = alpha1_scan()
print(f"\ngrid scan: second branch bottoms out at alpha="
      f"{scan.alpha_branch_min:.4f} with value {scan.branch_min:.6f};")
print(f"min over branches {scan.combined_min:.6f} at "
      f"alpha={scan.alpha_combined_min:.4f}")
