"""
Eleven points on a plane cubic
==============================

Blow up eleven points of a smooth plane cubic and contract the strict
transform. The result is a surface with trivial canonical class carrying a
moduli part whose semiample index tracks the torsion order of the last point.
"""
from fractions import Fraction

from glcsurf import intersect, make_contraction, numerical_pullback
from glcsurf.families import build_calabi_yau, calabi_yau_config

# %%
# Build the scenario with p11 of order 7 in the cubic's Picard group.
rep = build_calabi_yau(calabi_yau_config(7))
Y = rep.surfaces["Y"]
F = Y.curve("C")
print("F =", F.divisor, " F^2 =", F.self_intersection)

# %%
# The canonical class pulls back to K_Y + F, i.e. K_X is numerically trivial.
tau = make_contraction(Y, ["C"])
print("pullback of K:", numerical_pullback(tau, Y.canonical))

# %%
# The moduli part is orthogonal to F; K + M has volume 22 for every torsion order.
print("volume:", rep.volume)
print("M.F =", intersect(rep.pair.moduli, F.divisor))

# %%
# Torsion order 7 gives a semiample index of 7; order 9 gives 3.
for n in (5, 7, 9, 12, None):
    r = build_calabi_yau(calabi_yau_config(n))
    print(f"n={n!s:>4}  semiample multiple={r.semiample_multiple}  witness={r.divergence.value}")

# %%
# The witness grows with the order: no single multiple works for the family.
ratio = Fraction(rep.divergence.value, 7)
print("witness / order for n = 7:", ratio)
