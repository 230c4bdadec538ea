"""
A cubic and r lines
===================

The cubic and r general lines are blown up at every intersection point.
Contracting all of them leaves an ample canonical class once r >= 4, and
the lines become cyclic quotient points with discrepancy 2/(r+1).
"""
from fractions import Fraction

from glcsurf.families import build_general_type, general_type_config

# %%
for r in range(4, 8):
    rep = build_general_type(general_type_config(r, 7))
    ex = rep.extras
    kz2 = rep.claim(f"gt.KZ2.r{r}").computed
    disc = rep.claim(f"gt.disc.r{r}").computed
    print(f"r={r}  K_Z^2={kz2}  a(L)={disc}  a={ex['a']}  b={ex['b']}  q={ex['q']}  vol={rep.volume}")

# %%
# The canonical class of X is pulled back from Z: no extra multiple of E_X.
rep = build_general_type(general_type_config(4, 7))
print("m =", rep.claim("gt.m0").computed)
print("Cartier index estimate:", rep.cartier_index, "=", 4, "*", Fraction(rep.cartier_index, 4))
