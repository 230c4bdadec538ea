"""
An elliptic ruled surface of invariant three
============================================

Blow up one point of the negative section and contract its strict transform,
a curve of self-intersection -4. The anticanonical class stays nef and big,
and the moduli part has a Cartier index proportional to the order of the point.
"""
from glcsurf.families import build_weak_fano, divergence_witness_wf, weak_fano_config

# %%
rep = build_weak_fano(weak_fano_config(1))
Y = rep.surfaces["Y"]
print("G^2 =", Y.curve("C-").self_intersection)
print("N^2 =", rep.positivity["N"].witness("L^2"))

# %%
# 5C- + 24F - E is very ample with room to spare: b = 24 against a bound of 19.
va = rep.positivity["L"]
print(va.criterion)
for w in va.witnesses:
    print(f"  {w.label}: {w.value}")

# %%
for n in (1, 2, 3, 6, 9, 12, None):
    r = build_weak_fano(weak_fano_config(n))
    w = divergence_witness_wf(weak_fano_config(n))
    print(f"n={n!s:>4}  Cartier index={r.cartier_index}  witness={w.value}  solution={w.solution}")
