"""
A double cover with a pencil of cubics
======================================

Two extra cubics through nine of the points carry a boundary of coefficient
one half. Passing to the double cover branched along them clears the
fractional coefficients and doubles every intersection number.
"""
from glcsurf.families import build_kodaira_one, kodaira_one_config

# %%
base = build_kodaira_one(kodaira_one_config(1, cover_degree=1))
print("without the cover: volume", base.volume, " coefficients", [str(c) for c in base.coefficient_set])

# %%
cover = build_kodaira_one(kodaira_one_config(1, cover_degree=2))
print("on the double cover: volume", cover.volume, " coefficients", [str(c) for c in cover.coefficient_set])

# %%
# Very ampleness does not survive a finite pullback; ampleness does.
for name, p in cover.positivity.items():
    print(f"{name:>12}: {p.verdict.value}")

# %%
for c in cover.ledger:
    if c.claim_id.startswith(("k1.sigma", "k1.KU2", "k1.vol")):
        print(f"{c.claim_id:<18} {c.computed}")
