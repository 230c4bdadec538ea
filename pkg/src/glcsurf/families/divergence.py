"""Quantitative witnesses that a family of moduli parts is unbounded.

Calabi-Yau family: a curve N = dH - sum l_j E_j disjoint from the contracted
cubic needs 3d = sum l_j and sum l_j (p0 - p_j) = 0; then N.(K+M) = 2d.
Weak Fano family: H = aC+ + bF - bE is orthogonal to the contracted curve
only when 3b(p0 - p) = 0, and H^2 = (a+b)(3a-b).
Both minima grow with the torsion order of the points.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from ..groups import INFINITE, GroupElement, order
from .config import Family, ScenarioConfig, validate


@dataclass(frozen=True)
class DivergenceWitness:
    """Minimum of the witness functional.

    ``status`` is "found" (value is the exact minimum), "infinite" (provably no
    solution) or "exceeds_bound" (none within ``bound``; ``lower_bound`` holds).
    """

    value: Fraction | float | None
    solution: tuple[int, ...] | None
    bound: int
    status: str
    lower_bound: Fraction | float

    @property
    def exhaustive(self) -> bool:
        return self.status != "exceeds_bound"


def _free_part_obstructs(xs: list[GroupElement]) -> bool:
    """True when sum l_j x_j = 0 with all l_j >= 1 is impossible for sign reasons."""
    if not xs or not xs[0].group.free_rank:
        return False
    for i in range(xs[0].group.free_rank):
        coords = [x.free[i] for x in xs]
        if (all(c >= 0 for c in coords) or all(c <= 0 for c in coords)) and any(coords):
            return True
    return False


def divergence_witness_cy(cfg: ScenarioConfig, max_d: int | None = None) -> DivergenceWitness:
    """Minimise 2d subject to 3d = sum l_j, l_j >= 1, sum l_j (p0 - p_j) = 0.

    Breadth-first search over (partial sum, excess mod 3): writing l_j = 1 + k_j,
    the target is sum k_j x_j = -sum x_j with K = sum k_j = 1 mod 3, and the
    first hit has the least K and so the least d = (11 + K)/3.
    """
    cfg = validate(cfg)
    if cfg.family not in (Family.CALABI_YAU, Family.KODAIRA_ONE):
        raise ValueError("divergence_witness_cy needs an eleven-point configuration")
    names = [f"p{j}" for j in range(1, 12)]
    xs = [-cfg.point(n) for n in names]
    if max_d is None:
        max_d = 40 * max(cfg.group.torsion_orders or (1,))
    if _free_part_obstructs(xs):
        return DivergenceWitness(INFINITE, None, max_d, "infinite", INFINITE)

    group = cfg.group
    target = -sum(xs, group.identity)
    steps: dict[GroupElement, int] = {}
    for j, x in enumerate(xs):
        steps.setdefault(x, j)
    max_k = 3 * max_d - 11
    start = (group.identity, 0)
    parent = {start: None}
    queue = deque([(start, 0)])
    hit = None
    while queue:
        state, depth = queue.popleft()
        if state == (target, 1):
            hit = state
            break
        if depth == max_k:
            continue
        for x, j in steps.items():
            nxt = (state[0] + x, (state[1] + 1) % 3)
            if nxt not in parent:
                parent[nxt] = (state, j)
                queue.append((nxt, depth + 1))
    if hit is None:
        return DivergenceWitness(None, None, max_d, "exceeds_bound", Fraction(2 * (max_d + 1)))

    ls = [1] * 11
    state = hit
    while parent[state] is not None:
        state, j = parent[state]
        ls[j] += 1
    d = sum(ls) // 3
    return DivergenceWitness(Fraction(2 * d), (d, *ls), max_d, "found", Fraction(2 * d))


def divergence_witness_wf(cfg: ScenarioConfig, max_ab: int | None = None) -> DivergenceWitness:
    """Minimise (a+b)(3a-b) over b >= 1, 3a+b > 0, a+b > 0, 3a-b > 0, 3b(p0-p) = 0."""
    cfg = validate(cfg, Family.WEAK_FANO)
    n = order(cfg.point("p"))
    if max_ab is None:
        max_ab = 12 * (n if n != INFINITE else 1)
    if n == INFINITE:
        return DivergenceWitness(INFINITE, None, max_ab, "infinite", INFINITE)
    best = None
    for b in range(1, max_ab + 1):
        if (3 * b) % n:
            continue
        for a in range(-max_ab, max_ab + 1):
            if 3 * a + b > 0 and a + b > 0 and 3 * a - b > 0:
                v = (a + b) * (3 * a - b)
                if best is None or v < best[0]:
                    best = (v, a, b)
    if best is None:
        # any solution has b > max_ab, hence a + b > 4b/3 and 3a - b >= 1
        return DivergenceWitness(None, None, max_ab, "exceeds_bound", Fraction(4 * (max_ab + 1), 3))
    v, a, b = best
    return DivergenceWitness(Fraction(v), (a, b, -b), max_ab, "found", Fraction(v))
