"""Plane cubic blown up at eleven points, with the cubic contracted.

K_Y + F = 0 for the strict transform F = 3H - E, so the contraction X has
trivial canonical class, and M = A + 2F with A = 5H - E pushes down to an
ample Weil divisor whose Cartier index is governed by the order of
sum (p0 - p_j) on the cubic.
"""
from __future__ import annotations

from fractions import Fraction

from ..contract import (
    cartier_index_estimate,
    glc_assemble,
    log_canonical_pullback,
    log_discrepancies,
    make_contraction,
    numerical_pullback,
    pushforward_intersection,
    semiample_multiple,
)
from ..groups import INFINITE, AbelianGroup, group_sum, order
from ..lattice import SurfaceLattice, blow_up, mark_curve, projective_plane, volume_nef_big
from ..positivity import Verdict, ample_certificate, ample_points_on_curve, nef_against, very_ample_equal_mult
from .config import ELEVEN, Family, ScenarioConfig, validate
from .divergence import divergence_witness_cy
from .ledger import Ledger
from .report import ScenarioReport, guarded


def cubic_in_plane(group: AbelianGroup, name: str = "C") -> SurfaceLattice:
    P = projective_plane()
    return mark_curve(P, name, 3 * P["H"], genus=1, degree=3, group=group)


def eleven_point_blowup(cfg: ScenarioConfig, shared: str | None = None, shared_count: int = 0) -> SurfaceLattice:
    """Blow up p1..p11 on the cubic C; the first ``shared_count`` also lie on ``shared``."""
    Y = cubic_in_plane(cfg.group)
    if shared:
        Y = mark_curve(Y, shared, 3 * Y["H"], genus=1, degree=3)
    for j, name in enumerate(ELEVEN, start=1):
        inc = [("C", 1)]
        if shared and j <= shared_count:
            inc.append((shared, 1))
        Y = blow_up(Y, f"E{j}", inc, point={"C": cfg.point(name)})
    return Y


def torsion_order(cfg: ScenarioConfig) -> int | float:
    """Order of sum_j (p0 - p_j)."""
    return order(group_sum([-cfg.point(n) for n in ELEVEN], cfg.group))


def expected_semiample(n: int | float) -> int | float:
    if n == INFINITE:
        return INFINITE
    return n // 3 if n % 3 == 0 else n


@guarded
def build_calabi_yau(cfg: ScenarioConfig, led: Ledger) -> ScenarioReport:
    cfg = validate(cfg, Family.CALABI_YAU)
    Y = eleven_point_blowup(cfg)
    H, E = Y["H"], Y.sum_of(Y.exceptional_labels)
    F = Y.curve("C")
    exc = Y.curves(Y.exceptional_labels)

    led.check("cy.F_class", "F = 3H - sum E_j", True, F.divisor == 3 * H - E)
    led.check("cy.F2", "F^2 = 9 - 11 = -2", -2, F.self_intersection)
    led.check("cy.KY", "K_Y = -3H + sum E_j = -F", True, Y.canonical == -F.divisor)

    A = 5 * H - E
    va = very_ample_equal_mult(A, F, 1)
    led.check("cy.A_very_ample", "(5+3)*3 = 24 > 11*2 = 22, 5 >= 2", True, va.verdict == Verdict.VERY_AMPLE)
    led.check("cy.A2", "A^2 = 25 - 11 = 14", 14, A @ A)

    MY = A + 2 * F.divisor
    led.check("cy.MF", "(A + 2F).F = 0", 0, MY @ F.divisor)
    nef = nef_against(MY, [F, *exc], va, [(F, 2)])
    led.check("cy.M_nef", "M_Y = A + 2F nef", True, nef.verdict == Verdict.NEF)

    c = make_contraction(Y, [F])
    led.check("cy.KX_pullback", "K_Y + F = pi^*K_X", True, numerical_pullback(c, Y.canonical) == Y.canonical + F.divisor)
    table = log_discrepancies(c, (), MY)
    led.check("cy.disc", "a(F) = 0", 0, table["C"])

    KM = log_canonical_pullback(c, (), MY)
    led.check("cy.KM_class", "pi^*(K_X + M) = 11H - 3E", True, KM == 11 * H - 3 * E)
    cert = ample_certificate(KM, va, [(F, 2)], [F])
    pair = glc_assemble(c, (), MY, nef, cert)
    led.check("cy.vol", "(11H - 3E)^2 = 121 - 99 = 22", 22, pair.volume)
    led.check("cy.vol_nef_big", "vol of a nef and big class is its square", 22, volume_nef_big(KM, cert))
    led.check("cy.cone_vol", "vol(-K_W) = M^2 = 22", 22, pushforward_intersection(c, MY, MY))

    n = torsion_order(cfg)
    m = semiample_multiple(c, MY, nef)
    led.check("cy.mrule", "m = n if 3 does not divide n, else n/3", expected_semiample(n), m)
    positivity = {"A": va, "M_Y": nef, "K+M": cert}
    if m != INFINITE:
        bpf = ample_points_on_curve((11 * m - 3) * H - (3 * m - 1) * E, F)
        positivity["m(K+M)-F"] = bpf
        led.check("cy.bpf_ample", "(11m-3)H - (3m-1)E ample", True, bpf.verdict.at_least(Verdict.AMPLE))
    cartier = cartier_index_estimate(c, MY)
    led.check("cy.cartier", "Cartier index of M equals m", m, cartier)

    div = divergence_witness_cy(cfg)
    if div.solution is not None:
        d, *ls = div.solution
        N = d * H - sum((l * Y[f"E{j}"] for j, l in enumerate(ls, start=1)), Y.zero())
        led.check("cy.div_disjoint", "N.F = 3d - sum l_j = 0", 0, N @ F.divisor)
        led.check("cy.div_value", "N.(K+M) = 11d - 3 sum l_j = 2d", div.value, N @ KM)

    return ScenarioReport(
        config=cfg,
        ledger=led,
        surfaces={"Y": Y},
        positivity=positivity,
        pair=pair,
        volume=pair.volume,
        coefficient_set=(Fraction(0), Fraction(1)),
        torsion_order=n,
        semiample_multiple=m,
        cartier_index=cartier,
        divergence=div,
    )
