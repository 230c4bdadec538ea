"""Double cover of the eleven-point surface branched along two pencil fibres.

The pencil spanned by the cubic C and a second cubic D through p1..p9 gives
fibres G ~ 3H - E1 - ... - E9. Branching along two of them adds half their
sum to the canonical class; the cover itself is modelled by scaling the form.
"""
from __future__ import annotations

from fractions import Fraction

from ..contract import (
    cartier_index_estimate,
    glc_assemble,
    log_canonical_pullback,
    log_discrepancies,
    make_contraction,
    semiample_multiple,
)
from ..lattice import DivisorClass, mark_curve, scale_cover
from ..positivity import Verdict, ample_certificate, nef_against, pullback_report, very_ample_equal_mult
from .calabi_yau import eleven_point_blowup, expected_semiample, torsion_order
from .config import Family, ScenarioConfig, validate
from .divergence import divergence_witness_cy
from .ledger import Ledger
from .report import ScenarioReport, guarded

HALF = Fraction(1, 2)


@guarded
def build_kodaira_one(cfg: ScenarioConfig, led: Ledger) -> ScenarioReport:
    cfg = validate(cfg, Family.KODAIRA_ONE)
    cover = cfg.param("cover_degree")
    Y = eleven_point_blowup(cfg, shared="D", shared_count=9)
    H = Y["H"]
    G = 3 * H - Y.sum_of(f"E{j}" for j in range(1, 10))
    led.check("k1.G_class", "G ~ 3H - E_1 - ... - E_9", True, Y.curve("D").divisor == G)
    Y = mark_curve(Y, "G1", G, genus=1)
    Y = mark_curve(Y, "G2", DivisorClass(Y, G.coeffs), genus=1)
    F, G1, G2 = Y.curve("C"), Y.curve("G1"), Y.curve("G2")
    H, E, G = Y["H"], Y.sum_of(Y.exceptional_labels), G2.divisor
    led.check("k1.G2", "G^2 = 9 - 9 = 0", 0, G @ G)

    A = 5 * H - E
    va = very_ample_equal_mult(A, F, 1)
    MY = A + 2 * F.divisor
    led.check("k1.MY_class", "M_Y = 11H - 3E", True, MY == 11 * H - 3 * E)
    led.check("k1.MG", "M.G = 33 - 3*9 = 6", 6, MY @ G)
    led.check("k1.M2", "M^2 = 22", 22, MY @ MY)
    nef = nef_against(MY, [F, *Y.curves(Y.exceptional_labels)], va, [(F, 2)])
    led.check("k1.M_nef", "M_Y nef", True, nef.verdict == Verdict.NEF)

    boundary = [(G1, HALF), (G2, HALF)]
    c = make_contraction(Y, [F])
    KBM = log_canonical_pullback(c, boundary, MY)
    cert = ample_certificate(KBM, va, [(F, 2), (G1, HALF), (G2, HALF)], [F], k=1)
    positivity = {"A": va, "M_Y": nef, "K+B+M": cert}

    if cover == 1:
        pair = glc_assemble(c, boundary, MY, nef, cert)
        led.check("k1.vol", "(K_X + (G1+G2)/2 + M)^2 = 2*6 + 22", 2 * 6 + 22, pair.volume)
        surfaces = {"Y": Y}
        coefficients = (Fraction(0), HALF, Fraction(1))
    else:
        V = scale_cover(Y, cover)
        KV = DivisorClass(V, (Y.canonical + HALF * (G1.divisor + G2.divisor)).coeffs)
        MV = DivisorClass(V, MY.coeffs)
        cV = make_contraction(V, ["C"])
        led.check("k1.F2_cover", "pulled-back F^2 = 2 * (-2)", 2 * -2, V.curve("C").self_intersection)
        nefV = pullback_report(nef, V)
        certV = pullback_report(cert, V)
        pair = glc_assemble(cV, (), MV, nefV, certV, canonical=KV)
        led.check("k1.vol", "2 (2*6 + 22) = 68", 2 * (2 * 6 + 22), pair.volume)
        KU = log_canonical_pullback(cV, (), None, canonical=KV)
        led.check("k1.KU2", "K_U^2 = 0", 0, KU @ KU)
        led.check("k1.sigma_linear", "2 K_U.M_U = 24", 24, 2 * (KU @ pair.log_canonical - KU @ KU))
        led.check("k1.sigma_quadratic", "M_U^2 = 2 * 22 = 44", 44, MV @ MV)
        surfaces = {"Y": Y, "V": V}
        positivity.update({"M_V": nefV, "K+M upstairs": certV})
        coefficients = (Fraction(0), Fraction(1))

    led.check("k1.disc", "a(F) = 0", 0, pair.discrepancies["C"])
    led.check("k1.disc_base", "a(F) = 0 before the cover", 0, log_discrepancies(c, boundary, MY)["C"])
    n = torsion_order(cfg)
    m = semiample_multiple(c, MY, nef)
    led.check("k1.mrule", "m = n if 3 does not divide n, else n/3", expected_semiample(n), m)
    cartier = cartier_index_estimate(c, MY)

    return ScenarioReport(
        config=cfg,
        ledger=led,
        surfaces=surfaces,
        positivity=positivity,
        pair=pair,
        volume=pair.volume,
        coefficient_set=coefficients,
        torsion_order=n,
        semiample_multiple=m,
        cartier_index=cartier,
        divergence=divergence_witness_cy(cfg),
        extras={"cover_degree": cover},
    )
