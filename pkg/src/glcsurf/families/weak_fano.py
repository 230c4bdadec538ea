"""Elliptic ruled surface of invariant 3 blown up at one point of the negative section.

Z contracts C- (self-intersection -3) from W; Y blows up p on C- and X
contracts the strict transform G- (self-intersection -4). -K_X is nef and
big, orthogonal to the image E_X of the new exceptional curve, and the
moduli part M = 2C+_X - E_X/2 has Cartier index growing with the order of p - p0.
"""
from __future__ import annotations

from fractions import Fraction

from ..contract import (
    cartier_index_estimate,
    glc_assemble,
    log_canonical_pullback,
    log_discrepancies,
    make_contraction,
    multiple_of,
    numerical_pullback,
    pullback_coefficients,
    pushforward_intersection,
    semiample_multiple,
)
from ..curvecfg import divided_order
from ..groups import order
from ..lattice import blow_up, mark_curve, ruled_surface, total_transform
from ..positivity import Verdict, ample_certificate, nef_against, very_ample_ruled_blowup
from .config import Family, ScenarioConfig, validate
from .divergence import divergence_witness_wf
from .ledger import Ledger
from .report import ScenarioReport, guarded

H2_RANGE = 20


@guarded
def build_weak_fano(cfg: ScenarioConfig, led: Ledger) -> ScenarioReport:
    cfg = validate(cfg, Family.WEAK_FANO)
    x = cfg.point("p")
    W = ruled_surface(1, 3)
    W = mark_curve(W, "C-", W["C-"], genus=1, degree=3, group=cfg.group)
    Cm, F = W["C-"], W["F"]
    Cp = Cm + 3 * F
    led.check("wf.Cplus2", "(C+)^2 = -3 + 6 = 3", 3, Cp @ Cp)
    led.check("wf.KW", "K_W = -2C- - 3F", True, W.canonical == -2 * Cm - 3 * F)
    tau = make_contraction(W, ["C-"])
    KZ = numerical_pullback(tau, W.canonical)
    led.check("wf.tauKZ", "tau^*K_Z = K_W + C- = -C+", True, KZ == W.canonical + Cm and KZ == -Cp)

    Y = blow_up(W, "E", [("C-", 1)], point=x)
    G = Y.curve("C-")
    E = Y["E"]
    Cm, F = Y["C-"], Y["F"]
    led.check("wf.G2", "(G-)^2 = -4", -4, G.self_intersection)
    pi = make_contraction(Y, ["C-"])
    (b,) = pullback_coefficients(pi, E)
    led.check("wf.pullback_coeff", "pi^*E_X = E + G-/4", Fraction(1, 4), b)
    led.check("wf.EX2", "E_X^2 = -1 + 1/4 = -3/4", Fraction(-3, 4), pushforward_intersection(pi, E, E))
    CXp = total_transform(Cp, Y)
    led.check("wf.CX2", "(C+_X)^2 = 3", 3, pushforward_intersection(pi, CXp, CXp))

    KX = numerical_pullback(pi, Y.canonical)
    m = multiple_of(KX - total_transform(KZ, Y), numerical_pullback(pi, E))
    led.check("wf.m0", "K_X = f^*K_Z + m E_X with m = 0", 0, m)
    led.check("wf.KXEX", "-K_X.E_X = 0", 0, pushforward_intersection(pi, -Y.canonical, E))
    led.check("wf.mKX2", "(-K_X)^2 = 3", 3, KX @ KX)

    L = 5 * Cm + 24 * F - E
    va = very_ample_ruled_blowup(L)
    led.check("wf.L_very_ample", "5C- + 24F - E very ample", True, va.verdict == Verdict.VERY_AMPLE)
    led.check("wf.L_bound", "b >= a*3 + 2 + 1 + 1 = 19", 19, va.witness("ad + 2g + 1 + sum m_i"))
    led.check("wf.L_b", "b = 24", 24, va.witness("b"))
    mK = -KX
    nef_mK = nef_against(mK, [G, Y.curve("E")], va, [(G, Fraction(3, 8)), (Y.curve("E"), Fraction(1, 2))])
    led.check("wf.mKX_nef", "-K_X nef", True, nef_mK.verdict == Verdict.NEF)

    NY = numerical_pullback(pi, CXp - Fraction(1, 2) * E)
    led.check("wf.NY_class", "N_Y = 7/8 C- + 3F - 3/8 E", True, NY == Fraction(7, 8) * Cm + 3 * F - Fraction(3, 8) * E)
    led.check("wf.identity", "8N_Y = 7C- + 24F - 3E = L + 2G-", True, 8 * NY == L + 2 * G.divisor)
    cert = ample_certificate(NY, va, [(G, 2)], [G])
    led.check("wf.N_ample", "N ample via 8N = L + 2G-", True, cert.verdict == Verdict.AMPLE)
    led.check("wf.N2", "N^2 = 45/16", Fraction(45, 16), NY @ NY)

    MY = numerical_pullback(pi, 2 * CXp - Fraction(1, 2) * E)
    M8 = 16 * CXp - 4 * E - G.divisor
    led.check("wf.MY_class", "M' = (16C+ - 4E - G-)/8", True, MY == M8 / 8)
    led.check("wf.M8_integral", "16C+ - 4E - G- integral", True, M8.is_integral)
    nef8 = nef_against(M8, [G, Y.curve("E")], va, [(G, 5), (Y.curve("E"), 4)])
    led.check("wf.M8_nef", "16C+ - 4E - G- nef", True, nef8.verdict == Verdict.NEF)
    nef = nef_against(MY, [G, Y.curve("E")], va, [(G, Fraction(5, 8)), (Y.curve("E"), Fraction(1, 2))])

    pair = glc_assemble(pi, (), MY, nef, cert)
    led.check("wf.vol", "v = N^2 = 45/16", Fraction(45, 16), pair.volume)
    led.check("wf.disc", "a(G-) = 0", 0, log_discrepancies(pi, (), MY)["C-"])
    led.check("wf.KM_is_N", "pi^*(K_X + M) = N_Y", True, log_canonical_pullback(pi, (), MY) == NY)

    mismatches = 0
    for a in range(-H2_RANGE, H2_RANGE + 1):
        for bb in range(-H2_RANGE, H2_RANGE + 1):
            Hc = a * CXp + bb * F - bb * E
            if Hc @ Hc != (a + bb) * (3 * a - bb):
                mismatches += 1
    led.check("wf.H2", "H^2 = (a+b)(3a-b) for |a|, |b| <= 20", 0, mismatches)

    n = order(x)
    sm = semiample_multiple(pi, M8, nef8)
    led.check("wf.semiample", "order of -3(p - p0)", divided_order(n, 3), sm)
    cartier = cartier_index_estimate(pi, E)
    led.check("wf.cartier", "E_X: 4 times the order of 3(p - p0)", 4 * divided_order(n, 3), cartier)

    div = divergence_witness_wf(cfg)
    if div.solution is not None:
        a, bb, c = div.solution
        Hc = a * CXp + bb * F + c * E
        led.check("wf.div_orthogonal", "H.G- = 0", 0, Hc @ G.divisor)
        led.check("wf.div_value", "H^2 = (a+b)(3a-b)", div.value, Hc @ Hc)

    return ScenarioReport(
        config=cfg,
        ledger=led,
        surfaces={"W": W, "Y": Y},
        positivity={"L": va, "-K_X": nef_mK, "N": cert, "8M": nef8, "M_Y": nef},
        pair=pair,
        volume=pair.volume,
        coefficient_set=(Fraction(0), Fraction(1, 8)),
        torsion_order=n,
        semiample_multiple=sm,
        cartier_index=cartier,
        divergence=div,
    )
