"""Plane cubic C with r lines, blown up at all pairwise intersections.

W is P^2 blown up at the 3r points of C with the lines and at the C(r,2)
points where the lines meet. Contracting C' and the L_j' gives Z with K_Z
ample once r >= 4. Y blows up one more point p on C'; the contraction X of
Y has K_X nef and big, pulled back from K_Z, and carries an ample moduli
part whose Cartier index depends on the order of p - p0.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb

from ..contract import (
    cartier_index_estimate,
    glc_assemble,
    log_canonical_pullback,
    log_discrepancies,
    make_contraction,
    multiple_of,
    numerical_pullback,
    pushforward_intersection,
    semiample_multiple,
)
from ..curvecfg import divided_order
from ..exact import lcd, solve
from ..groups import AbelianGroup, order
from ..lattice import SurfaceLattice, blow_up, mark_curve, projective_plane, total_transform
from ..positivity import Verdict, ample_certificate, nef_against, very_ample_p2_blowup
from .config import Family, ScenarioConfig, validate
from .ledger import Ledger
from .report import ScenarioReport, guarded


def cubic_and_lines(r: int, group: AbelianGroup) -> SurfaceLattice:
    """W: P^2 blown up at C cap L_j (labels E{j}_{l}) and L_j cap L_k (labels F{j}_{k})."""
    S = projective_plane()
    S = mark_curve(S, "C", 3 * S["H"], genus=1, degree=3, group=group)
    for j in range(1, r + 1):
        S = mark_curve(S, f"L{j}", S["H"], genus=0, degree=1)
    for j in range(1, r + 1):
        for l in range(1, 4):
            S = blow_up(S, f"E{j}_{l}", [("C", 1), (f"L{j}", 1)])
    for j in range(1, r + 1):
        for k in range(j + 1, r + 1):
            S = blow_up(S, f"F{j}_{k}", [(f"L{j}", 1), (f"L{k}", 1)])
    return S


def kz_coefficients(r: int) -> tuple[Fraction, Fraction, Fraction]:
    """tau^*K_Z = alpha H + C'/2 + beta sum L_j'."""
    return Fraction(r - 3, 2), Fraction(1, 2), Fraction(r - 3, 2 * (r + 1))


def closed_form_volume(r: int, d: int, a: Fraction, b: Fraction, q: int) -> Fraction:
    """(f^*tau^*K_Z + M_Y)^2 expanded by hand.

    f^*tau^*K_Z is orthogonal to C' and the L_j', and so is A + aC' + b sum L_j'.
    """
    alpha, half, beta = kz_coefficients(r)
    kz2 = Fraction(r * (r - 1) * (r - 3), 2 * (r + 1))
    kz_dot_A = d * (alpha + 3 * half + r * beta) - 3 * r * (half + beta) - comb(r, 2) * 2 * beta
    A2 = d * d - 3 * r - comb(r, 2) - 1
    m_sq = q * q * (A2 + a * (3 * d - 3 * r - 1) + b * r * (d - r - 2))
    return kz2 + 2 * q * kz_dot_A + m_sq


@guarded
def build_general_type(cfg: ScenarioConfig, led: Ledger) -> ScenarioReport:
    cfg = validate(cfg, Family.GENERAL_TYPE)
    r, d = cfg.param("r"), cfg.param("d")
    x = cfg.point("p")
    alpha, half, beta = kz_coefficients(r)
    lines = [f"L{j}" for j in range(1, r + 1)]
    E_labels = [f"E{j}_{l}" for j in range(1, r + 1) for l in range(1, 4)]
    F_labels = [f"F{j}_{k}" for j in range(1, r + 1) for k in range(j + 1, r + 1)]

    W = cubic_and_lines(r, cfg.group)
    H = W["H"]
    Cw = W.curve("C").divisor
    Lw = sum((W.curve(n).divisor for n in lines), W.zero())
    led.check("gt.KW", "K_W = (r-3)/2 H - C'/2 - sum L_j'/2", True, W.canonical == alpha * H - half * Cw - half * Lw)
    led.check("gt.C2_W", "C'^2 = 9 - 3r", 9 - 3 * r, Cw @ Cw)
    led.check(f"gt.L2.r{r}", "(L_j')^2 = 1 - 3 - (r-1) = -1-r", -1 - r, W.curve("L1").self_intersection)
    led.check("gt.L2_all", "every L_j' has the same square", True, len({W.curve(n).self_intersection for n in lines}) == 1)

    tau = make_contraction(W, ["C", *lines])
    tableW = log_discrepancies(tau)
    led.check(f"gt.disc.r{r}", "a(L_j') = 2/(r+1)", Fraction(2, r + 1), tableW["L1"])
    led.check("gt.disc_all", "a(L_j') equal for all j", True, len({tableW[n] for n in lines}) == 1)
    led.check("gt.disc_C", "a(C') = 0", 0, tableW["C"])
    KZ = numerical_pullback(tau, W.canonical)
    led.check("gt.KZ_class", "tau^*K_Z = (r-3)/2 H + C'/2 + (r-3)/(2(r+1)) sum L_j'", True, KZ == alpha * H + half * Cw + beta * Lw)
    led.check(f"gt.KZ2.r{r}", "(tau^*K_Z)^2 = r(r-1)(r-3)/(2(r+1))", Fraction(r * (r - 1) * (r - 3), 2 * (r + 1)), KZ @ KZ)

    dW = 1 + 3 * r + comb(r, 2)
    AW = dW * H - W.sum_of(E_labels + F_labels)
    vaW = very_ample_p2_blowup(AW)
    t = alpha / dW
    effW = [(W.curve(n), t) for n in E_labels + F_labels]
    effW += [(W.curve("C"), half)] + [(W.curve(n), beta) for n in lines]
    certKZ = ample_certificate(KZ, vaW, effW, tau.contracted, k=1)
    led.check("gt.KZ_ample", "K_Z ample for r >= 4", True, certKZ.verdict == Verdict.AMPLE)

    Y = blow_up(W, "Ep", [("C", 1)], point=x)
    H = Y["H"]
    C = Y.curve("C")
    Ls = [Y.curve(n) for n in lines]
    Cd, Ld = C.divisor, sum((L.divisor for L in Ls), Y.zero())
    led.check("gt.C2_Y", "C'^2 = 8 - 3r after blowing up p", 8 - 3 * r, C.self_intersection)
    A = d * H - Y.sum_of(E_labels + F_labels + ["Ep"])
    va = very_ample_p2_blowup(A)
    led.check("gt.A_very_ample", "d >= 1 + 3r + r(r-1)/2 + 1", True, va.verdict == Verdict.VERY_AMPLE)

    a, b = solve([[Cd @ Cd, Ld @ Cd], [Cd @ Ld, Ld @ Ld]], [-(A @ Cd), -(A @ Ld)])
    led.check("gt.a", "a = (3d-3r-1)/(3r-8)", Fraction(3 * d - 3 * r - 1, 3 * r - 8), a)
    led.check("gt.b", "b = (d-r-2)/(r+1)", Fraction(d - r - 2, r + 1), b)
    led.check("gt.ab_positive", "a > 0 and b > 0", True, a > 0 and b > 0)
    q = lcd([a, b])
    MY = q * (A + a * Cd + b * Ld)
    led.check("gt.MY_integral", "q(A + aC' + b sum L_j') integral", True, MY.is_integral)
    led.check("gt.MY_orthogonal", "M_Y.C' = M_Y.L_j' = 0", True, all(MY @ c.divisor == 0 for c in [C, *Ls]))
    curves = Y.curves([n for n in Y.curve_names])
    nef = nef_against(MY, curves, va, [(C, q * a)] + [(L, q * b) for L in Ls])
    led.check("gt.M_nef", "M_Y nef", True, nef.verdict == Verdict.NEF)

    pi = make_contraction(Y, ["C", *lines])
    KX = numerical_pullback(pi, Y.canonical)
    fKZ = total_transform(KZ, Y)
    EX = numerical_pullback(pi, Y["Ep"])
    m = multiple_of(KX - fKZ, EX)
    led.check("gt.m0", "K_X = f^*K_Z + m E_X with m = 0", 0, m)
    led.check("gt.KXEX", "K_X.E_X = 0", 0, pushforward_intersection(pi, Y.canonical, Y["Ep"]))
    table = log_discrepancies(pi, (), MY)
    led.check("gt.disc_Y", "a(L_j') = 2/(r+1) on X", Fraction(2, r + 1), table["L1"])
    led.check("gt.disc_C_Y", "a(C') = 0 on X", 0, table["C"])

    KM = log_canonical_pullback(pi, (), MY)
    eff = [(C, q * a + half), (Y.curve("Ep"), half)]
    eff += [(L, q * b + beta + (alpha if L.name == "L1" else 0)) for L in Ls]
    eff += [(Y.curve(n), alpha) for n in E_labels + F_labels if n.startswith(("E1_", "F1_"))]
    cert = ample_certificate(KM, va, eff, pi.contracted, k=1)
    pair = glc_assemble(pi, (), MY, nef, cert)
    led.check("gt.vol", "v = (K_Z + M)^2 expanded in r, d, q", closed_form_volume(r, d, a, b, q), pair.volume)

    n = order(x)
    sm = semiample_multiple(pi, MY, nef)
    led.check("gt.semiample", "order of -q(1+a)(p - p0)", divided_order(n, int(q * (1 + a))), sm)
    l0 = 3 * r - 8
    cartier = cartier_index_estimate(pi, Y["Ep"])
    led.check("gt.cartier", "E_X: l0 = 3r-8 times the order of (l0-1)(p - p0)", l0 * divided_order(n, l0 - 1), cartier)

    return ScenarioReport(
        config=cfg,
        ledger=led,
        surfaces={"W": W, "Y": Y},
        positivity={"A_W": vaW, "K_Z": certKZ, "A": va, "M_Y": nef, "K+M": cert},
        pair=pair,
        volume=pair.volume,
        coefficient_set=(Fraction(0), Fraction(1)),
        torsion_order=n,
        semiample_multiple=sm,
        cartier_index=cartier,
        divergence=None,
        extras={"r": r, "d": d, "a": a, "b": b, "q": q},
    )
