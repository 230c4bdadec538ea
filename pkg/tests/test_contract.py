import math
from fractions import Fraction

import pytest

from glcsurf import (
    INFINITE,
    AbelianGroup,
    ContractionError,
    PositivityReport,
    Verdict,
    blow_up,
    cartier_index_estimate,
    glc_assemble,
    log_canonical_pullback,
    log_discrepancies,
    make_contraction,
    mark_curve,
    multiple_of,
    numerical_pullback,
    projective_plane,
    pullback_coefficients,
    pushforward_intersection,
    ruled_surface,
    semiample_multiple,
)
from glcsurf.families import build_weak_fano, weak_fano_config
from oracles import wf_cartier_brute


def eleven(n=1, residue=1):
    g = AbelianGroup.cyclic(n)
    S = projective_plane()
    S = mark_curve(S, "C", 3 * S["H"], genus=1, degree=3, group=g)
    for j in range(1, 12):
        p = g.element(torsion=[residue]) if (j == 11 and n > 1) else g.identity
        S = blow_up(S, f"E{j}", [("C", 1)], point=p)
    return S


def wf_surface(n):
    g = AbelianGroup(1) if n is None else AbelianGroup.cyclic(n)
    x = g.element(free=[1]) if n is None else (g.element(torsion=[1]) if n > 1 else g.identity)
    W = ruled_surface(1, 3)
    W = mark_curve(W, "C-", W["C-"], genus=1, degree=3, group=g)
    return blow_up(W, "E", [("C-", 1)], point=x)


class TestMakeContraction:
    def test_elliptic_curve(self):
        c = make_contraction(eleven(), ["C"])
        assert c.names == ["C"]

    def test_negative_section(self):
        c = make_contraction(wf_surface(1), ["C-"])
        assert c.curve("C-").self_intersection == -4

    def test_square_zero_refused(self):
        P = projective_plane()
        S = mark_curve(P, "C", 3 * P["H"], genus=1, degree=3)
        for j in range(9):
            S = blow_up(S, f"E{j}", [("C", 1)])
        with pytest.raises(ContractionError, match="not negative definite"):
            make_contraction(S, ["C"])

    def test_empty(self):
        with pytest.raises(ContractionError):
            make_contraction(eleven(), [])


class TestPullback:
    def test_exceptional_over_section(self):
        Y = wf_surface(1)
        c = make_contraction(Y, ["C-"])
        assert pullback_coefficients(c, Y["E"]) == (Fraction(1, 4),)
        assert pushforward_intersection(c, Y["E"], Y["E"]) == Fraction(-3, 4)

    def test_canonical_of_cy_surface(self):
        S = eleven()
        c = make_contraction(S, ["C"])
        F = S.curve("C").divisor
        # K_Y.F = 2, F^2 = -2: b = 1
        assert numerical_pullback(c, S.canonical) == S.canonical + F

    def test_orthogonal_class_unchanged(self):
        S = eleven()
        c = make_contraction(S, ["C"])
        D = 11 * S["H"] - 3 * S.sum_of(S.exceptional_labels)
        assert numerical_pullback(c, D) == D

    def test_other_surface(self):
        c = make_contraction(eleven(), ["C"])
        with pytest.raises(Exception):
            pullback_coefficients(c, projective_plane()["H"])

    def test_cover_volume_numbers(self):
        rep = build_weak_fano(weak_fano_config(1))
        assert rep.volume == Fraction(45, 16)

    def test_pushforward_of_positive_section(self):
        Y = wf_surface(1)
        c = make_contraction(Y, ["C-"])
        Cp = Y["C-"] + 3 * Y["F"]
        assert pushforward_intersection(c, Cp, Cp) == 3


class TestDiscrepancies:
    @pytest.mark.parametrize("r", [4, 5, 6])
    def test_lines(self, r):
        from glcsurf.families.general_type import cubic_and_lines

        W = cubic_and_lines(r, AbelianGroup())
        t = log_discrepancies(make_contraction(W, ["C", *[f"L{j}" for j in range(1, r + 1)]]))
        assert t["L1"] == Fraction(2, r + 1)
        assert t["C"] == 0
        assert t.classification == "lc"

    def test_minus_one_curve(self):
        S = blow_up(projective_plane(), "E")
        t = log_discrepancies(make_contraction(S, ["E"]))
        assert t["E"] == 2
        assert t.klt

    def test_boundary_out_of_range(self):
        Y = wf_surface(1)
        c = make_contraction(Y, ["C-"])
        with pytest.raises(ContractionError, match="outside"):
            log_discrepancies(c, [(Y.curve("E"), 2)])
        with pytest.raises(ContractionError, match="contracted"):
            log_discrepancies(c, [(Y.curve("C-"), Fraction(1, 2))])

    def test_not_lc(self):
        Y = wf_surface(1)
        c = make_contraction(Y, ["C-"])
        t = log_discrepancies(c, (), -Y["C-"] * 0 + 3 * Y["E"])
        assert t["C-"] < 0 and t.classification == "not lc"


class TestAssemble:
    def test_refuses_not_lc(self):
        Y = wf_surface(1)
        c = make_contraction(Y, ["C-"])
        M = 3 * Y["E"]
        ok = PositivityReport(M, Verdict.NEF, "given")
        with pytest.raises(ContractionError, match="not generalised lc"):
            glc_assemble(c, (), M, ok, ok)

    def test_refuses_missing_nef(self):
        Y = wf_surface(1)
        c = make_contraction(Y, ["C-"])
        M = Y["C-"] + 3 * Y["F"]
        with pytest.raises(ContractionError, match="nef evidence"):
            glc_assemble(c, (), M, PositivityReport(M, Verdict.INCONCLUSIVE, "given"), None)

    def test_refuses_missing_ample(self):
        Y = wf_surface(1)
        c = make_contraction(Y, ["C-"])
        M = Y["C-"] + 3 * Y["F"]
        nef = PositivityReport(M, Verdict.NEF, "given")
        KM = log_canonical_pullback(c, (), M)
        with pytest.raises(ContractionError, match="ampleness"):
            glc_assemble(c, (), M, nef, PositivityReport(KM, Verdict.NEF, "given"))

    def test_weak_fano_pair(self):
        rep = build_weak_fano(weak_fano_config(1))
        assert rep.pair.volume == Fraction(45, 16)
        assert rep.pair.discrepancies["C-"] == 0


class TestSemiample:
    @pytest.mark.parametrize("n", [2, 3, 5, 7])
    def test_cy_rule(self, n):
        S = eleven(n)
        c = make_contraction(S, ["C"])
        # 11H - 3E restricts to 3(p0 - p11); 4H - E - E11 restricted to C is 2(p0 - p11)
        assert semiample_multiple(c, 11 * S["H"] - 3 * S.sum_of(S.exceptional_labels)) == n // math.gcd(3, n)
        D = 4 * S["H"] - S.sum_of(S.exceptional_labels) - S["E11"]
        assert D @ S.curve("C").divisor == 0
        assert semiample_multiple(c, D) == n // math.gcd(2, n)
        with pytest.raises(ContractionError, match="!= 0"):
            semiample_multiple(c, S["H"])

    def test_rational_curves_impose_nothing(self):
        S = blow_up(projective_plane(), "E")
        assert semiample_multiple(make_contraction(S, ["E"]), S["H"]) == 1

    def test_nef_report_must_match(self):
        S = eleven(3)
        c = make_contraction(S, ["C"])
        L = 11 * S["H"] - 3 * S.sum_of(S.exceptional_labels)
        with pytest.raises(ContractionError, match="does not certify"):
            semiample_multiple(c, L, PositivityReport(S["H"], Verdict.NEF, "given"))


class TestCartier:
    @pytest.mark.parametrize("n", range(2, 13))
    def test_weak_fano_brute_force(self, n):
        Y = wf_surface(n)
        c = make_contraction(Y, ["C-"])
        assert cartier_index_estimate(c, Y["E"]) == wf_cartier_brute(n)

    def test_trivial_point(self):
        Y = wf_surface(1)
        c = make_contraction(Y, ["C-"])
        assert cartier_index_estimate(c, Y["E"]) == 4
        assert cartier_index_estimate(c, Y["C-"] + 3 * Y["F"]) == 1

    def test_non_torsion(self):
        Y = wf_surface(None)
        c = make_contraction(Y, ["C-"])
        assert cartier_index_estimate(c, Y["E"]) == INFINITE

    def test_single_curve_coefficients(self):
        Y = wf_surface(1)
        c = make_contraction(Y, ["C-"])
        assert pullback_coefficients(c, Y["E"]) == (Fraction(1, 4),)
        S = eleven()
        assert pullback_coefficients(make_contraction(S, ["C"]), S.canonical) == (1,)


class TestMultipleOf:
    def test_values(self):
        S = eleven()
        assert multiple_of(3 * S["H"], S["H"]) == 3
        assert multiple_of(S.zero(), S["H"]) == 0
        with pytest.raises(ContractionError):
            multiple_of(S["H"] + S["E1"], S["H"])
        with pytest.raises(ContractionError):
            multiple_of(S["H"], S.zero())
