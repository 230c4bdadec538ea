from fractions import Fraction

import pytest

from glcsurf import (
    AbelianGroup,
    LatticeError,
    blow_up,
    from_gram,
    intersect,
    is_negative_definite,
    mark_curve,
    projective_plane,
    ruled_surface,
    scale_cover,
    total_transform,
    volume_nef_big,
)
from glcsurf.families import build_calabi_yau, build_kodaira_one, build_weak_fano, calabi_yau_config, kodaira_one_config, weak_fano_config
from glcsurf.families.general_type import cubic_and_lines
from glcsurf.lattice import Kind
from glcsurf.positivity import Verdict, nef_against, PositivityReport
from oracles import leading_minors_alternate


def plane_with_cubic():
    P = projective_plane()
    return mark_curve(P, "C", 3 * P["H"], genus=1, degree=3, group=AbelianGroup.cyclic(3))


def eleven():
    S = plane_with_cubic()
    for j in range(1, 12):
        S = blow_up(S, f"E{j}", [("C", 1)])
    return S


class TestBaseSurfaces:
    def test_projective_plane(self):
        P = projective_plane()
        assert P.labels == ["H"]
        assert P.gram == ((1,),)
        assert P.canonical == -3 * P["H"]
        assert P.curve_names == []

    def test_plane_canonical_numbers(self):
        P = projective_plane()
        assert intersect(P.canonical, P.canonical) == 9
        assert intersect(P["H"], P.canonical) == -3

    def test_ruled_elliptic_invariant_three(self):
        W = ruled_surface(1, 3)
        assert W.canonical == -2 * W["C-"] - 3 * W["F"]
        Cp = W["C-"] + 3 * W["F"]
        assert intersect(Cp, Cp) == 3
        # adjunction on the section: (K + C-).C- = 2g - 2 = 0
        assert intersect(W.canonical + W["C-"], W["C-"]) == 0

    def test_quadric(self):
        Q = ruled_surface(0, 0)
        assert Q.canonical == -2 * Q["C-"] - 2 * Q["F"]
        assert intersect(Q.canonical, Q.canonical) == 8

    def test_ruled_kinds(self):
        W = ruled_surface(2, 1)
        assert W.labels_of_kind(Kind.SECTION) == ["C-"]
        assert W.labels_of_kind(Kind.FIBER) == ["F"]

    def test_ruled_rejects_negative(self):
        with pytest.raises(LatticeError):
            ruled_surface(-1, 0)


class TestBlowUp:
    def test_one_point_on_cubic(self):
        S = blow_up(plane_with_cubic(), "E", [("C", 1)])
        C = S.curve("C")
        assert C.divisor == 3 * S["H"] - S["E"]
        assert C.self_intersection == 8

    def test_eleven_points(self):
        S = eleven()
        F = S.curve("C")
        assert F.divisor == 3 * S["H"] - S.sum_of(S.exceptional_labels)
        assert F.self_intersection == -2
        assert F.expected_self_intersection() == -2

    def test_ruled_point_on_section(self):
        W = ruled_surface(1, 3)
        W = mark_curve(W, "C-", W["C-"], genus=1)
        Y = blow_up(W, "E", [("C-", 1)])
        assert Y.curve("C-").divisor == Y["C-"] - Y["E"]
        assert Y.curve("C-").self_intersection == -4

    def test_canonical_gains_exceptional(self):
        S = eleven()
        assert S.canonical == -3 * S["H"] + S.sum_of(S.exceptional_labels)
        assert intersect(S.canonical, S.canonical) == 9 - 11

    def test_new_label_orthogonal(self):
        S = blow_up(projective_plane(), "E")
        assert intersect(S["E"], S["E"]) == -1
        assert intersect(S["E"], S["H"]) == 0

    def test_point_off_curve_keeps_class(self):
        S = blow_up(plane_with_cubic(), "E", [("C", 0)])
        assert S.curve("C").divisor == 3 * S["H"]

    def test_exceptional_curve_is_marked(self):
        S = blow_up(projective_plane(), "E")
        assert S.curve("E").divisor == S["E"]
        assert S.curve("E").genus == 0

    def test_restriction_records_point(self):
        g = AbelianGroup.cyclic(5)
        P = projective_plane()
        S = mark_curve(P, "C", 3 * P["H"], genus=1, group=g)
        S = blow_up(S, "E", [("C", 1)], point=g.element(torsion=[2]))
        assert S.curve("C").restriction.points == {"E": g.element(torsion=[2])}

    def test_duplicate_label(self):
        S = blow_up(projective_plane(), "E")
        with pytest.raises(LatticeError, match="duplicate"):
            blow_up(S, "E")
        with pytest.raises(LatticeError, match="duplicate"):
            blow_up(S, "H")

    def test_negative_multiplicity(self):
        with pytest.raises(LatticeError, match="nonnegative"):
            blow_up(plane_with_cubic(), "E", [("C", -1)])

    def test_unknown_curve(self):
        with pytest.raises(LatticeError, match="no marked curve"):
            blow_up(projective_plane(), "E", [("nope", 1)])

    def test_infinitely_near_rejected(self):
        S = blow_up(projective_plane(), "E")
        with pytest.raises(LatticeError, match="infinitely near"):
            blow_up(S, "E2", [("E", 1)])

    def test_singular_point_of_restricted_curve(self):
        with pytest.raises(LatticeError, match="smooth point"):
            blow_up(plane_with_cubic(), "E", [("C", 2)])

    def test_cover_cannot_be_blown_up(self):
        with pytest.raises(LatticeError, match="cover"):
            blow_up(scale_cover(projective_plane(), 2), "E")


class TestIntersect:
    def test_cy_numbers(self):
        S = eleven()
        H, E = S["H"], S.sum_of(S.exceptional_labels)
        assert intersect(11 * H - 3 * E, 11 * H - 3 * E) == 22
        assert intersect(11 * H - 3 * E, 3 * H - E) == 0
        assert intersect(5 * H - E, 5 * H - E) == 14

    def test_matmul_operator(self):
        S = eleven()
        assert S["H"] @ S["H"] == 1

    def test_mismatched_surfaces(self):
        with pytest.raises(LatticeError):
            intersect(projective_plane()["H"], ruled_surface(0, 1)["F"])

    def test_fractional_gram(self):
        S = from_gram(["x"], [[Fraction(-3, 4)]])
        assert intersect(2 * S["x"], S["x"]) == Fraction(-3, 2)

    def test_asymmetric_gram_rejected(self):
        with pytest.raises(LatticeError):
            from_gram(["x", "y"], [[0, 1], [2, 0]])


class TestDivisorClass:
    def test_arithmetic_and_coefficients(self):
        S = eleven()
        D = Fraction(1, 2) * S["H"] - S["E1"]
        assert D["H"] == Fraction(1, 2) and D["E2"] == 0
        assert D.denominator == 2 and not D.is_integral
        assert (2 * D).is_integral
        assert (D - D).is_zero
        assert D / 2 == Fraction(1, 4) * S["H"] - Fraction(1, 2) * S["E1"]

    def test_divisor_constructor(self):
        S = eleven()
        assert S.divisor({"H": 3}, E1=-1) == 3 * S["H"] - S["E1"]
        with pytest.raises(LatticeError):
            S.divisor(Q=1)

    def test_floats_refused(self):
        S = projective_plane()
        with pytest.raises(TypeError):
            0.5 * S["H"]

    def test_total_transform(self):
        P = projective_plane()
        S = blow_up(P, "E")
        T = total_transform(3 * P["H"], S)
        assert T == 3 * S["H"]
        with pytest.raises(LatticeError):
            total_transform(ruled_surface(0, 0)["F"], S)


class TestVolume:
    def _nef(self, D):
        return PositivityReport(D, Verdict.NEF, "test")

    def test_cy_family(self):
        rep = build_calabi_yau(calabi_yau_config(1))
        KM = rep.pair.log_canonical
        assert volume_nef_big(KM, rep.positivity["K+M"]) == 22

    def test_kodaira_one_family(self):
        rep = build_kodaira_one(kodaira_one_config())
        KM = rep.pair.log_canonical
        assert volume_nef_big(KM, rep.pair.ample_report) == 68

    def test_weak_fano_family(self):
        rep = build_weak_fano(weak_fano_config(1))
        assert volume_nef_big(rep.pair.log_canonical, rep.pair.ample_report) == Fraction(45, 16)

    def test_requires_evidence(self):
        H = projective_plane()["H"]
        with pytest.raises(LatticeError):
            volume_nef_big(H, None)
        with pytest.raises(LatticeError):
            volume_nef_big(H, PositivityReport(H, Verdict.INCONCLUSIVE, "test"))
        with pytest.raises(LatticeError):
            volume_nef_big(H, self._nef(projective_plane()["H"] * 2 - 3 * projective_plane()["H"]))

    def test_requires_big(self):
        F = ruled_surface(0, 0)["F"]
        with pytest.raises(LatticeError, match="not big"):
            volume_nef_big(F, self._nef(F))

    def test_evidence_for_a_multiple(self):
        H = projective_plane()["H"]
        assert volume_nef_big(H, self._nef(3 * H)) == 1


class TestCover:
    def test_identity_cover(self):
        S = eleven()
        assert scale_cover(S, 1).gram == S.gram

    def test_plane_triple_cover(self):
        V = scale_cover(projective_plane(), 3)
        assert V["H"] @ V["H"] == 3
        assert V.cover_degree == 3

    def test_zero_degree(self):
        with pytest.raises(LatticeError):
            scale_cover(projective_plane(), 0)

    def test_scaling_all_pairs(self):
        S = eleven()
        V = scale_cover(S, 2)
        for a in S.labels:
            for b in S.labels:
                assert V[a] @ V[b] == 2 * (S[a] @ S[b])

    def test_double_cover_volume(self):
        rep = build_kodaira_one(kodaira_one_config(1, cover_degree=2))
        assert rep.volume == 2 * (12 + 22)


class TestNegativeDefinite:
    def test_single_curve(self):
        assert is_negative_definite([eleven().curve("C").divisor])

    def test_repeated_class(self):
        S = blow_up(projective_plane(), "E")
        assert not is_negative_definite([S["E"], S["E"]])

    def test_empty(self):
        with pytest.raises(LatticeError):
            is_negative_definite([])

    def test_cubic_and_four_lines(self):
        r = 4
        W = cubic_and_lines(r, AbelianGroup())
        classes = [W.curve(n).divisor for n in ["C"] + [f"L{j}" for j in range(1, r + 1)]]
        G = [[a @ b for b in classes] for a in classes]
        assert G[0][0] == 9 - 3 * r and G[1][1] == -1 - r
        assert all(G[0][j] == 0 for j in range(1, r + 1))
        assert is_negative_definite(classes)
        assert leading_minors_alternate(G)

    def test_matrix_with_cubic_line_product_three(self):
        # C'.L_j' = 3 makes the 5x5 matrix indefinite; the real lattice has 0.
        r = 4
        G = [[Fraction(0)] * (r + 1) for _ in range(r + 1)]
        G[0][0] = Fraction(9 - 3 * r)
        for j in range(1, r + 1):
            G[j][j] = Fraction(-1 - r)
            G[0][j] = G[j][0] = Fraction(3)
        S = from_gram(["C"] + [f"L{j}" for j in range(1, r + 1)], G)
        assert is_negative_definite([S[n] for n in S.labels]) is False
        assert leading_minors_alternate(G) is False


@pytest.mark.parametrize("r", range(2, 8))
def test_KW_closed_form(r):
    W = cubic_and_lines(r, AbelianGroup())
    C = W.curve("C").divisor
    L = sum((W.curve(f"L{j}").divisor for j in range(1, r + 1)), W.zero())
    assert W.canonical == Fraction(r - 3, 2) * W["H"] - Fraction(1, 2) * C - Fraction(1, 2) * L


def test_exact_values_never_float():
    S = eleven()
    v = intersect(Fraction(1, 3) * S["H"], S["H"])
    assert isinstance(v, Fraction) and v == Fraction(1, 3)


def test_nef_against_used_for_volume_evidence():
    S = eleven()
    F = S.curve("C")
    A = 5 * S["H"] - S.sum_of(S.exceptional_labels)
    from glcsurf import very_ample_equal_mult

    rep = nef_against(A + 2 * F.divisor, [F], very_ample_equal_mult(A, F, 1), [(F, 2)])
    assert volume_nef_big(A + 2 * F.divisor, rep) == 22
