from fractions import Fraction

import pytest

from glcsurf import INFINITE, AbelianGroup, Verdict
from glcsurf.families import (
    BUILDERS,
    ConfigError,
    ScenarioAborted,
    build,
    build_calabi_yau,
    build_general_type,
    build_kodaira_one,
    build_weak_fano,
    calabi_yau_config,
    divergence_witness_cy,
    divergence_witness_wf,
    general_type_config,
    kodaira_one_config,
    weak_fano_config,
)
from glcsurf.families.config import ELEVEN, Family, ScenarioConfig, general_type_min_d, validate
from glcsurf.families.ledger import Ledger, exact
from oracles import cy_witness_dp, cy_witness_trivial_group, gt_cramer, gt_volume_by_hand, wf_witness_brute

ALL_FAMILIES = [
    calabi_yau_config(7),
    kodaira_one_config(3, 1),
    kodaira_one_config(3, 2),
    general_type_config(4, 7),
    weak_fano_config(9),
]


@pytest.mark.parametrize("cfg", ALL_FAMILIES, ids=lambda c: c.label)
def test_every_claim_passes(cfg):
    rep = build(cfg)
    assert rep.passed, [f"{c.claim_id}: {c.expected} != {c.computed}" for c in rep.failures]
    assert len(rep.ledger) >= 10


@pytest.mark.parametrize("cfg", ALL_FAMILIES, ids=lambda c: c.label)
def test_lc_but_not_klt(cfg):
    table = build(cfg).pair.discrepancies
    assert table.lc and not table.klt
    assert min(a for _, a in table.entries) == 0


def test_builders_cover_all_families():
    assert set(BUILDERS) == set(Family)


class TestConfig:
    def test_defaults_filled(self):
        assert validate(kodaira_one_config(1)).param("cover_degree") == 2
        cfg = validate(general_type_config(5))
        assert cfg.param("d") == general_type_min_d(5) == 2 * (15 + 10 + 2)

    def test_small_r(self):
        with pytest.raises(ConfigError) as exc:
            build(general_type_config(3))
        assert exc.value.field == "parameters.r"
        assert "r >= 4 required" in str(exc.value) and "r = 3" in str(exc.value)

    def test_d_below_bound(self):
        with pytest.raises(ConfigError, match="parameters.d"):
            build(general_type_config(4, d=general_type_min_d(4) - 1))

    def test_cover_degree(self):
        with pytest.raises(ConfigError, match="cover_degree"):
            build(kodaira_one_config(1, cover_degree=3))

    def test_wrong_family(self):
        with pytest.raises(ConfigError, match="family"):
            build_weak_fano(calabi_yau_config(1))

    def test_missing_points(self):
        g = AbelianGroup.cyclic(3)
        pts = {n: g.identity for n in ELEVEN[:-1]}
        with pytest.raises(ConfigError, match="points"):
            validate(ScenarioConfig(Family.CALABI_YAU, g, pts))

    def test_foreign_point(self):
        g = AbelianGroup.cyclic(3)
        pts = {n: g.identity for n in ELEVEN}
        pts["p4"] = AbelianGroup.cyclic(5).identity
        with pytest.raises(ConfigError, match="points.p4"):
            validate(ScenarioConfig(Family.CALABI_YAU, g, pts))

    def test_unknown_and_non_integer_parameters(self):
        cfg = weak_fano_config(1)
        with pytest.raises(ConfigError, match="unknown parameters"):
            validate(ScenarioConfig(cfg.family, cfg.group, cfg.points, {"q": 1}))
        cfg = general_type_config(4)
        with pytest.raises(ConfigError, match="integer"):
            validate(ScenarioConfig(cfg.family, cfg.group, cfg.points, {"r": Fraction(9, 2)}))

    def test_label(self):
        assert calabi_yau_config(7).label == "calabi_yau[Z/7]"


class TestLedger:
    def test_exact_values_only(self):
        assert exact(True) == 1 and exact(INFINITE) == INFINITE
        with pytest.raises(TypeError):
            exact(0.5)

    def test_check_returns_computed(self):
        led = Ledger()
        assert led.check("x", "x = 1", 1, Fraction(1)) == 1
        led.check("y", "y = 2", 2, 3)
        assert len(led) == 2 and not led.passed
        assert [c.claim_id for c in led.failures] == ["y"]
        assert led["x"].passed


class TestCalabiYau:
    def test_two_torsion_points(self):
        g = AbelianGroup(0, (4, 3))
        pts = {n: g.identity for n in ELEVEN}
        pts["p10"] = g.element(torsion=[1, 0])
        pts["p11"] = g.element(torsion=[0, 1])
        rep = build_calabi_yau(ScenarioConfig(Family.CALABI_YAU, g, pts))
        assert rep.torsion_order == 12
        assert rep.volume == 22

    def test_free_point(self):
        rep = build_calabi_yau(calabi_yau_config(None))
        assert rep.semiample_multiple == INFINITE
        assert rep.cartier_index == INFINITE
        assert rep.divergence.status == "infinite"


class TestKodairaOne:
    def test_no_cover(self):
        rep = build_kodaira_one(kodaira_one_config(1, cover_degree=1))
        assert rep.volume == 34
        assert rep.coefficient_set == (0, Fraction(1, 2), 1)

    def test_cover_doubles(self):
        one = build_kodaira_one(kodaira_one_config(5, cover_degree=1))
        two = build_kodaira_one(kodaira_one_config(5, cover_degree=2))
        assert two.volume == 2 * one.volume == 68
        assert two.coefficient_set == (0, 1)


class TestGeneralType:
    @pytest.mark.parametrize("r", [4, 5, 6, 7])
    def test_ab_against_hand_cramer(self, r):
        d = general_type_min_d(r)
        rep = build_general_type(general_type_config(r, 1))
        a, b = gt_cramer(r, d)
        assert (rep.extras["a"], rep.extras["b"]) == (a, b)
        assert a > 0 and b > 0

    @pytest.mark.parametrize("r, d", [(4, None), (4, 44), (5, None), (6, None), (4, 60)])
    def test_volume_against_hand_expansion(self, r, d):
        rep = build_general_type(general_type_config(r, 7, d))
        d = rep.extras["d"]
        v, (a, b, q) = gt_volume_by_hand(r, d)
        assert rep.extras["q"] == q
        assert rep.volume == v

    @pytest.mark.parametrize("r, d", [(4, 40), (5, 60), (6, 80)])
    def test_ab_positive_over_a_range(self, r, d):
        for dd in range(general_type_min_d(r), d + 1):
            a, b = gt_cramer(r, dd)
            assert a > 0 and b > 0

    def test_no_divergence_witness(self):
        assert build_general_type(general_type_config(4, 7)).divergence is None


class TestWeakFano:
    def test_coefficients(self):
        rep = build_weak_fano(weak_fano_config(3))
        assert rep.coefficient_set == (0, Fraction(1, 8))
        assert rep.positivity["L"].verdict == Verdict.VERY_AMPLE


class TestDivergence:
    def test_cy_trivial_group(self):
        w = divergence_witness_cy(calabi_yau_config(1))
        assert w.value == cy_witness_trivial_group() == 8
        d, *ls = w.solution
        assert 3 * d == sum(ls) and all(l >= 1 for l in ls)

    def test_cy_monotone_against_dp(self):
        values = []
        for n in range(1, 31):
            w = divergence_witness_cy(calabi_yau_config(n))
            assert w.status == "found"
            assert w.value == cy_witness_dp([0] * 10 + [(-1) % n], n)
            values.append(w.value)
        assert values == sorted(values)

    def test_cy_solution_is_orthogonal(self):
        n = 11
        rep = build_calabi_yau(calabi_yau_config(n))
        d, *ls = rep.divergence.solution
        # only p11 is nontrivial, so orthogonality to the cubic forces n | l11
        assert ls[-1] % n == 0

    @pytest.mark.parametrize("n", range(1, 13))
    def test_wf_against_brute_force(self, n):
        w = divergence_witness_wf(weak_fano_config(n))
        assert w.value == wf_witness_brute(n, 12 * n + 12)
        a, b, c = w.solution
        assert (a + b) * (3 * a - b) == w.value and c == -b

    def test_wf_trivial_point(self):
        assert divergence_witness_wf(weak_fano_config(1)).value == 3

    def test_wf_lower_bound(self):
        # every admissible H has b >= n/gcd(3, n) and so H^2 >= b + 2 > 4b/3
        for n in range(1, 25):
            w = divergence_witness_wf(weak_fano_config(n))
            b_min = n // (3 if n % 3 == 0 else 1)
            assert w.value >= Fraction(4 * b_min, 3)

    def test_free(self):
        assert divergence_witness_wf(weak_fano_config(None)).status == "infinite"
        assert divergence_witness_cy(calabi_yau_config(None)).value == INFINITE

    def test_exceeds_bound(self):
        w = divergence_witness_cy(calabi_yau_config(13), max_d=4)
        assert w.status == "exceeds_bound" and not w.exhaustive
        assert w.lower_bound == 10
        assert cy_witness_dp([0] * 10 + [12], 13) >= w.lower_bound
        w = divergence_witness_wf(weak_fano_config(7), max_ab=3)
        assert w.status == "exceeds_bound"
        assert wf_witness_brute(7, 100) >= w.lower_bound

    def test_wrong_family(self):
        with pytest.raises(ValueError):
            divergence_witness_cy(weak_fano_config(1))


def test_aborted_build_keeps_partial_ledger(monkeypatch):
    import glcsurf.families.weak_fano as wf

    def broken(*args, **kwargs):
        raise ArithmeticError("boom")

    monkeypatch.setattr(wf, "very_ample_ruled_blowup", broken)
    with pytest.raises(ScenarioAborted) as exc:
        build_weak_fano(weak_fano_config(1))
    assert len(exc.value.ledger) > 0 and exc.value.first_failure is None
    assert isinstance(exc.value.cause, ArithmeticError)
