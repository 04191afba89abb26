"""
検証モジュール（差分オラクル・定数性スイープ・定理スイート）のテスト
"""

import dataclasses
import json
import logging
import math
import time

import numpy as np
import pytest

from core.families import constant_H_profile, helicoidal_chart, parabolic_i_sphere, polynomial_profile
from core.surface import first_form, second_form
from core.exporter import report_to_json
from core.verify import (
    CLAIMS,
    ClaimContext,
    constancy_sweep,
    fd_curve_oracle,
    fd_forms_oracle,
    fd_stencil_margin,
    list_claims,
    run_theorem_suite,
)
from utils.config import default_tolerances
from utils.error_handler import OutOfDomainError, error_logger
from utils.models import ClaimStatus, CurvatureQuantity, DerivativeSource, GridSpec, HelicoidalParams

DOCUMENTED = {"H.factor2", "Thm4.2.ii", "Thm2.1.i", "Thm2.2.iii"}
ALL_IDS = [spec.id for spec in CLAIMS]


@pytest.mark.unit
class TestFiniteDifferenceOracle:
    """差分オラクルのテスト"""

    def test_matches_analytic_forms(self, constant_H_chart):
        for u, v in [(0.8, -1.0), (1.6, 0.4), (2.7, 2.5)]:
            g_fd, h_fd = fd_forms_oracle(constant_H_chart, u, v)
            g, hf = first_form(constant_H_chart, u, v), second_form(constant_H_chart, u, v)
            np.testing.assert_allclose(g_fd.as_tuple(), g.as_tuple(), atol=1e-6, rtol=0)
            np.testing.assert_allclose(h_fd.as_tuple(), hf.as_tuple(), atol=1e-6, rtol=0)

    def test_quadratic_chart(self):
        """放物i-球面では二階差分も誤差なし"""
        g_fd, h_fd = fd_forms_oracle(parabolic_i_sphere(2.0), 0.1, -0.3)
        np.testing.assert_allclose(g_fd.as_tuple(), (1.0, 0.0, 1.0), atol=1e-9)
        np.testing.assert_allclose(h_fd.as_tuple(), (2.0, 0.0, 2.0), atol=1e-6)

    def test_stencil_must_fit_in_domain(self, flat_chart):
        """余白 100·step より端に近い点は拒否"""
        margin = fd_stencil_margin(1e-5)
        assert margin == pytest.approx(1e-3)
        with pytest.raises(OutOfDomainError):
            fd_forms_oracle(flat_chart, flat_chart.domain.u_min + 0.5 * margin, 1.0)

    def test_curve_oracle_on_parameter_curve(self):
        """u = 2 の曲線の (κ_g, κ_n) = (1/2, g′(2)/2)"""
        profile = polynomial_profile([0.0, 0.3, 0.2])
        chart = helicoidal_chart(HelicoidalParams(profile, 0.6), u_range=(0.5, 3.0), v_range=(-4.0, 4.0))
        kappa_g, kappa_n = fd_curve_oracle(chart, lambda s: 2.0, lambda s: s / 2.0, 0.5)
        assert kappa_g == pytest.approx(0.5, abs=1e-5)
        assert kappa_n == pytest.approx(float(profile.g1(2.0)) / 2.0, abs=1e-5)

    def test_curve_oracle_outside_domain(self, flat_chart):
        with pytest.raises(OutOfDomainError):
            fd_curve_oracle(flat_chart, lambda s: 1.0 + s, lambda s: 0.5, 0.0)


@pytest.mark.unit
class TestConstancySweep:
    """定数性スイープのテスト"""

    def test_flat_helicoid_has_zero_K(self, flat_chart):
        grid = GridSpec.from_domain(flat_chart.domain)
        mean, deviation = constancy_sweep(flat_chart, CurvatureQuantity.K, grid)
        assert abs(mean) <= 1e-8
        assert deviation <= 1e-8

    def test_constant_H_conventions(self, constant_H_chart):
        """定義の H は H₀/2、螺旋面の式は H₀"""
        grid = GridSpec.from_domain(constant_H_chart.domain, 21, 21)
        mean_def, dev_def = constancy_sweep(constant_H_chart, CurvatureQuantity.H_DEF, grid)
        mean_expr, _ = constancy_sweep(constant_H_chart, CurvatureQuantity.H_SECTION3_EXPR, grid)
        assert mean_def == pytest.approx(-0.5, abs=1e-8)
        assert dev_def <= 1e-8
        assert mean_expr == pytest.approx(-1.0, abs=1e-10)

    def test_finite_difference_path_shrinks_grid(self, flat_chart):
        """差分経路では領域いっぱいの格子でもステンシルの分だけ縮める"""
        grid = GridSpec.from_domain(flat_chart.domain, 11, 11)
        mean, deviation = constancy_sweep(flat_chart, CurvatureQuantity.K, grid, DerivativeSource.FINITE_DIFFERENCE)
        assert abs(mean) <= 1e-5
        assert deviation <= 1e-5


@pytest.mark.unit
class TestClaimRegistry:
    """主張の登録情報のテスト"""

    def test_ids_are_unique(self):
        assert len(ALL_IDS) == len(set(ALL_IDS))

    def test_every_claim_has_anchor(self):
        for claim_id, anchor in list_claims():
            assert claim_id
            assert '"' in anchor and ":" in anchor

    def test_documented_set(self):
        assert {spec.id for spec in CLAIMS if spec.documented} == DOCUMENTED

    def test_context_uses_default_tolerances(self):
        assert ClaimContext("Thm4.1", 0).tolerances == default_tolerances()

    def test_context_rng_depends_on_seed_and_id(self):
        """乱数列はシードと項目IDだけで決まる"""
        tol = default_tolerances()
        a = ClaimContext("Thm4.1", 3, tol).rng.uniform(size=4)
        b = ClaimContext("Thm4.1", 3, tol).rng.uniform(size=4)
        c = ClaimContext("Thm4.3", 3, tol).rng.uniform(size=4)
        np.testing.assert_array_equal(a, b)
        assert not np.array_equal(a, c)


@pytest.mark.integration
class TestTheoremSuite:
    """定理スイートの統合テスト"""

    @pytest.mark.parametrize("claim_id", ALL_IDS)
    def test_each_claim(self, claim_id):
        """記載どおりの主張は pass、不整合の主張は discrepancy-documented"""
        report = run_theorem_suite(selection=[claim_id], seed=0)
        result = report.get(claim_id)
        expected = ClaimStatus.DISCREPANCY_DOCUMENTED if claim_id in DOCUMENTED else ClaimStatus.PASS
        assert result.status is expected, result.notes
        assert math.isfinite(result.max_abs_error)
        assert result.notes

    def test_full_suite(self):
        """全項目を実行して fail なし、不整合はちょうど4件"""
        start = time.time()
        report = run_theorem_suite(seed=0)
        elapsed = time.time() - start
        assert [result.id for result in report.claims] == ALL_IDS
        assert not report.has_failures
        assert report.count(ClaimStatus.FAIL) == 0
        assert report.count(ClaimStatus.DISCREPANCY_DOCUMENTED) == 4
        assert error_logger.get_error_summary()["total_errors"] == 0
        assert elapsed < 60.0

    def test_same_seed_is_deterministic(self):
        selection = ["Thm4.1", "Thm4.3", "Frame", "MotionInvariance"]
        first = run_theorem_suite(selection=selection, seed=7).to_dict()
        second = run_theorem_suite(selection=selection, seed=7).to_dict()
        assert first == second

    def test_workers_keep_registry_order(self):
        selection = ["Distance", "Thm2.4", "Prop2.2", "Sphere"]
        serial = run_theorem_suite(selection=selection, seed=1)
        threaded = run_theorem_suite(selection=selection, seed=1, workers=2)
        assert [r.id for r in threaded.claims] == [spec.id for spec in CLAIMS if spec.id in selection]
        assert serial.to_dict() == threaded.to_dict()

    def test_constant_K_with_overrides(self):
        """K0=0.5, γ=1, h=1 の定曲率螺旋面"""
        report = run_theorem_suite(selection=["Thm3.1.ii"], overrides={"K0": 0.5, "gamma": 1.0, "h": 1.0})
        assert report.get("Thm3.1.ii").status is ClaimStatus.PASS

    def test_report_records_seed_and_tolerances(self):
        report = run_theorem_suite(selection=["Distance"], seed=11, tolerances={"distance_rel": 1e-11})
        data = report.to_dict()
        assert data["seed"] == 11
        assert data["tolerances"]["distance_rel"] == 1e-11
        assert data["claims"][0]["status"] == "pass"

    def test_tight_tolerance_fails_and_is_logged(self):
        """許容誤差0では数値誤差のある項目が fail になりエラーログに残る"""
        report = run_theorem_suite(selection=["OracleEquivalence"], tolerances={"oracle": 0.0})
        assert report.get("OracleEquivalence").status is ClaimStatus.FAIL
        assert report.has_failures
        assert error_logger.error_counts["claim_failure"] == 1

    def test_progress_is_logged(self, caplog):
        with caplog.at_level(logging.DEBUG, logger="core.verify"):
            run_theorem_suite(selection=["Distance", "Thm4.3"], workers=1)
        assert "1/2 項目完了" in caplog.text
        assert "2/2 項目完了" in caplog.text

    def test_crashing_claim_is_reported_as_failure(self, monkeypatch):
        """検査中の例外は fail になり、誤差は JSON で null になる"""

        def boom(ctx):
            raise ZeroDivisionError("division by zero")

        index = ALL_IDS.index("Distance")
        patched = list(CLAIMS)
        patched[index] = dataclasses.replace(CLAIMS[index], check=boom)
        monkeypatch.setattr("core.verify.CLAIMS", patched)
        report = run_theorem_suite(selection=["Distance"], workers=1)
        result = report.get("Distance")
        assert result.status is ClaimStatus.FAIL
        assert math.isinf(result.max_abs_error)
        assert result.notes.startswith("ZeroDivisionError")
        assert error_logger.error_counts["unexpected"] == 1
        data = json.loads(report_to_json(report))
        assert data["claims"][0]["max_abs_error"] is None

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"selection": ["Thm9.9"]},
            {"tolerances": {"no_such_tolerance": 1.0}},
            {"overrides": {"omega": 1.0}},
        ],
    )
    def test_unknown_names_are_rejected(self, kwargs):
        with pytest.raises(ValueError):
            run_theorem_suite(**kwargs)


@pytest.mark.performance
class TestSuitePerformance:
    """実行時間のテスト"""

    def test_constant_H_sweep_is_fast(self):
        chart = helicoidal_chart(HelicoidalParams(constant_H_profile(2.0, 1.0, 0.0), 0.5), u_range=(0.5, 3.0))
        start = time.time()
        constancy_sweep(chart, CurvatureQuantity.H_DEF, GridSpec.from_domain(chart.domain, 201, 201))
        assert time.time() - start < 5.0
