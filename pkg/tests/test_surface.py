"""
基本形式・曲率・ラプラシアンのテスト
"""

import math

import numpy as np
import pytest

from core.families import (
    constant_profile,
    helicoidal_chart,
    linear_profile,
    log_helicoidal_profile,
    parabolic_i_sphere,
    polynomial_profile,
    translation_hypersurface,
)
from core.surface import (
    curvature_at,
    curvatures,
    evaluate_forms_grid,
    finite_difference_chart,
    first_form,
    graph_as_chart,
    graph_chart,
    graph_curvatures,
    helicoidal_H_expr,
    laplace_coordinates,
    laplace_grid,
    second_form,
    stack3,
    transform_chart,
)
from utils.error_handler import GeometryError, NotAdmissibleError, OutOfDomainError
from utils.models import Domain, GraphHypersurface, HelicoidalParams, HelicoidalType, Motion, SymForm2


def helicoid(profile, h=0.0, kind=HelicoidalType.FIRST, u_range=(0.5, 3.0)):
    return helicoidal_chart(HelicoidalParams(profile, h, kind), u_range=u_range, v_range=(0.0, 2.0 * math.pi))


@pytest.mark.unit
class TestFundamentalForms:
    """第一・第二基本形式のテスト"""

    def test_helicoid_first_form(self):
        """螺旋面の第一基本形式は diag(1, u²)"""
        chart = helicoid(polynomial_profile([0.0, 0.5, 0.25]), h=1.3)
        g = first_form(chart, 2.0, 0.7)
        assert g.a11 == pytest.approx(1.0)
        assert g.a12 == pytest.approx(0.0, abs=1e-15)
        assert g.a22 == pytest.approx(4.0)

    def test_helicoid_second_form(self):
        """h = (g″, −h/u, u g′)"""
        profile = polynomial_profile([0.0, 0.5, 0.25])
        chart = helicoid(profile, h=1.3)
        u = 2.0
        hf = second_form(chart, u, 0.7)
        assert hf.a11 == pytest.approx(float(profile.g2(u)), abs=1e-14)
        assert hf.a12 == pytest.approx(-1.3 / u, abs=1e-14)
        assert hf.a22 == pytest.approx(u * float(profile.g1(u)), abs=1e-14)

    def test_second_type_has_same_forms(self):
        profile = polynomial_profile([1.0, -0.3, 0.2])
        first = helicoid(profile, h=0.8)
        second = helicoid(profile, h=0.8, kind=HelicoidalType.SECOND)
        for u, v in [(0.6, 0.1), (1.7, 2.5), (2.9, 5.0)]:
            assert first_form(first, u, v).as_tuple() == pytest.approx(first_form(second, u, v).as_tuple(), abs=1e-12)
            assert second_form(first, u, v).as_tuple() == pytest.approx(second_form(second, u, v).as_tuple(), abs=1e-12)

    def test_plane_has_zero_curvature(self):
        """平面 z = 0 では K = H = 0"""
        chart = helicoid(constant_profile(0.0))
        sample = curvature_at(chart, 1.0, 0.3)
        assert sample.K == 0.0
        assert sample.H == 0.0

    def test_out_of_domain(self):
        chart = helicoid(constant_profile(0.0))
        with pytest.raises(OutOfDomainError) as info:
            first_form(chart, 3.5, 0.0)
        assert info.value.u == 3.5

    def test_isotropic_tangent_plane_is_rejected(self):
        """上面図への射影が退化するチャートは許容されない"""

        def r(u, v):
            return stack3(u + v, u + v, u * v)

        degenerate = finite_difference_chart(r, Domain(-1, 1, -1, 1))
        with pytest.raises(NotAdmissibleError):
            first_form(degenerate, 0.2, 0.3)

    def test_graph_chart_forms(self):
        """グラフ (u, v, uv) の第二基本形式はヘッセ行列"""
        chart = graph_chart(
            F=lambda u, v: u * v,
            F_u=lambda u, v: v,
            F_v=lambda u, v: u,
            F_uu=lambda u, v: 0.0 * u,
            F_uv=lambda u, v: 1.0 + 0.0 * u,
            F_vv=lambda u, v: 0.0 * u,
            domain=Domain(-1, 1, -1, 1),
        )
        assert second_form(chart, 0.3, -0.4).as_tuple() == pytest.approx((0.0, 1.0, 0.0))
        assert curvature_at(chart, 0.3, -0.4).K == pytest.approx(-1.0)

    def test_curvatures_reject_degenerate_metric(self):
        with pytest.raises(NotAdmissibleError):
            curvatures(SymForm2(1.0, 1.0, 1.0), SymForm2(0.0, 0.0, 0.0))


@pytest.mark.unit
class TestCurvatures:
    """K と H のテスト"""

    def test_parabolic_sphere(self):
        """x3 = (A/2)(x1² + x2²) は K ≡ A², H ≡ A"""
        chart = parabolic_i_sphere(2.0)
        for u, v in [(0.0, 0.0), (0.5, -0.7), (-0.9, 0.9)]:
            sample = curvature_at(chart, u, v)
            assert sample.K == pytest.approx(4.0, abs=1e-12)
            assert sample.H == pytest.approx(2.0, abs=1e-12)

    def test_helicoidal_mean_curvature_expression_is_twice_H(self):
        profile = polynomial_profile([0.0, 1.0, 0.5, -0.1])
        chart = helicoid(profile, h=0.4)
        for u in (0.7, 1.5, 2.6):
            H = curvature_at(chart, u, 1.0).H
            assert float(helicoidal_H_expr(profile, u)) == pytest.approx(2.0 * H, abs=1e-12)

    def test_grid_matches_pointwise(self):
        chart = helicoid(polynomial_profile([0.0, 0.2, 0.3]), h=1.1)
        U, V = np.meshgrid(np.linspace(0.6, 2.9, 7), np.linspace(0.1, 6.0, 5), indexing="ij")
        forms = evaluate_forms_grid(chart, U, V)
        sample = curvature_at(chart, float(U[3, 2]), float(V[3, 2]))
        assert forms["K"][3, 2] == pytest.approx(sample.K, abs=1e-14)
        assert forms["H"][3, 2] == pytest.approx(sample.H, abs=1e-14)
        assert forms["det_g"].shape == U.shape

    def test_motion_invariance(self):
        chart = helicoid(polynomial_profile([0.0, 0.2, 0.3]), h=1.1)
        moved = transform_chart(chart, Motion(a=1.0, b=-2.0, c=0.5, d=0.3, e=-0.7, phi=1.1))
        for u, v in [(0.8, 0.3), (2.2, 4.0)]:
            before, after = curvature_at(chart, u, v), curvature_at(moved, u, v)
            assert after.K == pytest.approx(before.K, abs=1e-12)
            assert after.H == pytest.approx(before.H, abs=1e-12)


@pytest.mark.unit
class TestLaplacian:
    """ラプラス・ベルトラミ作用素のテスト"""

    @pytest.mark.parametrize("alpha", [1.0, -2.0])
    def test_log_profile_is_harmonic(self, alpha):
        """g = α ln u では3成分すべてが0"""
        chart = helicoid(log_helicoidal_profile(alpha), h=0.9)
        U, V = np.meshgrid(np.linspace(0.5, 3.0, 51), np.linspace(0.0, 2.0 * math.pi, 51), indexing="ij")
        assert np.max(np.abs(laplace_grid(chart, U, V))) <= 1e-8

    def test_quadratic_profile(self):
        """g = u² では Δr3 = g′/u + g″ = 4"""
        chart = helicoid(polynomial_profile([0.0, 0.0, 1.0]))
        lap = laplace_coordinates(chart, 1.3, 0.4)
        assert lap.x1 == pytest.approx(0.0, abs=1e-12)
        assert lap.x2 == pytest.approx(0.0, abs=1e-12)
        assert lap.x3 == pytest.approx(4.0, abs=1e-12)


@pytest.mark.unit
class TestGraphHypersurface:
    """グラフ超曲面のテスト"""

    def test_graph_curvatures_match_chart(self):
        gh = translation_hypersurface(2, [0.5, -1.5], betas=[0.2, 0.1])
        chart = graph_as_chart(gh, Domain(-1, 1, -1, 1))
        for u, v in [(0.1, 0.2), (-0.8, 0.5)]:
            K, H = graph_curvatures(gh, [u, v])
            sample = curvature_at(chart, u, v)
            assert K == pytest.approx(sample.K, abs=1e-10)
            assert H == pytest.approx(sample.H, abs=1e-10)

    def test_three_dimensional_translation(self):
        K, H = graph_curvatures(translation_hypersurface(3, [1.0, 2.0, -0.5]), [0.3, 0.1, 0.2])
        assert K == pytest.approx(8.0 * 1.0 * 2.0 * -0.5)
        assert H == pytest.approx((2.0 / 3.0) * 2.5)

    def test_asymmetric_hessian_is_rejected(self):
        gh = GraphHypersurface(
            n=2,
            F=lambda x: 0.0,
            grad_F=lambda x: np.zeros(2),
            hess_F=lambda x: np.array([[0.0, 1.0], [0.0, 0.0]]),
        )
        with pytest.raises(GeometryError):
            graph_curvatures(gh, [0.0, 0.0])

    def test_wrong_dimension(self):
        with pytest.raises(GeometryError):
            graph_curvatures(translation_hypersurface(2, [1.0, 1.0]), [0.0, 0.0, 0.0])

    def test_only_surfaces_become_charts(self):
        with pytest.raises(GeometryError):
            graph_as_chart(translation_hypersurface(3, [1.0, 1.0, 1.0]), Domain(0, 1, 0, 1))


@pytest.mark.unit
class TestFiniteDifferenceChart:
    """位置だけから作るチャートのテスト"""

    def test_matches_analytic_helicoid(self):
        analytic = helicoid(linear_profile(0.5), h=1.0)
        fd = finite_difference_chart(analytic.r, analytic.domain.inset(0.1))
        for u, v in [(1.0, 1.0), (2.0, 3.0)]:
            a, b = curvature_at(analytic, u, v), curvature_at(fd, u, v)
            assert b.K == pytest.approx(a.K, abs=1e-5)
            assert b.H == pytest.approx(a.H, abs=1e-5)
