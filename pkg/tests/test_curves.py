"""
曲面上の曲線解析のテスト
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.curves import (
    classify_parameter_curves,
    frame_curvatures,
    geodesic_curvature,
    geodesic_torsion,
    geodesic_torsion_numerator,
    normal_curvature,
    printed_geodesic_curvature,
    sample_curve,
    torsion_numerator_from_forms,
)
from core.families import constant_H_profile, constant_profile, helicoidal_chart, linear_profile, polynomial_profile
from core.surface import first_form, second_form
from utils.error_handler import NotAdmissibleError, NotUnitSpeedError, OutOfDomainError
from utils.models import CurveState, HelicoidalParams

PROFILE = polynomial_profile([0.0, 0.3, 0.2, -0.02], name="cubic")


def chart_for(profile, h):
    return helicoidal_chart(HelicoidalParams(profile, h), u_range=(0.2, 6.0), v_range=(-10.0, 10.0))


def circle_state(centre, radius, angle):
    """上面図で中心 centre、半径 radius の反時計回り単位速さ円の極座標状態"""
    cx, cy = centre
    x, y = cx + radius * math.cos(angle), cy + radius * math.sin(angle)
    dx, dy = -math.sin(angle), math.cos(angle)
    ddx, ddy = -math.cos(angle) / radius, -math.sin(angle) / radius
    u, v = math.hypot(x, y), math.atan2(y, x)
    du = (x * dx + y * dy) / u
    dv = (x * dy - y * dx) / (u * u)
    ddu = (dx * dx + dy * dy + x * ddx + y * ddy) / u - du * du / u
    ddv = (x * ddy - y * ddx) / (u * u) - 2.0 * du * dv / u
    return CurveState(u, v, du, dv, ddu, ddv)


u0_values = st.floats(min_value=0.5, max_value=5.0)
v0_values = st.floats(min_value=-math.pi, max_value=math.pi)
pitches = st.floats(min_value=-3.0, max_value=3.0)


@pytest.mark.unit
class TestHelicoidalFormulas:
    """螺旋面の閉じた式のテスト"""

    @given(u0_values, v0_values, pitches)
    @settings(max_examples=100, deadline=None)
    def test_parameter_curve_geodesic_curvatures(self, u0, v0, h):
        """v 一定の曲線は測地線、u 一定の曲線は κ_g = 1/u0"""
        curves = classify_parameter_curves(PROFILE, h, u0, v0)
        assert abs(curves.u_curve.kappa_g) <= 1e-9
        assert curves.u_curve.is_geodesic
        assert curves.v_curve.kappa_g == pytest.approx(1.0 / u0, abs=1e-9)

    @given(u0_values, v0_values, pitches)
    @settings(max_examples=100, deadline=None)
    def test_parameter_curve_torsion(self, u0, v0, h):
        """u_curve の捩率分子は −h/u0、h=0 なら両方0"""
        curves = classify_parameter_curves(PROFILE, h, u0, v0)
        assert curves.u_curve.tau_g_numerator == pytest.approx(-h / u0, abs=1e-9)
        assert curves.v_curve.tau_g_numerator == pytest.approx(h / u0, abs=1e-9)

    @given(u0_values, v0_values)
    @settings(max_examples=50, deadline=None)
    def test_surface_of_revolution_parameter_curves_are_lines_of_curvature(self, u0, v0):
        curves = classify_parameter_curves(PROFILE, 0.0, u0, v0)
        assert abs(curves.u_curve.tau_g_numerator) <= 1e-12
        assert abs(curves.v_curve.tau_g_numerator) <= 1e-12
        assert curves.u_curve.is_line_of_curvature and curves.v_curve.is_line_of_curvature

    def test_normal_curvature_of_parameter_curves(self):
        u0 = 1.7
        curves = classify_parameter_curves(PROFILE, 0.4, u0, 0.0)
        assert curves.u_curve.kappa_n == pytest.approx(float(PROFILE.g2(u0)))
        assert curves.v_curve.kappa_n == pytest.approx(float(PROFILE.g1(u0)) / u0)

    def test_linear_profile_v_curves_are_asymptotic_only_for_helicoid(self):
        """g′ = 0 のときだけ u 一定の曲線は漸近曲線"""
        assert classify_parameter_curves(constant_profile(1.0), 0.5, 2.0, 0.0).v_curve.is_asymptotic
        assert not classify_parameter_curves(linear_profile(0.5), 0.5, 2.0, 0.0).v_curve.is_asymptotic

    def test_unit_speed_is_required(self):
        with pytest.raises(NotUnitSpeedError):
            geodesic_curvature(PROFILE, 0.0, CurveState(2.0, 0.0, 1.0, 1.0))

    def test_non_positive_u(self):
        with pytest.raises(NotAdmissibleError):
            classify_parameter_curves(PROFILE, 0.0, 0.0, 0.0)

    def test_u0_outside_profile_range(self):
        profile = constant_H_profile(1.0, 1.0, 0.0)
        restricted = type(profile)(profile.g, profile.g1, profile.g2, valid_range=(1.0, 2.0))
        with pytest.raises(OutOfDomainError):
            classify_parameter_curves(restricted, 0.0, 3.0, 0.0)

    def test_full_torsion(self):
        cs = CurveState(2.0, 0.0, 1.0, 0.0)
        assert geodesic_torsion(PROFILE, 1.0, cs) == pytest.approx(-0.5 / 4.0)


@pytest.mark.unit
class TestFrameDecomposition:
    """正規直交三つ組による分解のテスト"""

    def test_circle_counterexample(self):
        """上面図で (2, 0) 中心の単位円: 分解は 1、印字された式は −0.6"""
        cs = circle_state((2.0, 0.0), 1.0, math.pi / 2.0)
        chart = chart_for(PROFILE, 0.5)
        kappa_g, _, sigma = frame_curvatures(chart, cs)
        assert kappa_g == pytest.approx(1.0, abs=1e-9)
        assert geodesic_curvature(PROFILE, 0.5, cs) == pytest.approx(1.0, abs=1e-9)
        assert printed_geodesic_curvature(cs) == pytest.approx(-0.6, abs=1e-9)
        assert math.hypot(sigma[0], sigma[1]) == pytest.approx(1.0)

    @given(
        st.floats(min_value=1.5, max_value=4.0),
        st.floats(min_value=-1.0, max_value=1.0),
        st.floats(min_value=0.2, max_value=1.0),
        st.floats(min_value=0.0, max_value=2.0 * math.pi),
        pitches,
    )
    @settings(max_examples=60, deadline=None)
    def test_polar_formulas_agree_with_frame(self, cx, cy, radius, angle, h):
        cs = circle_state((cx, cy), radius, angle)
        chart = chart_for(PROFILE, h)
        kappa_g, kappa_n, _ = frame_curvatures(chart, cs)
        assert kappa_g == pytest.approx(geodesic_curvature(PROFILE, h, cs), abs=1e-8)
        assert kappa_n == pytest.approx(normal_curvature(PROFILE, h, cs), abs=1e-8)

    def test_torsion_from_forms_matches_helicoidal(self):
        chart = chart_for(PROFILE, 0.8)
        u, v, du, dv = 1.3, 0.2, 0.6, 0.8 / 1.3
        g, hf = first_form(chart, u, v), second_form(chart, u, v)
        assert torsion_numerator_from_forms(g, hf, du, dv) == pytest.approx(
            geodesic_torsion_numerator(PROFILE, 0.8, u, du, dv), abs=1e-12
        )

    def test_frame_requires_unit_speed(self):
        with pytest.raises(NotUnitSpeedError):
            frame_curvatures(chart_for(PROFILE, 0.0), CurveState(2.0, 0.0, 2.0, 0.0))


@pytest.mark.unit
class TestSampleCurve:
    """曲線サンプリングのテスト"""

    def test_u_constant_curve(self):
        """u = 2 の曲線は κ_g が 0.5"""
        chart = chart_for(PROFILE, 1.0)
        s = np.linspace(0.0, 3.0, 7)
        samples = sample_curve(
            chart,
            lambda t: 2.0,
            lambda t: t / 2.0,
            s,
            derivatives=(lambda t: 0.0, lambda t: 0.5, lambda t: 0.0, lambda t: 0.0),
        )
        assert [sample.s for sample in samples] == pytest.approx(list(s))
        for sample in samples:
            assert sample.classification.kappa_g == pytest.approx(0.5, abs=1e-9)
            assert sample.point.as_array() == pytest.approx(chart.r(2.0, sample.state.v))

    def test_reparametrises_non_unit_speed(self):
        """速さ2の u 方向直線は弧長 0〜2 に取り直される"""
        chart = chart_for(PROFILE, 0.0)
        samples = sample_curve(chart, lambda t: 1.0 + 2.0 * t, lambda t: 0.3, [0.0, 0.5, 1.0])
        assert samples[-1].s == pytest.approx(2.0, abs=1e-6)
        assert samples[0].state.du == pytest.approx(1.0, abs=1e-6)
        for sample in samples:
            assert abs(sample.classification.kappa_g) <= 1e-5

    def test_finite_difference_paths(self):
        """導関数を与えない場合は中心差分で分類する"""
        chart = chart_for(PROFILE, 0.5)
        samples = sample_curve(chart, lambda t: 3.0, lambda t: t / 3.0, np.linspace(0.0, 1.0, 5))
        for sample in samples:
            assert sample.classification.kappa_g == pytest.approx(1.0 / 3.0, abs=1e-5)

    def test_sample_outside_domain(self):
        chart = helicoidal_chart(HelicoidalParams(PROFILE, 0.0), u_range=(0.2, 6.0))
        with pytest.raises(OutOfDomainError):
            sample_curve(chart, lambda t: 7.0, lambda t: t, [0.0])

    def test_stationary_curve_is_rejected(self):
        """速さ 0 のサンプルは弧長に取り直せない"""
        chart = chart_for(PROFILE, 0.5)
        with pytest.raises(NotUnitSpeedError) as exc_info:
            sample_curve(chart, lambda t: 2.0, lambda t: 0.1, [0.0, 1.0])
        assert exc_info.value.speed_sq == 0.0
        assert exc_info.value.operation == "sample_curve"
