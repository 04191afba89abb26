"""
曲面上の曲線解析モジュール

螺旋面上の曲線の測地曲率・法曲率・測地捩率と、パラメータ曲線の分類を提供します。
任意のチャートについても、正規直交三つ組 {t, σ, N = (0, 0, 1)} による
r̈ = κ_g σ + κ_n N の分解で κ_g, κ_n を計算できます。

弧長パラメータを仮定する式には単位速さの状態だけを渡してください。
"""

import logging
import math
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import cumulative_trapezoid

from core.surface import first_form, second_form
from utils.error_handler import NotAdmissibleError, NotUnitSpeedError, OutOfDomainError
from utils.models import (
    CurveClassification,
    CurveSample,
    CurveState,
    DerivativeSource,
    ParameterCurves,
    Point3,
    ProfileFunction,
    SurfaceChart,
    SymForm2,
)

logger = logging.getLogger(__name__)

UNIT_SPEED_TOL = 1e-10
CLASSIFICATION_TOL = 1e-9
CLASSIFICATION_FD_TOL = 1e-5
CURVE_FD_STEP = 1e-4
STATIONARY_SPEED_TOL = 1e-12

ScalarPath = Callable[[float], float]


def _require_unit_speed(speed_sq: float, operation: str) -> None:
    if abs(speed_sq - 1.0) > UNIT_SPEED_TOL:
        raise NotUnitSpeedError(
            f"{operation}: 弧長パラメータではありません (|ṙ|² = {speed_sq:.12g})",
            speed_sq=speed_sq,
            operation=operation,
        )


def _require_helicoidal_state(cs: CurveState, operation: str) -> None:
    if not cs.u > 0:
        raise NotAdmissibleError(
            f"{operation}: u > 0 が必要です (u={cs.u})", u=cs.u, v=cs.v, det_g=cs.u * cs.u, operation=operation
        )
    _require_unit_speed(cs.du * cs.du + cs.u * cs.u * cs.dv * cs.dv, operation)


def geodesic_curvature(profile: ProfileFunction, h: float, cs: CurveState) -> float:
    """
    螺旋面上の曲線の測地曲率

    κ_g = u²v̇³ + u u̇ v̈ + 2u̇²v̇ − u v̇ ü（上面図の極座標曲線の符号付き曲率）。
    パラメータ曲線（u̇ = 0 または v̇ = 0）上では printed_geodesic_curvature と一致します。
    κ_g は上面図だけで決まるので profile と h には依存しません。

    Raises:
        NotUnitSpeedError: u̇² + u²v̇² ≠ 1
    """
    _require_helicoidal_state(cs, "geodesic_curvature")
    u, du, dv, ddu, ddv = cs.u, cs.du, cs.dv, cs.ddu, cs.ddv
    return u * u * dv**3 + u * du * ddv + 2.0 * du * du * dv - u * dv * ddu


def printed_geodesic_curvature(cs: CurveState) -> float:
    """
    符号が二箇所異なる版 u²v̇³ − u u̇ v̈ − 2u̇²v̇ − u v̇ ü

    一般の曲線では r̈ の分解と一致しません（検証レポートでの比較用）。
    """
    u, du, dv, ddu, ddv = cs.u, cs.du, cs.dv, cs.ddu, cs.ddv
    return u * u * dv**3 - u * du * ddv - 2.0 * du * du * dv - u * dv * ddu


def normal_curvature(profile: ProfileFunction, h: float, cs: CurveState) -> float:
    """
    法曲率 κ_n = g″u̇² − 2(h/u)u̇v̇ + u g′v̇²

    Raises:
        NotUnitSpeedError: u̇² + u²v̇² ≠ 1
    """
    _require_helicoidal_state(cs, "normal_curvature")
    u, du, dv = cs.u, cs.du, cs.dv
    return float(profile.g2(u) * du * du - 2.0 * (h / u) * du * dv + u * profile.g1(u) * dv * dv)


def geodesic_torsion_numerator(profile: ProfileFunction, h: float, u: float, du: float, dv: float) -> float:
    """
    測地捩率の分子 −(h/u)u̇² + (u g′ − u² g″)u̇v̇ + h u v̇²

    行列式 |dv², −du dv, du²; g11, g12, g22; h11, h12, h22| を螺旋面で展開したもので、
    曲率線の条件は分子 = 0 です。
    """
    if not u > 0:
        raise NotAdmissibleError(f"geodesic_torsion_numerator: u > 0 が必要です (u={u})", u=u, det_g=u * u)
    return float(-(h / u) * du * du + (u * profile.g1(u) - u * u * profile.g2(u)) * du * dv + h * u * dv * dv)


def torsion_numerator_from_forms(g: SymForm2, hf: SymForm2, du: float, dv: float) -> float:
    """任意のチャートでの行列式 |dv², −du dv, du²; g; h|"""
    return (
        dv * dv * (g.a12 * hf.a22 - g.a22 * hf.a12)
        + du * dv * (g.a11 * hf.a22 - g.a22 * hf.a11)
        + du * du * (g.a11 * hf.a12 - g.a12 * hf.a11)
    )


def geodesic_torsion(profile: ProfileFunction, h: float, cs: CurveState) -> float:
    """
    測地捩率 τ_g = 分子 / (det g · I(u̇, v̇))

    螺旋面では det g = u²、単位速さなら I = 1 です。
    """
    _require_helicoidal_state(cs, "geodesic_torsion")
    u = cs.u
    first = cs.du * cs.du + u * u * cs.dv * cs.dv
    return geodesic_torsion_numerator(profile, h, u, cs.du, cs.dv) / (u * u * first)


def frame_curvatures(
    chart: SurfaceChart, cs: CurveState, tol: float = UNIT_SPEED_TOL
) -> Tuple[float, float, np.ndarray]:
    """
    r̈ = κ_g σ + κ_n N の分解

    σ = −(1/sqrt(det g))[(g12 u̇ + g22 v̇) r_u − (g11 u̇ + g12 v̇) r_v] は上面図で単位長、
    t と直交し t₁σ₂ − t₂σ₁ = 1 を満たします。κ_g = ⟨r̈, σ⟩_tv、κ_n = r̈₃ − κ_g σ₃。

    Returns:
        Tuple[float, float, np.ndarray]: (κ_g, κ_n, σ)

    Raises:
        NotUnitSpeedError: I(u̇, v̇) ≠ 1
    """
    g = first_form(chart, cs.u, cs.v)
    speed_sq = g.quadratic(cs.du, cs.dv)
    if abs(speed_sq - 1.0) > tol:
        raise NotUnitSpeedError(
            f"frame_curvatures: 弧長パラメータではありません (I = {speed_sq:.12g})", speed_sq=speed_sq
        )

    r_u, r_v = chart.r_u(cs.u, cs.v), chart.r_v(cs.u, cs.v)
    accel = (
        chart.r_uu(cs.u, cs.v) * cs.du**2
        + 2.0 * chart.r_uv(cs.u, cs.v) * cs.du * cs.dv
        + chart.r_vv(cs.u, cs.v) * cs.dv**2
        + r_u * cs.ddu
        + r_v * cs.ddv
    )
    sigma = -((g.a12 * cs.du + g.a22 * cs.dv) * r_u - (g.a11 * cs.du + g.a12 * cs.dv) * r_v) / math.sqrt(g.det)
    kappa_g = float(accel[0] * sigma[0] + accel[1] * sigma[1])
    kappa_n = float(accel[2] - kappa_g * sigma[2])
    return kappa_g, kappa_n, sigma


def classify_parameter_curves(
    profile: ProfileFunction, h: float, u0: float, v0: float, tol: float = CLASSIFICATION_TOL
) -> ParameterCurves:
    """
    点 (u0, v0) を通る2本のパラメータ曲線を分類

    u_curve は v = v0 固定（u̇ = 1）、v_curve は u = u0 固定（v̇ = 1/u0）の単位速さ曲線です。
    前者は常に測地線で、法曲率は g″(u0) に一致します。

    Raises:
        NotAdmissibleError: u0 <= 0
        OutOfDomainError: u0 が母線の有効区間外
    """
    if not u0 > 0:
        raise NotAdmissibleError(
            f"classify_parameter_curves: u0 > 0 が必要です (u0={u0})",
            u=u0,
            v=v0,
            det_g=u0 * u0,
            operation="classify_parameter_curves",
        )
    if not profile.contains(u0):
        raise OutOfDomainError(
            f"classify_parameter_curves: u0={u0} は母線 '{profile.name}' の有効区間 {profile.valid_range} の外です",
            u=u0,
            v=v0,
            domain=profile.valid_range,
            operation="classify_parameter_curves",
        )

    def classify(state: CurveState) -> CurveClassification:
        return CurveClassification.from_values(
            geodesic_curvature(profile, h, state),
            normal_curvature(profile, h, state),
            geodesic_torsion_numerator(profile, h, state.u, state.du, state.dv),
            tol,
        )

    return ParameterCurves(
        u_curve=classify(CurveState(u0, v0, 1.0, 0.0)),
        v_curve=classify(CurveState(u0, v0, 0.0, 1.0 / u0)),
    )


def _central(f: ScalarPath, s: float, step: float) -> Tuple[float, float]:
    first = (f(s + step) - f(s - step)) / (2.0 * step)
    second = (f(s + step) - 2.0 * f(s) + f(s - step)) / (step * step)
    return first, second


def sample_curve(
    chart: SurfaceChart,
    u_of_s: ScalarPath,
    v_of_s: ScalarPath,
    s_grid: Sequence[float],
    derivatives: Optional[Tuple[ScalarPath, ScalarPath, ScalarPath, ScalarPath]] = None,
    tol: Optional[float] = None,
) -> List[CurveSample]:
    """
    パラメータ関数 (u(s), v(s)) に沿って曲線を評価・分類

    入力が単位速さでない場合は弧長に取り直します（速さ w と w′ から
    d/dσ = (1/w) d/ds を計算し、サンプルの s は台形則による累積弧長）。

    Args:
        chart: 曲面チャート
        u_of_s, v_of_s: パラメータ関数
        s_grid: 評価するパラメータ値（昇順）
        derivatives: (u′, v′, u″, v″)。省略時は中心差分
        tol: 分類の許容誤差（省略時は導関数の出所に応じて 1e-9 / 1e-5）

    Returns:
        List[CurveSample]: 各サンプルの点と分類

    Raises:
        NotAdmissibleError: いずれかのサンプルで det g <= 許容値
        NotUnitSpeedError: 弧長に取り直す必要があるのに速さが 0 のサンプルがある
    """
    s_values = np.asarray(s_grid, dtype=float)
    analytic = derivatives is not None and chart.derivative_source is DerivativeSource.ANALYTIC
    if tol is None:
        tol = CLASSIFICATION_TOL if analytic else CLASSIFICATION_FD_TOL

    raw: List[Tuple[float, float, float, float, float, float]] = []
    speeds = []
    for s in s_values:
        u, v = float(u_of_s(s)), float(v_of_s(s))
        if derivatives is not None:
            du, dv, ddu, ddv = (float(d(s)) for d in derivatives)
        else:
            du, ddu = _central(u_of_s, s, CURVE_FD_STEP)
            dv, ddv = _central(v_of_s, s, CURVE_FD_STEP)
        raw.append((u, v, du, dv, ddu, ddv))
        speeds.append(math.sqrt(first_form(chart, u, v).quadratic(du, dv)))

    speeds_arr = np.asarray(speeds)
    renormalise = bool(np.max(np.abs(speeds_arr**2 - 1.0), initial=0.0) > UNIT_SPEED_TOL)
    if renormalise:
        arc = cumulative_trapezoid(speeds_arr, s_values, initial=0.0) if len(s_values) > 1 else np.zeros(1)
        logger.debug(
            f"単位速さではないため弧長に取り直します (速さの範囲 {speeds_arr.min():.6g}〜{speeds_arr.max():.6g})"
        )
    else:
        arc = s_values

    samples: List[CurveSample] = []
    for (u, v, du, dv, ddu, ddv), w, s in zip(raw, speeds_arr, arc):
        if renormalise and w <= STATIONARY_SPEED_TOL:
            raise NotUnitSpeedError(
                f"s = {s:.6g} で曲線が停留しているため弧長に取り直せません (u={u:.6g}, v={v:.6g})",
                speed_sq=float(w * w),
                operation="sample_curve",
            )
        if renormalise:
            # w′ = ⟨t, ṫ⟩_tv / w
            r_u, r_v = chart.r_u(u, v), chart.r_v(u, v)
            tangent = r_u * du + r_v * dv
            accel = (
                chart.r_uu(u, v) * du * du
                + 2.0 * chart.r_uv(u, v) * du * dv
                + chart.r_vv(u, v) * dv * dv
                + r_u * ddu
                + r_v * ddv
            )
            w_prime = float(tangent[0] * accel[0] + tangent[1] * accel[1]) / w
            state = CurveState(
                u=u,
                v=v,
                du=du / w,
                dv=dv / w,
                ddu=(ddu - du * w_prime / w) / (w * w),
                ddv=(ddv - dv * w_prime / w) / (w * w),
            )
        else:
            state = CurveState(u, v, du, dv, ddu, ddv)

        kappa_g, kappa_n, _ = frame_curvatures(chart, state)
        tau = torsion_numerator_from_forms(first_form(chart, u, v), second_form(chart, u, v), state.du, state.dv)
        samples.append(
            CurveSample(
                s=float(s),
                state=state,
                point=Point3.from_array(chart.r(u, v)),
                classification=CurveClassification.from_values(kappa_g, kappa_n, tau, tol),
            )
        )

    logger.debug(f"曲線サンプル {len(samples)} 点を評価 (chart={chart.name})")
    return samples
