"""
曲面計算モジュール

許容曲面チャートの第一・第二基本形式、相対曲率 K、等方平均曲率 H、
ラプラス・ベルトラミ作用素と、平行移動・相似超曲面で使うグラフ超曲面の特殊化を提供します。

第一基本形式は上面図の内積、第二基本形式は
h_ij = det(r_u, r_v, r_ij) / sqrt(det g) で計算します。
"""

import logging
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from core.isotropic import apply_motion_array, motion_matrix
from utils.error_handler import GeometryError, NotAdmissibleError, OutOfDomainError
from utils.models import (
    CurvatureSample,
    DerivativeSource,
    Domain,
    GraphHypersurface,
    Motion,
    Point3,
    ProfileFunction,
    SurfaceChart,
    SymForm2,
)

logger = logging.getLogger(__name__)

ADMISSIBILITY_TOL = 1e-12
DEFAULT_FD_STEP = 1e-5
HESSIAN_SYMMETRY_TOL = 1e-10


def stack3(x1, x2, x3) -> np.ndarray:
    """3成分をブロードキャストして (3, ...) 配列にまとめる"""
    parts = np.broadcast_arrays(
        np.asarray(x1, dtype=float),
        np.asarray(x2, dtype=float),
        np.asarray(x3, dtype=float),
    )
    return np.stack(parts)


def _tv_dot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # 上面図の内積（第3成分は寄与しない）
    return a[0] * b[0] + a[1] * b[1]


def _check_domain(chart: SurfaceChart, u, v, operation: str) -> None:
    if not chart.domain.contains(u, v):
        raise OutOfDomainError(
            f"{operation}: (u, v) がチャート '{chart.name}' の領域外です",
            u=u,
            v=v,
            domain=chart.domain,
            operation=operation,
        )


def _check_admissible(det_g: np.ndarray, u, v, tol: float, operation: str) -> None:
    bad = np.asarray(det_g) <= tol
    if np.any(bad):
        if np.ndim(det_g) == 0:
            where_u, where_v, value = u, v, float(det_g)
        else:
            index = np.unravel_index(np.argmax(bad), np.shape(det_g))
            where_u = float(np.broadcast_to(u, np.shape(det_g))[index])
            where_v = float(np.broadcast_to(v, np.shape(det_g))[index])
            value = float(np.asarray(det_g)[index])
        raise NotAdmissibleError(
            f"{operation}: 等方接平面を検出しました (u={where_u}, v={where_v}, det g={value:.3e})",
            u=where_u,
            v=where_v,
            det_g=value,
            operation=operation,
        )


def _metric_arrays(r_u: np.ndarray, r_v: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    g11 = _tv_dot(r_u, r_u)
    g12 = _tv_dot(r_u, r_v)
    g22 = _tv_dot(r_v, r_v)
    return g11, g12, g22, g11 * g22 - g12 * g12


def _second_arrays(r_u, r_v, r_uu, r_uv, r_vv, det_g):
    # det(r_u, r_v, X) = X · (r_u × r_v)
    normal = np.cross(r_u, r_v, axis=0)
    scale = np.sqrt(det_g)
    h11 = np.sum(r_uu * normal, axis=0) / scale
    h12 = np.sum(r_uv * normal, axis=0) / scale
    h22 = np.sum(r_vv * normal, axis=0) / scale
    return h11, h12, h22


def _curvature_arrays(g11, g12, g22, det_g, h11, h12, h22):
    K = (h11 * h22 - h12 * h12) / det_g
    H = (g11 * h22 - 2.0 * g12 * h12 + g22 * h11) / (2.0 * det_g)
    return K, H


def first_form(chart: SurfaceChart, u: float, v: float, tol: float = ADMISSIBILITY_TOL) -> SymForm2:
    """
    第一基本形式 (g11, g12, g22)

    Raises:
        OutOfDomainError: 領域外
        NotAdmissibleError: det g <= tol
    """
    _check_domain(chart, u, v, "first_form")
    g11, g12, g22, det_g = _metric_arrays(chart.r_u(u, v), chart.r_v(u, v))
    _check_admissible(det_g, u, v, tol, "first_form")
    return SymForm2(float(g11), float(g12), float(g22))


def second_form(chart: SurfaceChart, u: float, v: float, tol: float = ADMISSIBILITY_TOL) -> SymForm2:
    """
    第二基本形式 (h11, h12, h22)

    h_ij = det(r_u, r_v, r_ij) / sqrt(det g)。螺旋面では (g″, −h/u, u g′)、
    グラフ (u, v, F) では F のヘッセ行列になります。
    """
    _check_domain(chart, u, v, "second_form")
    r_u, r_v = chart.r_u(u, v), chart.r_v(u, v)
    _, _, _, det_g = _metric_arrays(r_u, r_v)
    _check_admissible(det_g, u, v, tol, "second_form")
    h11, h12, h22 = _second_arrays(r_u, r_v, chart.r_uu(u, v), chart.r_uv(u, v), chart.r_vv(u, v), det_g)
    return SymForm2(float(h11), float(h12), float(h22))


def curvatures(g: SymForm2, h: SymForm2, tol: float = ADMISSIBILITY_TOL) -> CurvatureSample:
    """
    相対曲率 K = det(h)/det(g) と等方平均曲率
    H = (g11 h22 − 2 g12 h12 + g22 h11) / (2 det g)
    """
    det_g = g.det
    if det_g <= tol:
        raise NotAdmissibleError(
            f"curvatures: det g = {det_g:.3e} が許容値以下です", det_g=det_g, operation="curvatures"
        )
    K, H = _curvature_arrays(g.a11, g.a12, g.a22, det_g, h.a11, h.a12, h.a22)
    return CurvatureSample(K=float(K), H=float(H), det_g=float(det_g))


def curvature_at(chart: SurfaceChart, u: float, v: float, tol: float = ADMISSIBILITY_TOL) -> CurvatureSample:
    """チャート上の1点での K, H"""
    return curvatures(first_form(chart, u, v, tol), second_form(chart, u, v, tol), tol)


def helicoidal_H_expr(profile: ProfileFunction, u):
    """
    螺旋面の平均曲率の式 g′/u + g″

    定義どおりの H（分母 2 det g）の2倍に等しい値です。
    """
    return profile.g1(u) / u + profile.g2(u)


def evaluate_forms_grid(
    chart: SurfaceChart, U: np.ndarray, V: np.ndarray, tol: float = ADMISSIBILITY_TOL
) -> Dict[str, np.ndarray]:
    """
    格子上で基本形式と曲率をまとめて評価

    Returns:
        Dict[str, np.ndarray]: g11, g12, g22, h11, h12, h22, det_g, K, H
    """
    _check_domain(chart, U, V, "evaluate_forms_grid")
    r_u, r_v = chart.r_u(U, V), chart.r_v(U, V)
    g11, g12, g22, det_g = _metric_arrays(r_u, r_v)
    _check_admissible(det_g, U, V, tol, "evaluate_forms_grid")
    h11, h12, h22 = _second_arrays(r_u, r_v, chart.r_uu(U, V), chart.r_uv(U, V), chart.r_vv(U, V), det_g)
    K, H = _curvature_arrays(g11, g12, g22, det_g, h11, h12, h22)
    shape = np.broadcast(U, V).shape
    result = {
        "g11": g11, "g12": g12, "g22": g22,
        "h11": h11, "h12": h12, "h22": h22,
        "det_g": det_g, "K": K, "H": H,
    }
    return {key: np.broadcast_to(value, shape) for key, value in result.items()}


def laplace_grid(chart: SurfaceChart, U, V, tol: float = ADMISSIBILITY_TOL) -> np.ndarray:
    """
    座標関数へのラプラス・ベルトラミ作用素（格子版、形 (3, ...)）

    Δf = g^{ij}(f_ij − Γ^l_ij f_l)。上面図の計量は平坦なので
    第一種クリストッフェル記号は ⟨r_ij, r_m⟩_tv です。
    螺旋面では (1/u)∂_u + ∂_uu + (1/u²)∂_vv になります。
    """
    _check_domain(chart, U, V, "laplace_coordinates")
    r_u, r_v = chart.r_u(U, V), chart.r_v(U, V)
    g11, g12, g22, det_g = _metric_arrays(r_u, r_v)
    _check_admissible(det_g, U, V, tol, "laplace_coordinates")
    inv11, inv12, inv22 = g22 / det_g, -g12 / det_g, g11 / det_g

    def tension(r_ij: np.ndarray) -> np.ndarray:
        b_u, b_v = _tv_dot(r_ij, r_u), _tv_dot(r_ij, r_v)
        gamma_u = inv11 * b_u + inv12 * b_v
        gamma_v = inv12 * b_u + inv22 * b_v
        return r_ij - gamma_u * r_u - gamma_v * r_v

    return (
        inv11 * tension(chart.r_uu(U, V))
        + 2.0 * inv12 * tension(chart.r_uv(U, V))
        + inv22 * tension(chart.r_vv(U, V))
    )


def laplace_coordinates(chart: SurfaceChart, u: float, v: float, tol: float = ADMISSIBILITY_TOL) -> Point3:
    """1点での (Δr1, Δr2, Δr3)"""
    return Point3.from_array(laplace_grid(chart, u, v, tol))


def graph_curvatures(gh: GraphHypersurface, x) -> Tuple[float, float]:
    """
    グラフ超曲面の K = det(hess F), H = trace(hess F)/n

    上面図に誘導される計量は単位行列なので、ヘッセ行列がそのまま第二基本形式です。

    Raises:
        GeometryError: ヘッセ行列が対称でない場合
    """
    point = np.asarray(x, dtype=float)
    if point.shape != (gh.n,) or not np.all(np.isfinite(point)):
        raise GeometryError(f"graph_curvatures: 点は有限な長さ {gh.n} のベクトルである必要があります: {x}")
    hessian = np.asarray(gh.hess_F(point), dtype=float)
    if np.max(np.abs(hessian - hessian.T), initial=0.0) > HESSIAN_SYMMETRY_TOL:
        raise GeometryError(
            f"graph_curvatures: '{gh.name}' のヘッセ行列が対称ではありません", operation="graph_curvatures"
        )
    return float(np.linalg.det(hessian)), float(np.trace(hessian) / gh.n)


def graph_chart(
    F: Callable,
    F_u: Callable,
    F_v: Callable,
    F_uu: Callable,
    F_uv: Callable,
    F_vv: Callable,
    domain: Domain,
    name: str = "graph",
    metadata: Optional[dict] = None,
) -> SurfaceChart:
    """高さ関数 F(u, v) のグラフチャート (u, v, F)"""

    def zero(u, v):
        return np.zeros(np.broadcast(np.asarray(u), np.asarray(v)).shape)

    def one(u, v):
        return np.ones(np.broadcast(np.asarray(u), np.asarray(v)).shape)

    return SurfaceChart(
        r=lambda u, v: stack3(u, v, F(u, v)),
        r_u=lambda u, v: stack3(one(u, v), zero(u, v), F_u(u, v)),
        r_v=lambda u, v: stack3(zero(u, v), one(u, v), F_v(u, v)),
        r_uu=lambda u, v: stack3(zero(u, v), zero(u, v), F_uu(u, v)),
        r_uv=lambda u, v: stack3(zero(u, v), zero(u, v), F_uv(u, v)),
        r_vv=lambda u, v: stack3(zero(u, v), zero(u, v), F_vv(u, v)),
        domain=domain,
        name=name,
        metadata=dict(metadata or {}),
    )


def graph_as_chart(gh: GraphHypersurface, domain: Domain) -> SurfaceChart:
    """
    n=2 のグラフ超曲面をチャートに変換

    GraphHypersurface の関数は (n, ...) 形の配列も受け付ける前提です。
    """
    if gh.n != 2:
        raise GeometryError(f"graph_as_chart: n=2 のみ対応しています (n={gh.n})")

    def point(u, v):
        return np.stack(np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float)))

    return graph_chart(
        F=lambda u, v: gh.F(point(u, v)),
        F_u=lambda u, v: gh.grad_F(point(u, v))[0],
        F_v=lambda u, v: gh.grad_F(point(u, v))[1],
        F_uu=lambda u, v: gh.hess_F(point(u, v))[0, 0],
        F_uv=lambda u, v: gh.hess_F(point(u, v))[0, 1],
        F_vv=lambda u, v: gh.hess_F(point(u, v))[1, 1],
        domain=domain,
        name=gh.name,
        metadata={"graph": gh},
    )


def transform_chart(chart: SurfaceChart, motion: Motion) -> SurfaceChart:
    """
    i-運動によるチャートの像

    位置は A r + t、偏導関数は A r_* に写ります。
    """
    linear, _ = motion_matrix(motion)

    def moved(field):
        return lambda u, v: np.tensordot(linear, field(u, v), axes=(1, 0))

    metadata = dict(chart.metadata)
    metadata["motion"] = motion
    return SurfaceChart(
        r=lambda u, v: apply_motion_array(motion, chart.r(u, v)),
        r_u=moved(chart.r_u),
        r_v=moved(chart.r_v),
        r_uu=moved(chart.r_uu),
        r_uv=moved(chart.r_uv),
        r_vv=moved(chart.r_vv),
        domain=chart.domain,
        derivative_source=chart.derivative_source,
        fd_step=chart.fd_step,
        name=f"{chart.name}∘motion",
        metadata=metadata,
    )


def finite_difference_chart(
    r: Callable, domain: Domain, step: float = DEFAULT_FD_STEP, name: str = "fd-chart"
) -> SurfaceChart:
    """
    位置関数だけから中心差分で偏導関数を組み立てたチャート

    二階差分は丸め誤差を抑えるため刻み幅 sqrt(step) を使います。
    位置関数は領域の外側 2·sqrt(step) まで評価できる必要があります。
    """
    h1 = step
    h2 = np.sqrt(step)

    def d_u(u, v):
        return (r(u + h1, v) - r(u - h1, v)) / (2.0 * h1)

    def d_v(u, v):
        return (r(u, v + h1) - r(u, v - h1)) / (2.0 * h1)

    def d_uu(u, v):
        return (r(u + h2, v) - 2.0 * r(u, v) + r(u - h2, v)) / (h2 * h2)

    def d_vv(u, v):
        return (r(u, v + h2) - 2.0 * r(u, v) + r(u, v - h2)) / (h2 * h2)

    def d_uv(u, v):
        return (r(u + h2, v + h2) - r(u + h2, v - h2) - r(u - h2, v + h2) + r(u - h2, v - h2)) / (4.0 * h2 * h2)

    return SurfaceChart(
        r=r,
        r_u=d_u,
        r_v=d_v,
        r_uu=d_uu,
        r_uv=d_uv,
        r_vv=d_vv,
        domain=domain,
        derivative_source=DerivativeSource.FINITE_DIFFERENCE,
        fd_step=step,
        name=name,
    )
