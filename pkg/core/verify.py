"""
検証モジュール

解析的な計算経路とは独立した差分オラクル、曲率の定数性スイープ、
分類定理の各主張を数値的に再導出する定理スイートを提供します。

各主張は ClaimSpec として登録され、出典アンカー（位置と原文の引用）を持ちます。
記載どおりには成り立たない主張は discrepancy-documented として注記つきで報告し、
黙って修正はしません。
"""

import logging
import math
import zlib
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from core.curves import (
    classify_parameter_curves,
    frame_curvatures,
    geodesic_curvature,
    normal_curvature,
    printed_geodesic_curvature,
    sample_curve,
)
from core.families import (
    alphas_for_mean_curvature,
    constant_H_profile,
    constant_K_profile,
    constant_profile,
    default_u_range,
    exp_profile,
    flat_helicoidal_profile,
    helicoidal_chart,
    homothetical_domain,
    homothetical_hypersurface,
    linear_profile,
    log_helicoidal_profile,
    parabolic_i_sphere,
    polynomial_profile,
    power_profile,
    translation_chart,
    translation_hypersurface,
)
from core.isotropic import (
    apply_motion,
    compose_motions,
    i_distance,
    inverse_motion,
    is_isotropic_pair,
    motion_preserves_distance,
)
from core.surface import (
    DEFAULT_FD_STEP,
    curvature_at,
    evaluate_forms_grid,
    first_form,
    graph_as_chart,
    graph_curvatures,
    helicoidal_H_expr,
    laplace_grid,
    second_form,
    transform_chart,
)
from utils.config import DEFAULT_RULES, default_tolerances
from utils.error_handler import NotAdmissibleError, NotUnitSpeedError, OutOfDomainError, error_logger
from utils.models import (
    ClaimResult,
    ClaimStatus,
    CurvatureQuantity,
    CurveState,
    DerivativeSource,
    Domain,
    GraphHypersurface,
    GridSpec,
    HelicoidalParams,
    HelicoidalType,
    HomotheticalFamily,
    Motion,
    Point3,
    ProfileFunction,
    SurfaceChart,
    SymForm2,
    TranslationFamily,
    VerificationReport,
)
from utils.performance_utils import PerformanceOptimizer, performance_monitor

logger = logging.getLogger(__name__)

# 二階差分の刻みは一階の何倍か
SECOND_STEP_FACTOR = 100.0
ORACLE_ADMISSIBILITY_TOL = 1e-12

OVERRIDE_KEYS = ("K0", "gamma", "h", "alpha", "H0", "beta")

PROFILE_KINDS = ("flat", "constantK", "constantH", "log", "power", "constant", "linear")


# ===================================================
# 差分オラクル
# ===================================================


def fd_stencil_margin(step: float = DEFAULT_FD_STEP) -> float:
    """差分ステンシルが領域内に収まるために必要な余白"""
    return SECOND_STEP_FACTOR * step


def _richardson(estimate: Callable[[float], np.ndarray], h: float) -> np.ndarray:
    # 誤差 O(h²) の推定2つから O(h⁴) の推定を作る
    return (4.0 * estimate(0.5 * h) - estimate(h)) / 3.0


def _fd_first(r: Callable, U, V, step: float) -> Tuple[np.ndarray, np.ndarray]:
    def along(du: float, dv: float) -> np.ndarray:
        return _richardson(lambda h: (r(U + du * h, V + dv * h) - r(U - du * h, V - dv * h)) / (2.0 * h), step)

    return along(1.0, 0.0), along(0.0, 1.0)


def _fd_second(r: Callable, U, V, step: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    big = SECOND_STEP_FACTOR * step
    centre = r(U, V)

    def pure(du: float, dv: float) -> np.ndarray:
        return _richardson(
            lambda h: (r(U + du * h, V + dv * h) - 2.0 * centre + r(U - du * h, V - dv * h)) / (h * h),
            big,
        )

    def mixed(h: float) -> np.ndarray:
        return (r(U + h, V + h) - r(U + h, V - h) - r(U - h, V + h) + r(U - h, V - h)) / (4.0 * h * h)

    return pure(1.0, 0.0), _richardson(mixed, big), pure(0.0, 1.0)


def _bracket(r_u: np.ndarray, r_v: np.ndarray, r_ij: np.ndarray) -> np.ndarray:
    # det(r_u, r_v, r_ij) を 3×3 行列式として直接評価
    stacked = np.stack([r_u, r_v, r_ij])
    return np.linalg.det(np.moveaxis(stacked, (0, 1), (-2, -1)))


def fd_forms_grid(chart: SurfaceChart, U, V, step: float = DEFAULT_FD_STEP) -> Dict[str, np.ndarray]:
    """
    位置のサンプルだけから基本形式と曲率を計算（格子版）

    一階微分は刻み step、二階微分は刻み 100·step の中心差分を
    それぞれリチャードソン外挿します。チャートの偏導関数場は使いません。

    Returns:
        Dict[str, np.ndarray]: evaluate_forms_grid と同じキー

    Raises:
        OutOfDomainError: ステンシルが領域からはみ出す場合
        NotAdmissibleError: det g <= 1e-12
    """
    margin = fd_stencil_margin(step)
    if not chart.domain.contains(U, V, margin=margin):
        raise OutOfDomainError(
            f"fd_forms_oracle: 差分ステンシル（余白 {margin:g}）がチャート '{chart.name}' の領域からはみ出します",
            u=U,
            v=V,
            domain=chart.domain,
            operation="fd_forms_oracle",
        )
    r_u, r_v = _fd_first(chart.r, U, V, step)
    r_uu, r_uv, r_vv = _fd_second(chart.r, U, V, step)

    g11 = r_u[0] ** 2 + r_u[1] ** 2
    g12 = r_u[0] * r_v[0] + r_u[1] * r_v[1]
    g22 = r_v[0] ** 2 + r_v[1] ** 2
    det_g = g11 * g22 - g12**2
    if np.any(det_g <= ORACLE_ADMISSIBILITY_TOL):
        raise NotAdmissibleError(
            f"fd_forms_oracle: 等方接平面を検出しました (min det g = {float(np.min(det_g)):.3e})",
            u=U,
            v=V,
            det_g=float(np.min(det_g)),
            operation="fd_forms_oracle",
        )
    scale = np.sqrt(det_g)
    h11 = _bracket(r_u, r_v, r_uu) / scale
    h12 = _bracket(r_u, r_v, r_uv) / scale
    h22 = _bracket(r_u, r_v, r_vv) / scale
    return {
        "g11": g11, "g12": g12, "g22": g22,
        "h11": h11, "h12": h12, "h22": h22,
        "det_g": det_g,
        "K": (h11 * h22 - h12**2) / det_g,
        "H": (g11 * h22 - 2.0 * g12 * h12 + g22 * h11) / (2.0 * det_g),
    }


def fd_forms_oracle(
    chart: SurfaceChart, u: float, v: float, step: float = DEFAULT_FD_STEP
) -> Tuple[SymForm2, SymForm2]:
    """
    1点での差分オラクル

    (u, v) は各辺から 100·step 以上内側にある必要があります。

    Returns:
        Tuple[SymForm2, SymForm2]: (第一基本形式, 第二基本形式)
    """
    forms = fd_forms_grid(chart, float(u), float(v), step)
    first = SymForm2(float(forms["g11"]), float(forms["g12"]), float(forms["g22"]))
    second = SymForm2(float(forms["h11"]), float(forms["h12"]), float(forms["h22"]))
    return first, second


def fd_curve_oracle(
    chart: SurfaceChart,
    u_of_s: Callable[[float], float],
    v_of_s: Callable[[float], float],
    s: float,
    step: float = DEFAULT_FD_STEP,
) -> Tuple[float, float]:
    """
    曲線上の位置のサンプルだけから (κ_g, κ_n) を計算

    パラメータ s は弧長でなくてもかまいません（差分で求めた速さで取り直します）。
    σ は上面図で t を +90° 回したベクトルを、差分で求めた接平面に持ち上げたものです。

    Raises:
        OutOfDomainError: ステンシルが領域からはみ出す場合
        NotUnitSpeedError: 上面図での速さが0
    """
    big = SECOND_STEP_FACTOR * step
    for t in (s - big, s, s + big):
        if not chart.domain.contains(u_of_s(t), v_of_s(t), margin=big):
            raise OutOfDomainError(
                f"fd_curve_oracle: s={t} の点がチャート '{chart.name}' の領域（余白 {big:g}）外です",
                u=u_of_s(t),
                v=v_of_s(t),
                domain=chart.domain,
                operation="fd_curve_oracle",
            )

    def position(t: float) -> np.ndarray:
        return np.asarray(chart.r(float(u_of_s(t)), float(v_of_s(t))), dtype=float)

    centre = position(s)
    velocity = _richardson(lambda h: (position(s + h) - position(s - h)) / (2.0 * h), step)
    accel = _richardson(lambda h: (position(s + h) - 2.0 * centre + position(s - h)) / (h * h), big)

    speed = math.hypot(velocity[0], velocity[1])
    if speed == 0.0:
        raise NotUnitSpeedError(
            "fd_curve_oracle: 上面図での速さが0のため弧長に取り直せません", speed_sq=0.0, operation="fd_curve_oracle"
        )
    d_speed = (velocity[0] * accel[0] + velocity[1] * accel[1]) / speed
    tangent = velocity / speed
    curvature_vector = (accel - (d_speed / speed) * velocity) / (speed * speed)

    sigma_top = np.array([-tangent[1], tangent[0]])
    u, v = float(u_of_s(s)), float(v_of_s(s))
    r_u, r_v = _fd_first(chart.r, u, v, step)
    coeffs = np.linalg.solve(np.array([[r_u[0], r_v[0]], [r_u[1], r_v[1]]]), sigma_top)
    sigma3 = coeffs[0] * r_u[2] + coeffs[1] * r_v[2]

    kappa_g = float(curvature_vector[0] * sigma_top[0] + curvature_vector[1] * sigma_top[1])
    kappa_n = float(curvature_vector[2] - kappa_g * sigma3)
    return kappa_g, kappa_n


# ===================================================
# 定数性スイープ
# ===================================================


def quantity_grid(
    chart: SurfaceChart,
    quantity: CurvatureQuantity,
    U,
    V,
    source: DerivativeSource = DerivativeSource.ANALYTIC,
    step: float = DEFAULT_FD_STEP,
) -> np.ndarray:
    """
    格子上の K / H_def / H_section3_expr

    H_section3_expr は螺旋面（解析経路）では g′/u + g″、それ以外は 2·H_def です。
    """
    if source is DerivativeSource.FINITE_DIFFERENCE:
        forms = fd_forms_grid(chart, U, V, step)
    else:
        forms = evaluate_forms_grid(chart, U, V)

    if quantity is CurvatureQuantity.K:
        return forms["K"]
    if quantity is CurvatureQuantity.H_DEF:
        return forms["H"]
    params = chart.metadata.get("helicoidal")
    if source is DerivativeSource.ANALYTIC and params is not None:
        return np.broadcast_to(helicoidal_H_expr(params.profile, U), np.shape(forms["H"]))
    return 2.0 * forms["H"]


def _clip_grid(grid: GridSpec, domain: Domain) -> GridSpec:
    return GridSpec(
        (max(grid.u_range[0], domain.u_min), min(grid.u_range[1], domain.u_max)),
        (max(grid.v_range[0], domain.v_min), min(grid.v_range[1], domain.v_max)),
        grid.nu,
        grid.nv,
    )


def constancy_sweep(
    chart: SurfaceChart,
    quantity: CurvatureQuantity,
    grid: GridSpec,
    source: DerivativeSource = DerivativeSource.ANALYTIC,
    step: float = DEFAULT_FD_STEP,
) -> Tuple[float, float]:
    """
    格子上で量を評価し、平均と平均からの最大偏差を返す

    差分経路では格子をステンシルの余白だけ内側に縮めます。

    Returns:
        Tuple[float, float]: (mean, max |value − mean|)

    Raises:
        NotAdmissibleError: いずれかの格子点で det g <= 許容値（座標つき）
    """
    if source is DerivativeSource.FINITE_DIFFERENCE:
        grid = _clip_grid(grid, chart.domain.inset(fd_stencil_margin(step)))
    U, V = grid.mesh()
    values = quantity_grid(chart, quantity, U, V, source, step)
    mean = float(np.mean(values))
    deviation = float(np.max(np.abs(values - mean)))
    logger.debug(
        f"定数性スイープ: {chart.name}, {quantity.value} ({source.value}) 平均 {mean:.12g}, 最大偏差 {deviation:.3e}"
    )
    return mean, deviation


# ===================================================
# 主張の登録
# ===================================================


@dataclass
class ClaimOutcome:
    """検証関数の戻り値"""

    max_abs_error: float
    passed: bool
    notes: str = ""


@dataclass
class ClaimContext:
    """
    1つの主張の実行に渡す設定

    乱数生成器はシードと項目IDから作るので、実行順や並列度に依存しません。
    """

    claim_id: str
    seed: int
    tolerances: Dict[str, float] = field(default_factory=default_tolerances)
    overrides: Dict[str, float] = field(default_factory=dict)
    grid: Dict[str, int] = field(default_factory=lambda: dict(DEFAULT_RULES["grid"]))
    draws: Dict[str, Any] = field(default_factory=lambda: dict(DEFAULT_RULES["random_draws"]))
    rng: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self):
        self.rng = np.random.default_rng([self.seed % 2**32, zlib.crc32(self.claim_id.encode("utf-8"))])

    def tol(self, name: str) -> float:
        return float(self.tolerances[name])

    def override(self, name: str, default: float) -> float:
        return float(self.overrides.get(name, default))

    def has_override(self, *names: str) -> bool:
        return any(name in self.overrides for name in names)

    def grid_for(self, domain: Domain) -> GridSpec:
        return GridSpec.from_domain(domain, int(self.grid["nu"]), int(self.grid["nv"]))

    def draw_range(self, name: str) -> Tuple[float, float]:
        lo, hi = self.draws[name]
        return float(lo), float(hi)


@dataclass(frozen=True)
class ClaimSpec:
    """
    検証項目の登録情報

    Attributes:
        id: 項目ID
        location: 出典の位置
        quote: 原文の引用
        check: 検証関数
        documented: 記載との不整合を注記つきで報告する項目か
    """

    id: str
    location: str
    quote: str
    check: Callable[[ClaimContext], ClaimOutcome]
    documented: bool = False

    @property
    def anchor(self) -> str:
        return f'{self.location}: "{self.quote}"'


CLAIMS: List[ClaimSpec] = []


def _claim(claim_id: str, location: str, quote: str, documented: bool = False):
    def register(check: Callable[[ClaimContext], ClaimOutcome]) -> Callable[[ClaimContext], ClaimOutcome]:
        CLAIMS.append(ClaimSpec(claim_id, location, quote, check, documented))
        return check

    return register


def list_claims() -> List[Tuple[str, str]]:
    """登録順の (項目ID, アンカー) 一覧"""
    return [(spec.id, spec.anchor) for spec in CLAIMS]


# ===================================================
# 乱択ドロー
# ===================================================


def _signed(rng: np.random.Generator, lo: float, hi: float) -> float:
    magnitude = rng.uniform(lo, hi)
    return float(magnitude if rng.integers(2) else -magnitude)


def draw_helicoidal_profile(
    rng: np.random.Generator, h: float, kinds: Sequence[str] = PROFILE_KINDS
) -> ProfileFunction:
    """実装済みの母線の族から1つを乱択"""
    kind = kinds[int(rng.integers(len(kinds)))]
    if kind == "flat":
        return flat_helicoidal_profile(rng.uniform(0.5, 2.0), h)
    if kind == "constantK":
        return constant_K_profile(rng.uniform(0.25, 2.0), rng.uniform(-1.0, 2.0), h)
    if kind == "constantH":
        return constant_H_profile(rng.uniform(-2.0, 2.0), _signed(rng, 0.5, 2.0), rng.uniform(-1.0, 1.0))
    if kind == "log":
        return log_helicoidal_profile(_signed(rng, 0.5, 2.0), rng.uniform(-1.0, 1.0))
    if kind == "power":
        return power_profile(rng.uniform(1.5, 3.0), rng.uniform(0.5, 2.0))
    if kind == "constant":
        return constant_profile(rng.uniform(-1.0, 1.0))
    return linear_profile(_signed(rng, 0.5, 2.0), rng.uniform(-1.0, 1.0))


def draw_u0(rng: np.random.Generator, profile: ProfileFunction, bounds: Tuple[float, float]) -> float:
    """母線の有効区間と bounds の共通部分から u0 を乱択"""
    lo, hi = profile.valid_range
    start = max(bounds[0], 1.01 * lo) if lo > 0 else bounds[0]
    stop = min(bounds[1], hi - 0.01 * (hi - max(lo, 0.0))) if math.isfinite(hi) else bounds[1]
    if not start < stop:
        start, stop = default_u_range(profile)
    return float(rng.uniform(start, stop))


def _draw_motion(rng: np.random.Generator) -> Motion:
    a, b, c = rng.uniform(-5.0, 5.0, size=3)
    d, e = rng.uniform(-2.0, 2.0, size=2)
    phi = float(rng.uniform(0.0, 2.0 * math.pi))
    return Motion(a=float(a), b=float(b), c=float(c), d=float(d), e=float(e), phi=phi)


def _draw_point3(rng: np.random.Generator) -> Point3:
    return Point3(*(float(x) for x in rng.uniform(-5.0, 5.0, size=3)))


def _draw_helicoidal_chart(rng: np.random.Generator) -> SurfaceChart:
    # 母線の根号の特異点から 0.5 以上離し、u の幅は 2 に限る
    h = float(rng.uniform(-2.0, 2.0))
    profile = draw_helicoidal_profile(rng, h)
    chart_type = HelicoidalType.FIRST if rng.integers(2) == 0 else HelicoidalType.SECOND
    lo = default_u_range(profile)[0]
    if profile.valid_range[0] > 0:
        lo = max(lo, profile.valid_range[0] + 0.5)
    return helicoidal_chart(HelicoidalParams(profile, h, chart_type), (lo, lo + 2.0), (-math.pi, math.pi))


def _draw_translation_chart(rng: np.random.Generator) -> SurfaceChart:
    family = list(TranslationFamily)[int(rng.integers(len(TranslationFamily)))]
    params: Dict[str, float] = {}
    if family is TranslationFamily.CONSTANT_K_I:
        params = {"a1": _signed(rng, 0.5, 2.0), "K0": _signed(rng, 0.5, 2.0), "b1": rng.uniform(-1, 1)}
    elif family is TranslationFamily.CONSTANT_H_I:
        params = {"H0": rng.uniform(-2, 2), "b1": rng.uniform(-1, 1), "b3": rng.uniform(-1, 1)}
    elif family is TranslationFamily.CONSTANT_H_II:
        params = {
            "H0": rng.uniform(-2, 2),
            "a1": _signed(rng, 0.5, 2.0),
            "a2": _signed(rng, 0.5, 2.0),
            "b4": rng.uniform(-1, 1),
        }
    return translation_chart(family, params)


def _draw_graph_chart(rng: np.random.Generator) -> SurfaceChart:
    if rng.integers(2) == 0:
        return parabolic_i_sphere(_signed(rng, 0.5, 2.0), *rng.uniform(-1.0, 1.0, size=3))
    gh = homothetical_hypersurface(
        HomotheticalFamily.B_LINEAR,
        {"a": _signed(rng, 0.5, 2.0), "b": rng.uniform(-1, 1), "c": _signed(rng, 0.5, 2.0), "d": rng.uniform(-1, 1)},
    )
    return graph_as_chart(gh, Domain(-1.0, 1.0, -1.0, 1.0))


def _draw_oracle_chart(rng: np.random.Generator) -> SurfaceChart:
    kind = int(rng.integers(3))
    if kind == 0:
        return _draw_helicoidal_chart(rng)
    if kind == 1:
        return _draw_translation_chart(rng)
    return _draw_graph_chart(rng)


def _draw_interior(rng: np.random.Generator, domain: Domain, margin: float) -> Tuple[float, float]:
    u = rng.uniform(domain.u_min + margin, domain.u_max - margin)
    v = rng.uniform(domain.v_min + margin, domain.v_max - margin)
    return float(u), float(v)


def _max_abs(values) -> float:
    return float(np.max(np.abs(np.asarray(values, dtype=float)), initial=0.0))


def _polar_state(centre: Tuple[float, float], radius: float, angle: float) -> CurveState:
    """上面図の円 (中心 centre, 半径 radius) 上の単位速さの状態を極座標で表す"""
    cx, cy = centre
    px, py = cx + radius * math.cos(angle), cy + radius * math.sin(angle)
    tx, ty = -math.sin(angle), math.cos(angle)
    ax, ay = -math.cos(angle) / radius, -math.sin(angle) / radius
    u = math.hypot(px, py)
    du = (px * tx + py * ty) / u
    dv = (px * ty - py * tx) / (u * u)
    ddu = (tx * tx + ty * ty + px * ax + py * ay - du * du) / u
    ddv = (px * ay - py * ax) / (u * u) - 2.0 * du * dv / u
    return CurveState(u=u, v=math.atan2(py, px), du=du, dv=dv, ddu=ddu, ddv=ddv)


# ===================================================
# 螺旋面の主張
# ===================================================


@_claim("Prop2.2", "Prop 2.2", "Then it is isotropic minimal and has the form")
def _check_harmonic_helicoidal(ctx: ClaimContext) -> ClaimOutcome:
    h = ctx.override("h", 1.0)
    alphas = [ctx.override("alpha", 1.0)] if ctx.has_override("alpha") else [1.0, -2.0]
    worst_laplace = worst_mean = 0.0
    for alpha in alphas:
        chart = helicoidal_chart(HelicoidalParams(log_helicoidal_profile(alpha), h), (0.5, 5.0))
        U, V = ctx.grid_for(chart.domain).mesh()
        worst_laplace = max(worst_laplace, _max_abs(laplace_grid(chart, U, V)))
        worst_mean = max(worst_mean, _max_abs(evaluate_forms_grid(chart, U, V)["H"]))

    # 調和でない母線では Δr₃ = g′/u + g″ が r₃ に比例しない
    control = helicoidal_chart(HelicoidalParams(polynomial_profile([0.0, 0.0, 1.0]), h), (0.5, 5.0))
    control_laplace = float(laplace_grid(control, 2.0, 1.0)[2])

    error = max(worst_laplace, worst_mean)
    passed = worst_laplace <= ctx.tol("laplacian") and worst_mean <= ctx.tol("constancy")
    notes = (
        f"g = α ln u (α ∈ {alphas}), h = {h}: max |Δr_i| = {worst_laplace:.3e}, max |H_def| = {worst_mean:.3e}; "
        f"control g = u² gives Δr3 = {control_laplace:.6g} at (2, 1)"
    )
    return ClaimOutcome(error, passed, notes)


@_claim("Thm3.1.i", "Thm 3.1(i)", "when K0 = 0, M2 has the form")
def _check_flat_helicoidal(ctx: ClaimContext) -> ClaimOutcome:
    alpha, h = ctx.override("alpha", 1.0), ctx.override("h", 1.0)
    profile = flat_helicoidal_profile(alpha, h)
    chart = helicoidal_chart(HelicoidalParams(profile, h), default_u_range(profile), (0.0, 4.0 * math.pi))
    grid = ctx.grid_for(chart.domain)
    U, V = grid.mesh()
    analytic = _max_abs(quantity_grid(chart, CurvatureQuantity.K, U, V))

    step = ctx.tol("fd_step")
    fd_grid = grid.inset(fd_stencil_margin(step))
    U_fd, V_fd = fd_grid.mesh()
    finite = _max_abs(quantity_grid(chart, CurvatureQuantity.K, U_fd, V_fd, DerivativeSource.FINITE_DIFFERENCE, step))

    us = U[:, 0]
    identity = _max_abs(us**3 * profile.g1(us) * profile.g2(us) - h * h)

    passed = analytic <= ctx.tol("constancy") and finite <= ctx.tol("fd_constancy") and identity <= ctx.tol("constancy")
    notes = (
        f"α = {alpha}, h = {h}, u ∈ [{chart.domain.u_min:.6g}, {chart.domain.u_max:.6g}], v ∈ [0, 4π]: "
        f"max |K| analytic {analytic:.3e}, finite-difference {finite:.3e}; max |u³g′g″ − h²| = {identity:.3e}"
    )
    return ClaimOutcome(max(analytic, identity), passed, notes)


@_claim("Thm3.1.ii", "Thm 3.1(ii)", "otherwise, i.e. K0 ≠ 0, it is of the form")
def _check_constant_K_helicoidal(ctx: ClaimContext) -> ClaimOutcome:
    if ctx.has_override("K0", "gamma", "h"):
        triples = [(ctx.override("K0", 0.5), ctx.override("gamma", 1.0), ctx.override("h", 1.0))]
    else:
        triples = [(0.5, 1.0, 1.0), (2.0, 0.0, 0.5), (-1.0, 10.0, 0.0)]

    error = 0.0
    passed = True
    lines = []
    for K0, gamma, h in triples:
        profile = constant_K_profile(K0, gamma, h)
        chart = helicoidal_chart(HelicoidalParams(profile, h))
        grid = ctx.grid_for(chart.domain)
        mean, deviation = constancy_sweep(chart, CurvatureQuantity.K, grid)
        U, V = grid.mesh()
        worst = _max_abs(quantity_grid(chart, CurvatureQuantity.K, U, V) - K0)
        us = U[:, 0]
        target = K0 * us + h * h / us**3
        ode = _max_abs((profile.g1(us) * profile.g2(us) - target) / np.maximum(1.0, np.abs(target)))
        error = max(error, worst)
        passed = passed and worst <= ctx.tol("constancy") and ode <= ctx.tol("constancy")
        lines.append(
            f"(K0, γ, h) = ({K0:g}, {gamma:g}, {h:g}) on u ∈ [{chart.domain.u_min:.6g}, {chart.domain.u_max:.6g}]: "
            f"mean K = {mean:.12g}, max dev {deviation:.3e}, max |K − K0| = {worst:.3e}"
        )
    return ClaimOutcome(error, passed, "; ".join(lines))


def _constant_H_chart(ctx: ClaimContext) -> Tuple[SurfaceChart, float]:
    H0 = ctx.override("H0", -1.0)
    profile = constant_H_profile(H0, ctx.override("alpha", 1.0), ctx.override("beta", 0.0))
    chart = helicoidal_chart(HelicoidalParams(profile, ctx.override("h", 1.5)), (1.0, 5.0), (-math.pi, math.pi))
    return chart, H0


@_claim("Thm3.3", "Thm 3.3", "with constant isotropic mean curvature H0. Then it has the following form")
def _check_constant_H_helicoidal(ctx: ClaimContext) -> ClaimOutcome:
    chart, H0 = _constant_H_chart(ctx)
    U, V = ctx.grid_for(chart.domain).mesh()
    error = _max_abs(quantity_grid(chart, CurvatureQuantity.H_SECTION3_EXPR, U, V) - H0)
    passed = error <= ctx.tol("mean_expr")
    notes = f"{chart.name}, u ∈ [1, 5], v ∈ [−π, π]: max |g′/u + g″ − H0| = {error:.3e} (H0 = {H0:g})"
    return ClaimOutcome(error, passed, notes)


@_claim(
    "H.factor2",
    "Thm 3.3 / mean curvature definition",
    "The isotropic mean curvature H of M2 is given by",
    documented=True,
)
def _check_mean_curvature_factor(ctx: ClaimContext) -> ClaimOutcome:
    chart, H0 = _constant_H_chart(ctx)
    U, V = ctx.grid_for(chart.domain).mesh()
    expr_error = _max_abs(quantity_grid(chart, CurvatureQuantity.H_SECTION3_EXPR, U, V) - H0)
    mean_H, dev_H = constancy_sweep(chart, CurvatureQuantity.H_DEF, ctx.grid_for(chart.domain))
    def_error = _max_abs(quantity_grid(chart, CurvatureQuantity.H_DEF, U, V) - 0.5 * H0)
    passed = expr_error <= ctx.tol("mean_expr") and def_error <= ctx.tol("constancy")
    notes = (
        f"H_section3_expr = g′/u + g″ ≡ {H0:g} (max err {expr_error:.3e}) while the defined "
        f"H = (g11h22 − 2g12h12 + g22h11)/(2 det g) ≡ {mean_H:.12g} (max dev {dev_H:.3e}). "
        "The helicoidal mean curvature expression omits the factor 1/2 of the definition, so the "
        "constant-H family has defined H = H0/2. Both conventions are reported; H_def follows the definition."
    )
    return ClaimOutcome(max(expr_error, def_error), passed, notes)


@_claim("Thm4.1", "Thm 4.1", "are geodesics but not u-parameter curves")
def _check_geodesic_parameter_curves(ctx: ClaimContext) -> ClaimOutcome:
    tol = ctx.tol("classification")
    u_bounds, h_bounds = ctx.draw_range("u0"), ctx.draw_range("h")
    error = 0.0
    passed = True
    for _ in range(int(ctx.draws["count"])):
        h = float(ctx.rng.uniform(*h_bounds))
        profile = draw_helicoidal_profile(ctx.rng, h)
        u0 = draw_u0(ctx.rng, profile, u_bounds)
        v0 = float(ctx.rng.uniform(0.0, 2.0 * math.pi))
        curves = classify_parameter_curves(profile, h, u0, v0, tol)
        error = max(error, abs(curves.u_curve.kappa_g), abs(curves.v_curve.kappa_g - 1.0 / u0))
        passed = passed and curves.u_curve.is_geodesic and not curves.v_curve.is_geodesic

    # 上面図の円 (中心 (2, 0), 半径 1) の点 (2, 1) で記載の式と標構分解を比較
    state = _polar_state((2.0, 0.0), 1.0, 0.5 * math.pi)
    plane = helicoidal_chart(HelicoidalParams(constant_profile(0.0), 0.0))
    frame_value, _, _ = frame_curvatures(plane, state)
    printed = printed_geodesic_curvature(state)
    polar = geodesic_curvature(plane.metadata["helicoidal"].profile, 0.0, state)
    passed = passed and abs(polar - frame_value) <= tol
    notes = (
        f"{ctx.draws['count']} draws: v = const curves (u_curve) have |κ_g| ≤ {tol:g}, "
        "u = const curves have κ_g = 1/u0 "
        f"(max err {error:.3e}). On a general curve the printed polar expression disagrees with r̈ = κ_g σ + κ_n N: "
        f"unit circle about top-view (2, 0) at (2, 1) gives printed {printed:.6g}, frame {frame_value:.6g}, "
        f"implemented {polar:.6g}"
    )
    return ClaimOutcome(error, passed, notes)


def _asymptotic_draws(ctx: ClaimContext, kinds: Sequence[str]) -> List[Tuple[ProfileFunction, float, float]]:
    u_bounds, h_bounds = ctx.draw_range("u0"), ctx.draw_range("h")
    draws = []
    for _ in range(int(ctx.draws["count"])):
        h = float(ctx.rng.uniform(*h_bounds))
        profile = draw_helicoidal_profile(ctx.rng, h, kinds)
        draws.append((profile, h, draw_u0(ctx.rng, profile, u_bounds)))
    return draws


@_claim("Thm4.2.i", "Thm 4.2(i)", "are asymptotic curves if and only if it is a helicoid from Euclidean perspective")
def _check_asymptotic_u_parameter(ctx: ClaimContext) -> ClaimOutcome:
    tol = ctx.tol("classification")
    error = 0.0
    passed = True
    helicoids = 0
    for profile, h, u0 in _asymptotic_draws(ctx, PROFILE_KINDS):
        curves = classify_parameter_curves(profile, h, u0, 0.0, tol)
        slope = float(profile.g1(u0))
        error = max(error, abs(curves.v_curve.kappa_n - slope / u0))
        # g が定数 ⇔ g′ が区間全体で0
        helicoid = _max_abs(profile.g1(np.linspace(*default_u_range(profile), 9))) == 0.0
        helicoids += helicoid
        if helicoid != curves.v_curve.is_asymptotic:
            passed = False
    passed = passed and error <= tol and helicoids > 0
    notes = (
        f"u = const curves (v_curve) have κ_n = g′(u0)/u0 (max err {error:.3e}); asymptotic exactly for the "
        f"{helicoids} constant-g draws (Euclidean helicoids)"
    )
    return ClaimOutcome(error, passed, notes)


@_claim("Thm4.2.ii", "Thm 4.2(ii)", "are asymptotic curves if and only if g is a linear function", documented=True)
def _check_asymptotic_v_parameter(ctx: ClaimContext) -> ClaimOutcome:
    tol = ctx.tol("classification")
    error = 0.0
    passed = True
    for profile, h, u0 in _asymptotic_draws(ctx, ("linear",)):
        slope = float(profile.g1(u0))
        curves = classify_parameter_curves(profile, h, u0, 0.0, tol)
        error = max(error, abs(curves.u_curve.kappa_n), abs(curves.v_curve.kappa_n - slope / u0))
        passed = passed and curves.u_curve.is_asymptotic and not curves.v_curve.is_asymptotic
    passed = passed and error <= tol
    notes = (
        "With g linear (g′ = c ≠ 0) the v = const curve (u_curve) has κ_n = g″ = 0 and is asymptotic, which "
        "matches the statement under the naming used for geodesics (v-parameter curve = v const). The u = const "
        "curve (v_curve, v varies) has κ_n = c/u0 ≠ 0, so under the reading 'v varies' the asymptotic condition "
        f"is g constant, not g linear. max err {error:.3e}"
    )
    return ClaimOutcome(error, passed, notes)


@_claim("Thm4.3", "Thm 4.3", "are lines of curvature if and only if those are surfaces of revolution")
def _check_lines_of_curvature(ctx: ClaimContext) -> ClaimOutcome:
    tol = ctx.tol("classification")
    revolution_tol = ctx.tol("torsion_revolution")
    u_bounds, h_bounds = ctx.draw_range("u0"), ctx.draw_range("h")
    revolution_error = pitch_error = 0.0
    passed = True
    for index in range(int(ctx.draws["count"])):
        if index % 2 == 0:
            h = 0.0
        else:
            h = _signed(ctx.rng, 0.1, max(abs(h_bounds[0]), abs(h_bounds[1])))
        profile = draw_helicoidal_profile(ctx.rng, h)
        u0 = draw_u0(ctx.rng, profile, u_bounds)
        curves = classify_parameter_curves(profile, h, u0, float(ctx.rng.uniform(0.0, 2.0 * math.pi)), tol)
        u_num, v_num = curves.u_curve.tau_g_numerator, curves.v_curve.tau_g_numerator
        if h == 0.0:
            revolution_error = max(revolution_error, abs(u_num), abs(v_num))
            passed = passed and abs(u_num) <= revolution_tol and abs(v_num) <= revolution_tol
        else:
            pitch_error = max(pitch_error, abs(u_num + h / u0), abs(v_num - h / u0))
            passed = passed and not curves.u_curve.is_line_of_curvature and not curves.v_curve.is_line_of_curvature
    passed = passed and pitch_error <= tol
    notes = (
        f"h = 0: max |τ_g numerator| = {revolution_error:.3e}; h ≠ 0: u_curve numerator = −h/u0, "
        f"v_curve numerator = h/u0 (max err {pitch_error:.3e})"
    )
    return ClaimOutcome(max(revolution_error, pitch_error), passed, notes)


@_claim("Frame", "Curves on helicoidal surfaces", "We can take a side tangential vector")
def _check_frame_decomposition(ctx: ClaimContext) -> ClaimOutcome:
    tol, fd_tol, frame_tol = ctx.tol("classification"), ctx.tol("classification_fd"), ctx.tol("frame")
    formula_error = oracle_error = residual = 0.0
    for _ in range(10):
        h = float(ctx.rng.uniform(-2.0, 2.0))
        profile = draw_helicoidal_profile(ctx.rng, h, ("flat", "constantK", "constantH", "log", "power"))
        lo, hi = default_u_range(profile)
        hi = min(hi, lo + 2.0)
        chart = helicoidal_chart(HelicoidalParams(profile, h), (lo, hi))
        u0 = 0.5 * (lo + hi)
        a = 0.25 * (hi - lo) * float(ctx.rng.uniform(0.2, 1.0))
        b, c = float(ctx.rng.uniform(0.2, 1.0)), float(ctx.rng.uniform(-0.3, 0.3))

        def u_of(t, u0=u0, a=a):
            return u0 + a * math.sin(t)

        def v_of(t, b=b, c=c):
            return 1.0 + b * t + c * t * t

        derivatives = (
            lambda t, a=a: a * math.cos(t),
            lambda t, b=b, c=c: b + 2.0 * c * t,
            lambda t, a=a: -a * math.sin(t),
            lambda t, c=c: 2.0 * c,
        )
        ts = np.linspace(0.05, 0.95, 7)
        for t, sample in zip(ts, sample_curve(chart, u_of, v_of, ts, derivatives)):
            state = sample.state
            formula_error = max(
                formula_error,
                abs(sample.classification.kappa_g - geodesic_curvature(profile, h, state)),
                abs(sample.classification.kappa_n - normal_curvature(profile, h, state)),
            )
            kappa_g, kappa_n = fd_curve_oracle(chart, u_of, v_of, float(t), ctx.tol("fd_step"))
            oracle_error = max(
                oracle_error,
                abs(kappa_g - sample.classification.kappa_g),
                abs(kappa_n - sample.classification.kappa_n),
            )
            fg, fn, sigma = frame_curvatures(chart, state)
            accel = (
                chart.r_uu(state.u, state.v) * state.du**2
                + 2.0 * chart.r_uv(state.u, state.v) * state.du * state.dv
                + chart.r_vv(state.u, state.v) * state.dv**2
                + chart.r_u(state.u, state.v) * state.ddu
                + chart.r_v(state.u, state.v) * state.ddv
            )
            residual = max(residual, _max_abs(accel - fg * sigma - fn * np.array([0.0, 0.0, 1.0])))
    passed = formula_error <= tol and oracle_error <= fd_tol and residual <= frame_tol
    notes = (
        f"10 random curves on helicoidal charts: polar formulas vs frame decomposition {formula_error:.3e}, "
        f"finite-difference curve oracle {oracle_error:.3e}, |r̈ − κ_g σ − κ_n N| {residual:.3e}"
    )
    return ClaimOutcome(formula_error, passed, notes)


# ===================================================
# 平行移動曲面の主張
# ===================================================


def _translation_values(
    ctx: ClaimContext,
    family: TranslationFamily,
    params: Dict[str, float],
    quantity: CurvatureQuantity,
    **kwargs,
) -> np.ndarray:
    chart = translation_chart(family, params, **kwargs)
    U, V = ctx.grid_for(chart.domain).mesh()
    return quantity_grid(chart, quantity, U, V)


@_claim("Thm2.1.i", "Thm 2.1(i)", "with constant relative curvature K0", documented=True)
def _check_translation_constant_K_i(ctx: ClaimContext) -> ClaimOutcome:
    configs = [{"a1": 1.0, "K0": 1.0}, {"a1": 2.0, "K0": -0.5, "b1": 0.7, "b2": 0.3, "b3": -1.0}]
    error = 0.0
    passed = True
    lines = []
    for params in configs:
        K = _translation_values(ctx, TranslationFamily.CONSTANT_K_I, params, CurvatureQuantity.K)
        K0 = params["K0"]
        deviation = _max_abs(K - 4.0 * K0)
        error = max(error, deviation)
        passed = passed and deviation <= ctx.tol("constancy") * max(1.0, abs(4.0 * K0))
        lines.append(f"K0 = {K0:g}: K ≡ {float(np.mean(K)):.12g}")
    notes = (
        "; ".join(lines)
        + ". K is constant but equals 4·K0, not the K0 named in the statement "
        "(the quadratic coefficients a1 and K0/a1 each contribute a factor 2 to the Hessian)"
    )
    return ClaimOutcome(error, passed, notes)


@_claim("Thm2.1.ii", "Thm 2.1(ii)", "where a_i are nonzero constants and b_j some constants")
def _check_translation_constant_K_ii(ctx: ClaimContext) -> ClaimOutcome:
    configs = [
        {"a2": 1.0, "a3": 1.0, "a4": 1.0, "K0": 1.0, "b5": 1.0},
        {"a2": 0.5, "a3": 3.0, "a4": -2.0, "K0": -1.0, "b4": 0.3, "b5": -1.0, "b6": 0.2},
    ]
    error = 0.0
    passed = True
    lines = []
    for params in configs:
        K = _translation_values(ctx, TranslationFamily.CONSTANT_K_II, params, CurvatureQuantity.K)
        expected = 18.0 * params["a2"] * params["K0"] / params["a3"] ** 2
        deviation = _max_abs(K - expected)
        error = max(error, deviation)
        passed = passed and deviation <= ctx.tol("constancy") * max(1.0, abs(expected))
        lines.append(f"a2 = {params['a2']:g}, a3 = {params['a3']:g}, K0 = {params['K0']:g}: K ≡ {expected:.12g}")
    notes = "sub-family b5 = a2·a4, where K = 18·a2·K0/a3²; " + "; ".join(lines)
    return ClaimOutcome(error, passed, notes)


@_claim(
    "Thm2.2.i",
    "Thm 2.2(i)",
    "with constant isotropic mean curvature H0. Then it is determined by one of the following",
)
def _check_translation_constant_H_i(ctx: ClaimContext) -> ClaimOutcome:
    cubic = polynomial_profile([0.0, 0.0, 0.0, 1.0], name="u³")
    configs = [({"H0": 0.5}, None), ({"H0": -1.2, "b1": 0.4, "b2": 1.0, "b3": 0.4}, cubic)]
    error = 0.0
    for params, f2 in configs:
        H = _translation_values(ctx, TranslationFamily.CONSTANT_H_I, params, CurvatureQuantity.H_DEF, f2=f2)
        error = max(error, _max_abs(H - params["H0"]))
    notes = "H ≡ H0 + (b1 − b3)·f2″/2; checked with f2 linear and with b1 = b3, f2 = u³"
    return ClaimOutcome(error, error <= ctx.tol("constancy"), notes)


@_claim("Thm2.2.ii", "Thm 2.2(ii)", "(H0 − a1)(f1)² + a2(g2)²")
def _check_translation_constant_H_ii(ctx: ClaimContext) -> ClaimOutcome:
    configs = [
        {"H0": 1.0, "a1": 1.0, "a2": 1.0},
        {"H0": -0.3, "a1": 2.0, "a2": 2.0, "b5": 0.5, "b6": -1.0},
        {"H0": 0.2, "a1": 1.0, "a2": 1.0, "b4": 0.5},
    ]
    error = 0.0
    lines = []
    for params in configs:
        H = _translation_values(ctx, TranslationFamily.CONSTANT_H_II, params, CurvatureQuantity.H_DEF)
        expected = params["H0"] - params["a1"] + params["a2"] * (1.0 + params.get("b4", 0.0) ** 2)
        error = max(error, _max_abs(H - expected))
        lines.append(f"{params}: H ≡ {expected:.12g}")
    notes = "H ≡ H0 − a1 + a2(1 + b4²), equal to H0 when a1 = a2(1 + b4²); " + "; ".join(lines)
    return ClaimOutcome(error, error <= ctx.tol("constancy"), notes)


@_claim("Thm2.2.iii", "Thm 2.2(iii)", "H0 f1² + b7 f2 + (1/a3²) exp(a3 g2) + b8 f1 + b9 g2", documented=True)
def _check_translation_constant_H_iii(ctx: ClaimContext) -> ClaimOutcome:
    error = 0.0
    for params in ({"a3": 1.0, "H0": 0.0}, {"a3": -2.0, "H0": 0.7, "b8": 0.5}):
        H = _translation_values(ctx, TranslationFamily.CONSTANT_H_III, params, CurvatureQuantity.H_DEF)
        error = max(error, _max_abs(H - params["H0"]))
    tilted = _translation_values(
        ctx, TranslationFamily.CONSTANT_H_III, {"a3": 1.0, "H0": 0.0, "b9": 0.5}, CurvatureQuantity.H_DEF
    )
    spread = float(np.max(tilted) - np.min(tilted))
    notes = (
        "The term b7·f2 names a function f2 that is not defined for this family; it is omitted. "
        f"With b9 = 0, H ≡ H0 (max err {error:.3e}). With b9 ≠ 0, H = H0 − a3·b9·sec²(a3 f1)/2 is not constant "
        f"(b9 = 0.5 spreads H by {spread:.6g}), so b9 = 0 is required as well"
    )
    return ClaimOutcome(error, error <= ctx.tol("constancy"), notes)


# ===================================================
# グラフ超曲面の主張
# ===================================================


def _graph_samples(gh: GraphHypersurface, points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    values = [graph_curvatures(gh, point) for point in points]
    return np.array([K for K, _ in values]), np.array([H for _, H in values])


def _random_points(ctx: ClaimContext, n: int, lo: float, hi: float, count: int = 50) -> np.ndarray:
    return ctx.rng.uniform(lo, hi, size=(count, n))


def _box_points(ctx: ClaimContext, box: Sequence[Tuple[float, float]]) -> np.ndarray:
    grid = GridSpec(box[0], box[1], int(ctx.grid["nu"]), int(ctx.grid["nv"]))
    U, V = grid.mesh()
    return np.stack([U.ravel(), V.ravel()], axis=1)


@_claim("Thm2.4", "Thm 2.4", "with nonzero constant relative curvature K0. Then it has of the form")
def _check_translation_hypersurface_K(ctx: ClaimContext) -> ClaimOutcome:
    configs = [
        (2, (1.0, 2.0), None, 0.0, True),
        (3, (1.0, 2.0, -0.5), (0.3, -1.0, 2.0), 1.0, True),
        (2, (1.5, 0.0), (0.2, 0.1), 0.0, False),
    ]
    error = 0.0
    lines = []
    for n, alphas, betas, eps, nonzero in configs:
        gh = translation_hypersurface(n, alphas, betas, eps, nonzero_alphas=nonzero)
        expected = 2.0**n * float(np.prod(alphas))
        K, _ = _graph_samples(gh, _random_points(ctx, n, -2.0, 2.0))
        error = max(error, _max_abs(K - expected))
        lines.append(f"n = {n}, α = {alphas}: K ≡ {expected:g}")
    notes = "K ≡ 2ⁿ·Πα_j; a zero α gives the flat cylinder; " + "; ".join(lines)
    return ClaimOutcome(error, error <= ctx.tol("hypersurface"), notes)


@_claim("Thm2.5", "Thm 2.5", "are some constants for all j such that Σα_j = (n/2)H0")
def _check_translation_hypersurface_H(ctx: ClaimContext) -> ClaimOutcome:
    configs = [(3, 1.0, (1.0, 2.0, 3.0)), (2, -0.4, (1.0, -3.0)), (4, 0.0, (1.0, -1.0, 2.0, -2.0))]
    error = 0.0
    for n, H0, weights in configs:
        alphas = alphas_for_mean_curvature(n, H0, weights) if H0 != 0.0 else [w * 0.5 for w in weights]
        gh = translation_hypersurface(n, alphas, nonzero_alphas=False)
        _, H = _graph_samples(gh, _random_points(ctx, n, -2.0, 2.0))
        error = max(error, _max_abs(H - H0))
    notes = "α_j distributed so that Σα_j = (n/2)·H0: (n, H0) = (3, 1), (2, −0.4), (4, 0); H ≡ H0"
    return ClaimOutcome(error, error <= ctx.tol("hypersurface"), notes)


@_claim("Thm2.7", "Thm 2.7", "Then it is isotropic minimal, i.e. H0 = 0 and has the following form")
def _check_homothetical_minimal(ctx: ClaimContext) -> ClaimOutcome:
    configs = [
        {"gammas": [2.0, 3.0], "epsilons": [1.0, -1.0]},
        {"gammas": [1.0, 2.0, -1.0], "epsilons": [0.5, 0.0, 1.0]},
    ]
    error = 0.0
    for params in configs:
        gh = homothetical_hypersurface(HomotheticalFamily.MINIMAL_LINEAR_PRODUCT, params)
        _, H = _graph_samples(gh, _random_points(ctx, gh.n, -2.0, 2.0))
        error = max(error, _max_abs(H))
    notes = f"products of linear factors in n = 2, 3: max |H| = {error:.3e}"
    return ClaimOutcome(error, error <= ctx.tol("hypersurface"), notes)


@_claim("Thm2.8.i", "Thm 2.8 (first form)", "for nonzero constants γ, α1, α2")
def _check_homothetical_flat_exp(ctx: ClaimContext) -> ClaimOutcome:
    configs = [{"gamma": 1.5, "alpha1": 0.7, "alpha2": -0.4}, {"gamma": -0.8, "alpha1": 0.3, "alpha2": 0.9, "n": 3}]
    error = 0.0
    for params in configs:
        gh = homothetical_hypersurface(HomotheticalFamily.FLAT_EXP, params)
        K, _ = _graph_samples(gh, _random_points(ctx, gh.n, -1.0, 1.0))
        error = max(error, _max_abs(K))
    notes = "γ·exp(α1x1 + α2x2)·Π h_j(x_j) with h_j = 1 + x² for j ≥ 3: K ≡ 0 in n = 2, 3"
    return ClaimOutcome(error, error <= ctx.tol("constancy"), notes)


@_claim("Thm2.8.ii", "Thm 2.8 (second form)", "nonzero constants such that Σα_i = 1")
def _check_homothetical_flat_power(ctx: ClaimContext) -> ClaimOutcome:
    gh = homothetical_hypersurface(HomotheticalFamily.FLAT_POWER, {"alphas": [0.5, 0.5]})
    K2, _ = _graph_samples(gh, _box_points(ctx, [(0.5, 3.0), (0.5, 3.0)]))
    gh3 = homothetical_hypersurface(
        HomotheticalFamily.FLAT_POWER, {"alphas": [0.2, 0.3, 0.5], "betas": [0.1, 0.0, 0.2], "gamma": 2.0}
    )
    K3, _ = _graph_samples(gh3, _random_points(ctx, 3, 0.5, 3.0))
    error = max(_max_abs(K2), _max_abs(K3))
    notes = f"α = (1/2, 1/2) on [0.5, 3]²: max |K| = {_max_abs(K2):.3e}; n = 3, α = (0.2, 0.3, 0.5): {_max_abs(K3):.3e}"
    return ClaimOutcome(error, error <= ctx.tol("power_flatness"), notes)


@_claim("Thm2.9.A1", "Thm 2.9 (A.1)", "H(x, y) = c1 h1(x) or H(x, y) = c2 h2(y)")
def _check_homothetical_cylinder(ctx: ClaimContext) -> ClaimOutcome:
    configs = [{"c": 2.0}, {"c": -1.5, "h": exp_profile(0.7), "axis": 2}]
    error = 0.0
    for params in configs:
        gh = homothetical_hypersurface(HomotheticalFamily.A1_CYLINDER, params)
        K, _ = _graph_samples(gh, _box_points(ctx, [(-1.0, 1.0), (-1.0, 1.0)]))
        error = max(error, _max_abs(K))
    notes = f"single-factor graphs in x and in y: max |K| = {error:.3e}"
    return ClaimOutcome(error, error <= ctx.tol("constancy"), notes)


@_claim("Thm2.9.A2", "Thm 2.9 (A.2)", "H(x, y) = c1 exp(c2 x + c3 y)")
def _check_homothetical_exp(ctx: ClaimContext) -> ClaimOutcome:
    gh = homothetical_hypersurface(HomotheticalFamily.A2_EXP, {"c1": 1.5, "c2": 0.5, "c3": -0.8})
    K, _ = _graph_samples(gh, _box_points(ctx, [(-1.0, 1.0), (-1.0, 1.0)]))
    error = _max_abs(K)
    notes = f"c = (1.5, 0.5, −0.8) on [−1, 1]²: max |K| = {error:.3e}"
    return ClaimOutcome(error, error <= ctx.tol("constancy"), notes)


@_claim("Thm2.9.A3", "Thm 2.9 (A.3)", "c2 ≠ 1 ≠ c4")
def _check_homothetical_power(ctx: ClaimContext) -> ClaimOutcome:
    configs = [
        {"c1": 1.0, "c2": 2.0, "c3": 1.0, "c4": 2.0},
        {"c1": 2.0, "c2": 3.0, "c3": 0.5, "c4": 1.5, "d1": 1.0, "d2": 0.5},
    ]
    error = 0.0
    for params in configs:
        gh = homothetical_hypersurface(HomotheticalFamily.A3_POWER, params)
        domain = homothetical_domain(gh, [(0.5, 3.0), (0.5, 3.0)])
        K, _ = _graph_samples(gh, _box_points(ctx, [(domain.u_min, domain.u_max), (domain.v_min, domain.v_max)]))
        error = max(error, _max_abs(K))
    notes = f"sub-family 1/c2 + 1/c4 = 1 (c2 = c4 = 2 and c2 = 3, c4 = 1.5) on [0.5, 3]²: max |K| = {error:.3e}"
    return ClaimOutcome(error, error <= ctx.tol("power_flatness"), notes)


@_claim("Thm2.9.B", "Thm 2.9 (B)", "then it is negative (i.e. K0 < 0) and h1, h2 are linear functions")
def _check_homothetical_linear(ctx: ClaimContext) -> ClaimOutcome:
    b, d = (float(x) for x in ctx.rng.uniform(-1.0, 1.0, size=2))
    gh = homothetical_hypersurface(HomotheticalFamily.B_LINEAR, {"a": 2.0, "b": b, "c": 3.0, "d": d})
    K, _ = _graph_samples(gh, _random_points(ctx, 2, -2.0, 2.0))
    error = _max_abs(K + 36.0)
    passed = error <= ctx.tol("hypersurface") and bool(np.all(K < 0))
    return ClaimOutcome(error, passed, f"(2x + {b:.6g})(3y + {d:.6g}): K ≡ −(a·c)² = −36")


# ===================================================
# 構造的な主張
# ===================================================


@_claim("Remark2.2", "Remark 2.2", "Since both type of the helicoidal surfaces are locally isometric")
def _check_helicoidal_types(ctx: ClaimContext) -> ClaimOutcome:
    profile = constant_H_profile(ctx.override("H0", -1.0), ctx.override("alpha", 1.0), ctx.override("beta", 0.0))
    h = ctx.override("h", 1.5)
    first = helicoidal_chart(HelicoidalParams(profile, h, HelicoidalType.FIRST), (1.0, 5.0))
    second = helicoidal_chart(HelicoidalParams(profile, h, HelicoidalType.SECOND), (1.0, 5.0))
    rotated = transform_chart(first, Motion(phi=0.5 * math.pi))
    U, V = ctx.grid_for(first.domain).mesh()
    error = 0.0
    for name in ("r", "r_u", "r_v", "r_uu", "r_uv", "r_vv"):
        error = max(error, _max_abs(getattr(second, name)(U, V) - getattr(rotated, name)(U, V)))
    forms_first, forms_second = evaluate_forms_grid(first, U, V), evaluate_forms_grid(second, U, V)
    error = max(error, *(_max_abs(forms_first[key] - forms_second[key]) for key in ("g11", "g12", "g22", "K", "H")))
    notes = (
        "second type = first type moved by the rotation φ = π/2; "
        f"positions, derivatives and forms agree to {error:.3e}"
    )
    return ClaimOutcome(error, error <= ctx.tol("type_identity"), notes)


@_claim("Sphere", "i-spheres of parabolic type", "x3 = (A/2)(x1² + x2²) + B x1 + C x2 + D, A ≠ 0")
def _check_parabolic_sphere(ctx: ClaimContext) -> ClaimOutcome:
    error = 0.0
    for A in (2.0, -2.0, 1.0):
        B, C, D = (float(x) for x in ctx.rng.uniform(-1.0, 1.0, size=3))
        chart = parabolic_i_sphere(A, B, C, D)
        U, V = ctx.grid_for(chart.domain).mesh()
        forms = evaluate_forms_grid(chart, U, V)
        error = max(error, _max_abs(forms["K"] - A * A), _max_abs(forms["H"] - A))
    return ClaimOutcome(error, error <= ctx.tol("constancy"), "A ∈ {2, −2, 1}: K ≡ A², H ≡ A")


@_claim(
    "OracleEquivalence",
    "Curvature theory of surfaces",
    "the coefficients g11, g12, g22 of its first fundamental form",
)
def _check_oracle_equivalence(ctx: ClaimContext) -> ClaimOutcome:
    step = ctx.tol("fd_step")
    margin = 1.5 * fd_stencil_margin(step)
    chart_count = int(ctx.draws["oracle_charts"])
    forms_error = 0.0
    for _ in range(chart_count):
        chart = _draw_oracle_chart(ctx.rng)
        u, v = _draw_interior(ctx.rng, chart.domain, margin)
        fd_first, fd_second = fd_forms_oracle(chart, u, v, step)
        analytic = first_form(chart, u, v).as_tuple() + second_form(chart, u, v).as_tuple()
        finite = fd_first.as_tuple() + fd_second.as_tuple()
        forms_error = max(forms_error, _max_abs(np.array(analytic) - np.array(finite)))

    graphs = [
        (
            translation_hypersurface(2, ctx.rng.uniform(0.5, 2.0, size=2), ctx.rng.uniform(-1, 1, size=2)),
            [(-1.0, 1.0)] * 2,
        ),
        (homothetical_hypersurface(HomotheticalFamily.B_LINEAR, {"a": 2.0, "b": 0.5, "c": -1.0}), [(-1.0, 1.0)] * 2),
        (homothetical_hypersurface(HomotheticalFamily.A2_EXP, {"c1": 0.5, "c2": 1.0, "c3": 0.5}), [(-1.0, 1.0)] * 2),
        (homothetical_hypersurface(HomotheticalFamily.A3_POWER), [(0.5, 3.0)] * 2),
        (homothetical_hypersurface(HomotheticalFamily.FLAT_POWER), [(0.5, 3.0)] * 2),
        (
            homothetical_hypersurface(
                HomotheticalFamily.MINIMAL_LINEAR_PRODUCT, {"gammas": [1.0, -2.0], "epsilons": [0.5, 1.0]}
            ),
            [(-1.0, 1.0)] * 2,
        ),
    ]
    graph_error = 0.0
    for gh, box in graphs:
        domain = homothetical_domain(gh, box)
        chart = graph_as_chart(gh, domain)
        for _ in range(5):
            u, v = _draw_interior(ctx.rng, domain, 0.0)
            K_graph, H_graph = graph_curvatures(gh, np.array([u, v]))
            sample = curvature_at(chart, u, v)
            graph_error = max(graph_error, abs(K_graph - sample.K), abs(H_graph - sample.H))

    passed = forms_error <= ctx.tol("oracle") and graph_error <= ctx.tol("graph_reduction")
    notes = (
        f"{chart_count} random charts (helicoidal, translation, graph): max |analytic − finite-difference| over "
        f"g and h = {forms_error:.3e}; graph hypersurfaces vs chart pipeline: {graph_error:.3e}"
    )
    return ClaimOutcome(max(forms_error, graph_error), passed, notes)


@_claim("MotionInvariance", "i-motions", "The group of motions of I3 is a six-parameter group")
def _check_motion_invariance(ctx: ClaimContext) -> ClaimOutcome:
    charts = [
        _draw_helicoidal_chart(ctx.rng),
        _draw_helicoidal_chart(ctx.rng),
        translation_chart(TranslationFamily.CONSTANT_H_II, {"H0": 0.5, "b4": 0.3}),
        parabolic_i_sphere(1.5, 0.2, -0.3, 0.1),
    ]
    points = []
    for index in range(int(ctx.draws["invariance_points"])):
        chart = charts[index % len(charts)]
        points.append((chart, *_draw_interior(ctx.rng, chart.domain, 0.0)))
    motions = [_draw_motion(ctx.rng) for _ in range(int(ctx.draws["invariance_motions"]))]

    error = 0.0
    for motion in motions:
        for chart, u, v in points:
            before = curvature_at(chart, u, v)
            after = curvature_at(transform_chart(chart, motion), u, v)
            error = max(
                error,
                abs(after.K - before.K) / max(1.0, abs(before.K)),
                abs(after.H - before.H) / max(1.0, abs(before.H)),
            )
    notes = f"{len(points)} points × {len(motions)} i-motions: max relative change of K, H = {error:.3e}"
    return ClaimOutcome(error, error <= ctx.tol("invariance"), notes)


@_claim("Distance", "i-distance", "is defined as the Euclidean distance of their top views")
def _check_distance(ctx: ClaimContext) -> ClaimOutcome:
    rel = ctx.tol("distance_rel")
    error = 0.0
    passed = True
    for _ in range(int(ctx.draws["count"])):
        x, y, z = _draw_point3(ctx.rng), _draw_point3(ctx.rng), _draw_point3(ctx.rng)
        m1, m2 = _draw_motion(ctx.rng), _draw_motion(ctx.rng)
        passed = passed and motion_preserves_distance(m1, x, y, rel)
        passed = passed and i_distance(x, z) <= i_distance(x, y) + i_distance(y, z) + rel * 10.0
        passed = passed and i_distance(x, y) == i_distance(y, x)

        lifted = Point3(x.x1, x.x2, x.x3 + 7.0)
        passed = passed and is_isotropic_pair(x, lifted) and i_distance(x, lifted) == 0.0

        composed = apply_motion(compose_motions(m2, m1), x).as_array()
        stepwise = apply_motion(m2, apply_motion(m1, x)).as_array()
        restored = apply_motion(inverse_motion(m1), apply_motion(m1, x)).as_array()
        scale = max(1.0, float(np.max(np.abs(stepwise))))
        error = max(error, _max_abs(composed - stepwise) / scale, _max_abs(restored - x.as_array()) / scale)
    passed = passed and error <= rel * 100.0
    notes = (
        f"{ctx.draws['count']} draws: distance preserved by i-motions, symmetric, triangle inequality, "
        f"zero along isotropic lines; composition and inverse agree to {error:.3e} (relative)"
    )
    return ClaimOutcome(error, passed, notes)


# ===================================================
# スイートの実行
# ===================================================


def _evaluate(spec: ClaimSpec, ctx: ClaimContext) -> ClaimResult:
    try:
        outcome = spec.check(ctx)
    except Exception as e:
        error_logger.log_exception(spec.id, e)
        return ClaimResult(spec.id, spec.anchor, ClaimStatus.FAIL, math.inf, f"{type(e).__name__}: {e}")

    passed = outcome.passed and math.isfinite(outcome.max_abs_error)
    if not passed:
        error_logger.log_error(spec.id, outcome.notes or "許容誤差を超えました", "claim_failure")
        status = ClaimStatus.FAIL
    elif spec.documented:
        status = ClaimStatus.DISCREPANCY_DOCUMENTED
    else:
        status = ClaimStatus.PASS
    logger.debug(f"{spec.id}: {status.value} (max_abs_error={outcome.max_abs_error:.3e})")
    return ClaimResult(spec.id, spec.anchor, status, float(outcome.max_abs_error), outcome.notes)


@performance_monitor
def run_theorem_suite(
    selection: Optional[Iterable[str]] = None,
    seed: Optional[int] = None,
    tolerances: Optional[Dict[str, float]] = None,
    overrides: Optional[Dict[str, float]] = None,
    workers: Optional[int] = None,
    rules: Optional[Dict[str, Any]] = None,
) -> VerificationReport:
    """
    定理スイートを実行

    項目は互いに独立で、workers > 1 ならスレッドで並列に実行します。
    レポートは実行順に関係なく登録順に並びます。

    Args:
        selection: 実行する項目ID（None なら全項目）
        seed: 乱数シード（None ならルールの値）
        tolerances: 許容誤差の上書き
        overrides: 族の定数の上書き（K0, gamma, h, alpha, H0, beta）
        workers: ワーカー数（None ならCPUとメモリから決める）
        rules: load_verification_rules() の結果（None なら組み込みの既定値）

    Returns:
        VerificationReport: 各項目の結果

    Raises:
        ValueError: 未知の項目ID・許容誤差名・上書きキー
    """
    if rules is None:
        rules, merged = DEFAULT_RULES, default_tolerances()
    else:
        merged = {key: float(value) for key, value in rules["tolerances"].items()}
    known = [spec.id for spec in CLAIMS]
    wanted = set(selection) if selection is not None else set(known)
    unknown = sorted(wanted - set(known))
    if unknown:
        raise ValueError(f"未知の検証項目です: {unknown} (使用可能: {known})")

    for key, value in (tolerances or {}).items():
        if key not in merged:
            raise ValueError(f"未知の許容誤差です: {key} (使用可能: {sorted(merged)})")
        merged[key] = float(value)
    for key in overrides or {}:
        if key not in OVERRIDE_KEYS:
            raise ValueError(f"未知の定数です: {key} (使用可能: {list(OVERRIDE_KEYS)})")

    seed = int(rules["seed"] if seed is None else seed)
    specs = [spec for spec in CLAIMS if spec.id in wanted]
    logger.info(f"🧪 定理スイート開始: {len(specs)}項目, シード {seed}")

    def run(spec: ClaimSpec) -> ClaimResult:
        ctx = ClaimContext(
            claim_id=spec.id,
            seed=seed,
            tolerances=merged,
            overrides=dict(overrides or {}),
            grid=dict(rules["grid"]),
            draws=dict(rules["random_draws"]),
        )
        return _evaluate(spec, ctx)

    optimizer = PerformanceOptimizer()
    if workers is None:
        workers = min(optimizer.get_optimal_worker_count(), max(1, len(specs)))

    def progress(done: int, total: int) -> None:
        logger.debug(f"🧪 {done}/{total} 項目完了")

    results, metrics = optimizer.parallel_map(specs, run, worker_count=workers, progress_callback=progress)
    report = VerificationReport(claims=results, seed=seed, tolerances=merged)

    logger.info(
        f"✅ 定理スイート完了: pass {report.count(ClaimStatus.PASS)}, "
        f"discrepancy-documented {report.count(ClaimStatus.DISCREPANCY_DOCUMENTED)}, "
        f"fail {report.count(ClaimStatus.FAIL)} ({metrics.processing_time:.2f}秒)"
    )
    return report
