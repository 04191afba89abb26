"""
曲面族の生成モジュール

分類定理に現れる閉じた形の曲面族（螺旋面の母線、平行移動曲面、
平行移動超曲面、相似超曲面、放物型 i-球面）を、解析的な導関数つきの
SurfaceChart / GraphHypersurface として構築します。

すべての関数値はスカラーと numpy 配列の両方を受け付けます。
"""

import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import Polynomial
from scipy.integrate import quad

from core.surface import graph_as_chart
from utils.error_handler import DomainError, EmptyRangeError, InvalidConstantError, InvalidRangeError
from utils.models import (
    Domain,
    GraphHypersurface,
    HelicoidalParams,
    HelicoidalType,
    HomotheticalFamily,
    ProfileFunction,
    SurfaceChart,
    TranslationFamily,
)

logger = logging.getLogger(__name__)

QUADRATURE_EPSABS = 1e-12
QUADRATURE_EPSREL = 1e-10
POWER_SUM_TOL = 1e-12
RANGE_SAMPLES = 257
DOMAIN_MARGIN = 0.5

Interval = Tuple[float, float]


def _require_nonzero(name: str, value: float, operation: str) -> None:
    if value == 0 or not math.isfinite(value):
        raise InvalidConstantError(
            f"{operation}: 定数 {name} は非零の有限値である必要があります", name=name, value=value, operation=operation
        )


def _uv(u, v) -> Tuple[np.ndarray, np.ndarray]:
    u_arr, v_arr = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    return u_arr, v_arr


# ===================================================
# 一変数関数
# ===================================================


def polynomial_profile(coefficients: Sequence[float], name: str = "polynomial") -> ProfileFunction:
    """係数（低次から）で与えた多項式"""
    p = Polynomial(list(coefficients))
    d1, d2 = p.deriv(1), p.deriv(2)
    return ProfileFunction(
        g=lambda u: p(np.asarray(u, dtype=float)),
        g1=lambda u: d1(np.asarray(u, dtype=float)),
        g2=lambda u: d2(np.asarray(u, dtype=float)),
        name=name,
        parameters={f"c{k}": float(c) for k, c in enumerate(coefficients)},
    )


def constant_profile(value: float) -> ProfileFunction:
    return polynomial_profile([value], name=f"constant({value})")


def linear_profile(slope: float, intercept: float = 0.0) -> ProfileFunction:
    return polynomial_profile([intercept, slope], name=f"linear({slope}, {intercept})")


def power_profile(exponent: float, coefficient: float = 1.0, scale: float = 1.0, shift: float = 0.0) -> ProfileFunction:
    """
    coefficient · (scale·x + shift)^exponent

    有効区間は scale·x + shift > 0 の側（正の分枝）です。
    """
    _require_nonzero("scale", scale, "power_profile")
    root = -shift / scale
    valid = (root, math.inf) if scale > 0 else (-math.inf, root)

    def base(u):
        return scale * np.asarray(u, dtype=float) + shift

    return ProfileFunction(
        g=lambda u: coefficient * base(u) ** exponent,
        g1=lambda u: coefficient * exponent * scale * base(u) ** (exponent - 1.0),
        g2=lambda u: coefficient * exponent * (exponent - 1.0) * scale * scale * base(u) ** (exponent - 2.0),
        valid_range=valid,
        name=f"power({coefficient}·({scale}x+{shift})^{exponent})",
        parameters={"exponent": exponent, "coefficient": coefficient, "scale": scale, "shift": shift},
    )


def exp_profile(rate: float, coefficient: float = 1.0) -> ProfileFunction:
    """coefficient · exp(rate·x)"""

    def value(u):
        return coefficient * np.exp(rate * np.asarray(u, dtype=float))

    return ProfileFunction(
        g=value,
        g1=lambda u: rate * value(u),
        g2=lambda u: rate * rate * value(u),
        name=f"exp({coefficient}·e^({rate}x))",
        parameters={"rate": rate, "coefficient": coefficient},
    )


def compose_profiles(outer: ProfileFunction, inner: ProfileFunction, name: Optional[str] = None) -> ProfileFunction:
    """
    合成 outer∘inner（連鎖律で導関数を合成）

    有効区間は inner のものを引き継ぎます。outer 側の定義域は呼び出し側で確認します。
    """

    def g1(u):
        return outer.g1(inner.g(u)) * inner.g1(u)

    def g2(u):
        s = inner.g(u)
        return outer.g2(s) * inner.g1(u) ** 2 + outer.g1(s) * inner.g2(u)

    return ProfileFunction(
        g=lambda u: outer.g(inner.g(u)),
        g1=g1,
        g2=g2,
        valid_range=inner.valid_range,
        name=name or f"{outer.name}∘{inner.name}",
    )


def combine_profiles(terms: Sequence[Tuple[float, ProfileFunction]], name: str = "combination") -> ProfileFunction:
    """線形結合 Σ c·p（有効区間は共通部分）"""
    lo = max(p.valid_range[0] for _, p in terms)
    hi = min(p.valid_range[1] for _, p in terms)

    def linear(attr: str):
        return lambda u: sum(c * getattr(p, attr)(u) for c, p in terms)

    return ProfileFunction(g=linear("g"), g1=linear("g1"), g2=linear("g2"), valid_range=(lo, hi), name=name)


def _require_in_range(outer: ProfileFunction, inner: ProfileFunction, interval: Interval, operation: str) -> None:
    samples = inner.g(np.linspace(interval[0], interval[1], RANGE_SAMPLES))
    if not outer.contains(samples):
        raise DomainError(
            f"{operation}: {inner.name} の値が {outer.name} の定義域 {outer.valid_range} を外れます",
            detail=f"{inner.name} on {interval}",
            operation=operation,
        )


# ===================================================
# 螺旋面の母線
# ===================================================


def flat_helicoidal_profile(alpha: float, h: float) -> ProfileFunction:
    """
    相対曲率0の螺旋面の母線

    g′ = sqrt(α − h²/u²)、g = sqrt(αu² − h²) + h·arctan(h / sqrt(αu² − h²))。
    恒等式 u³g′g″ = h² を満たします。

    Args:
        alpha: 正の定数
        h: ピッチ

    Returns:
        ProfileFunction: 有効区間 u > |h|/sqrt(α)

    Raises:
        EmptyRangeError: alpha <= 0
    """
    if not alpha > 0:
        raise EmptyRangeError(
            f"flat_helicoidal_profile: alpha={alpha} では α − h²/u² が正になる区間がありません",
            parameters={"alpha": alpha, "h": h},
            operation="flat_helicoidal_profile",
        )
    lower = abs(h) / math.sqrt(alpha)

    def root(u):
        u = np.asarray(u, dtype=float)
        return np.sqrt(alpha * u * u - h * h)

    def g(u):
        s = root(u)
        return s + h * np.arctan(h / s) if h != 0 else s

    def g1(u):
        u = np.asarray(u, dtype=float)
        return np.sqrt(alpha - h * h / (u * u))

    def g2(u):
        u = np.asarray(u, dtype=float)
        return h * h / (u**3 * g1(u))

    logger.debug(f"平坦螺旋面の母線: alpha={alpha}, h={h}, 有効区間 u > {lower}")
    return ProfileFunction(
        g=g,
        g1=g1,
        g2=g2,
        valid_range=(lower, math.inf),
        name="flat-helicoidal",
        parameters={"alpha": alpha, "h": h},
    )


def constant_K_valid_range(K0: float, gamma: float, h: float) -> Interval:
    """
    K0·u² − h²/u² + γ > 0 となる u > 0 の区間

    t = u² とおくと K0·t² + γ·t − h² > 0 の正の解集合です。

    Raises:
        EmptyRangeError: 区間が空の場合
    """
    if K0 > 0:
        t_lower = (-gamma + math.sqrt(gamma * gamma + 4.0 * K0 * h * h)) / (2.0 * K0)
        return (math.sqrt(max(t_lower, 0.0)), math.inf)

    k = -K0
    discriminant = gamma * gamma - 4.0 * k * h * h
    if gamma <= 0 or discriminant <= 0:
        raise EmptyRangeError(
            f"constant_K_profile: K0={K0}, gamma={gamma}, h={h} では根号の中身が正になる区間がありません",
            parameters={"K0": K0, "gamma": gamma, "h": h},
            operation="constant_K_profile",
        )
    t_lower = max((gamma - math.sqrt(discriminant)) / (2.0 * k), 0.0)
    t_upper = (gamma + math.sqrt(discriminant)) / (2.0 * k)
    return (math.sqrt(t_lower), math.sqrt(t_upper))


def constant_K_profile(K0: float, gamma: float, h: float) -> ProfileFunction:
    """
    相対曲率が非零定数 K0 の螺旋面の母線

    g′ = sqrt(K0·u² − h²/u² + γ) = a(u)/u、a(u) = sqrt(K0·u⁴ + γ·u² − h²)。
    K0 > 0 では閉じた形の原始関数、K0 < 0 では g′ の適応求積
    （有効区間の中点を基点）で g を求めます。

    Raises:
        InvalidConstantError: K0 == 0
        EmptyRangeError: 有効区間が空
    """
    _require_nonzero("K0", K0, "constant_K_profile")
    valid = constant_K_valid_range(K0, gamma, h)

    def a(u):
        u = np.asarray(u, dtype=float)
        return np.sqrt(K0 * u**4 + gamma * u * u - h * h)

    def g1(u):
        return a(u) / np.asarray(u, dtype=float)

    def g2(u):
        u = np.asarray(u, dtype=float)
        return (K0 * u + h * h / u**3) / g1(u)

    if K0 > 0:
        sqrt_k = math.sqrt(K0)

        def g(u):
            u = np.asarray(u, dtype=float)
            a_u = a(u)
            value = 2.0 * a_u + (gamma / sqrt_k) * np.log(np.abs(gamma + 2.0 * (K0 * u * u + sqrt_k * a_u)))
            if h != 0:
                value = value - 2.0 * h * np.arctan((gamma * u * u - 2.0 * h * h) / (2.0 * h * a_u))
            return value / 4.0

    else:
        base = 0.5 * (valid[0] + valid[1])

        def integrate(u_value: float) -> float:
            value, _ = quad(lambda t: float(g1(t)), base, u_value, epsabs=QUADRATURE_EPSABS, epsrel=QUADRATURE_EPSREL)
            return value

        def g(u):
            u = np.asarray(u, dtype=float)
            # 格子の u は重複が多いので一意な値ごとに一度だけ積分する
            unique, inverse = np.unique(u.ravel(), return_inverse=True)
            values = np.array([integrate(float(x)) for x in unique])
            return values[inverse].reshape(u.shape)

    logger.debug(f"定曲率螺旋面の母線: K0={K0}, gamma={gamma}, h={h}, 有効区間 {valid}")
    return ProfileFunction(
        g=g,
        g1=g1,
        g2=g2,
        valid_range=valid,
        name="constant-K",
        parameters={"K0": K0, "gamma": gamma, "h": h},
    )


def constant_H_profile(H0: float, alpha: float, beta: float) -> ProfileFunction:
    """
    g = (H0/4)u² + α·ln u + β

    リッカチ方程式 p′ + p/u = H0（p = g′）の解で、g′/u + g″ ≡ H0 です。

    Raises:
        InvalidConstantError: alpha == 0
    """
    _require_nonzero("alpha", alpha, "constant_H_profile")

    def g(u):
        u = np.asarray(u, dtype=float)
        return 0.25 * H0 * u * u + alpha * np.log(u) + beta

    def g1(u):
        u = np.asarray(u, dtype=float)
        return 0.5 * H0 * u + alpha / u

    def g2(u):
        u = np.asarray(u, dtype=float)
        return 0.5 * H0 - alpha / (u * u)

    return ProfileFunction(
        g=g,
        g1=g1,
        g2=g2,
        valid_range=(0.0, math.inf),
        name="constant-H",
        parameters={"H0": H0, "alpha": alpha, "beta": beta},
    )


def log_helicoidal_profile(alpha: float, beta: float = 0.0) -> ProfileFunction:
    """g = α·ln u + β（座標関数が調和、等方極小）"""
    profile = constant_H_profile(0.0, alpha, beta)
    return ProfileFunction(
        g=profile.g,
        g1=profile.g1,
        g2=profile.g2,
        valid_range=profile.valid_range,
        name="log-helicoidal",
        parameters={"alpha": alpha, "beta": beta},
    )


# ===================================================
# 螺旋面チャート
# ===================================================


def default_u_range(profile: ProfileFunction) -> Interval:
    """母線の有効区間から既定の u 区間を決める"""
    lo, hi = profile.valid_range
    lo = max(lo, 0.0)
    if math.isfinite(hi):
        width = hi - lo
        return (lo + 0.01 * width, hi - 0.01 * width)
    start = 1.01 * lo if lo > 0 else 0.5
    return (start, max(5.0, 2.0 * start))


def helicoidal_chart(
    p: HelicoidalParams,
    u_range: Optional[Interval] = None,
    v_range: Optional[Interval] = None,
) -> SurfaceChart:
    """
    螺旋面チャート

    第一種 (u cos v, u sin v, g(u) + hv)、第二種 (−u sin v, u cos v, g(u) + hv)。
    第二種は第一種を φ = π/2 の i-運動で動かしたものです。

    Args:
        p: 螺旋面パラメータ
        u_range: u 区間（省略時は母線の有効区間から決定）
        v_range: v 区間（省略時は [0, 2π]）

    Returns:
        SurfaceChart: 6つの偏導関数がすべて閉じた形のチャート

    Raises:
        InvalidRangeError: u 区間が 0 に触れる、または母線の有効区間を外れる
    """
    profile, h = p.profile, p.pitch_h
    requested = u_range or default_u_range(profile)
    lo, hi = profile.valid_range
    if not (requested[0] > max(lo, 0.0) and requested[1] < hi and requested[0] < requested[1]):
        raise InvalidRangeError(
            f"helicoidal_chart: u 区間 {requested} は母線 '{profile.name}' の有効区間 "
            f"{profile.valid_range} と u > 0 に収まりません",
            requested=requested,
            valid=profile.valid_range,
            operation="helicoidal_chart",
        )
    v_lo, v_hi = v_range or (0.0, 2.0 * math.pi)
    domain = Domain(requested[0], requested[1], v_lo, v_hi)
    zero = np.zeros_like

    if p.type is HelicoidalType.FIRST:

        def r(u, v):
            u, v = _uv(u, v)
            return np.stack([u * np.cos(v), u * np.sin(v), profile.g(u) + h * v])

        def r_u(u, v):
            u, v = _uv(u, v)
            return np.stack([np.cos(v), np.sin(v), profile.g1(u) + zero(v)])

        def r_v(u, v):
            u, v = _uv(u, v)
            return np.stack([-u * np.sin(v), u * np.cos(v), np.full_like(u, h)])

        def r_uv(u, v):
            u, v = _uv(u, v)
            return np.stack([-np.sin(v), np.cos(v), zero(u)])

        def r_vv(u, v):
            u, v = _uv(u, v)
            return np.stack([-u * np.cos(v), -u * np.sin(v), zero(u)])

    else:

        def r(u, v):
            u, v = _uv(u, v)
            return np.stack([-u * np.sin(v), u * np.cos(v), profile.g(u) + h * v])

        def r_u(u, v):
            u, v = _uv(u, v)
            return np.stack([-np.sin(v), np.cos(v), profile.g1(u) + zero(v)])

        def r_v(u, v):
            u, v = _uv(u, v)
            return np.stack([-u * np.cos(v), -u * np.sin(v), np.full_like(u, h)])

        def r_uv(u, v):
            u, v = _uv(u, v)
            return np.stack([-np.cos(v), -np.sin(v), zero(u)])

        def r_vv(u, v):
            u, v = _uv(u, v)
            return np.stack([u * np.sin(v), -u * np.cos(v), zero(u)])

    def r_uu(u, v):
        u, v = _uv(u, v)
        return np.stack([zero(u), zero(u), profile.g2(u) + zero(v)])

    logger.info(f"🌀 螺旋面チャートを生成: {profile.name}, h={h}, 型={p.type.value}, 領域={domain}")
    return SurfaceChart(
        r=r,
        r_u=r_u,
        r_v=r_v,
        r_uu=r_uu,
        r_uv=r_uv,
        r_vv=r_vv,
        domain=domain,
        name=f"helicoidal-{p.type.value}({profile.name}, h={h})",
        metadata={"helicoidal": p},
    )


# ===================================================
# 平行移動曲面
# ===================================================

TRANSLATION_DEFAULTS: Dict[TranslationFamily, Dict[str, float]] = {
    TranslationFamily.CONSTANT_K_I: {"a1": 1.0, "K0": 1.0, "b1": 0.0, "b2": 0.0, "b3": 0.0},
    # b5 = a2·a4 のとき K は定数 18·a2·K0/a3²
    TranslationFamily.CONSTANT_K_II: {"a2": 1.0, "a3": 1.0, "a4": 1.0, "K0": 1.0, "b4": 0.0, "b5": 1.0, "b6": 0.0},
    TranslationFamily.CONSTANT_H_I: {"H0": 0.5, "b1": 0.0, "b2": 0.0, "b3": 0.0},
    TranslationFamily.CONSTANT_H_II: {"H0": 1.0, "a1": 1.0, "a2": 1.0, "b4": 0.0, "b5": 0.0, "b6": 0.0},
    # f₂ が定義されていない b₇ の項は含めない
    TranslationFamily.CONSTANT_H_III: {"H0": 0.0, "a3": 1.0, "b8": 0.0, "b9": 0.0},
}

TRANSLATION_NONZERO = {
    TranslationFamily.CONSTANT_K_I: ("a1", "K0"),
    TranslationFamily.CONSTANT_K_II: ("a2", "a3", "a4", "K0"),
    TranslationFamily.CONSTANT_H_I: (),
    TranslationFamily.CONSTANT_H_II: ("a1", "a2"),
    TranslationFamily.CONSTANT_H_III: ("a3",),
}


def _translation_params(family: TranslationFamily, params: Optional[Dict[str, float]]) -> Dict[str, float]:
    merged = dict(TRANSLATION_DEFAULTS[family])
    for key, value in (params or {}).items():
        if key not in merged:
            raise InvalidConstantError(
                f"translation_chart: 族 {family.value} に定数 {key} はありません (使用可能: {sorted(merged)})",
                name=key,
                value=value,
                operation="translation_chart",
            )
        merged[key] = float(value)
    for name in TRANSLATION_NONZERO[family]:
        _require_nonzero(name, merged[name], "translation_chart")
    return merged


def _separable_chart(
    x1: ProfileFunction,
    y_u: ProfileFunction,
    y_w: ProfileFunction,
    z_u: ProfileFunction,
    z_w: ProfileFunction,
    domain: Domain,
    name: str,
    metadata: Dict,
) -> SurfaceChart:
    # r(u, w) = (x1(u), y_u(u) + y_w(w), z_u(u) + z_w(w))
    def r(u, w):
        u, w = _uv(u, w)
        return np.stack([x1.g(u) + 0 * w, y_u.g(u) + y_w.g(w), z_u.g(u) + z_w.g(w)])

    def r_u(u, w):
        u, w = _uv(u, w)
        return np.stack([x1.g1(u) + 0 * w, y_u.g1(u) + 0 * w, z_u.g1(u) + 0 * w])

    def r_w(u, w):
        u, w = _uv(u, w)
        return np.stack([0 * u, y_w.g1(w) + 0 * u, z_w.g1(w) + 0 * u])

    def r_uu(u, w):
        u, w = _uv(u, w)
        return np.stack([x1.g2(u) + 0 * w, y_u.g2(u) + 0 * w, z_u.g2(u) + 0 * w])

    def r_uw(u, w):
        u, w = _uv(u, w)
        return np.zeros((3,) + u.shape)

    def r_ww(u, w):
        u, w = _uv(u, w)
        return np.stack([0 * u, y_w.g2(w) + 0 * u, z_w.g2(w) + 0 * u])

    return SurfaceChart(
        r=r, r_u=r_u, r_v=r_w, r_uu=r_uu, r_uv=r_uw, r_vv=r_ww, domain=domain, name=name, metadata=metadata
    )


def _semicubical_profile(K0: float, a3: float) -> ProfileFunction:
    # P(w) = (−2K0·w)^{3/2} / (K0·a3)、定義域 −2K0·w > 0
    def base(w):
        return -2.0 * K0 * np.asarray(w, dtype=float)

    valid = (-math.inf, 0.0) if K0 > 0 else (0.0, math.inf)
    return ProfileFunction(
        g=lambda w: base(w) ** 1.5 / (K0 * a3),
        g1=lambda w: -3.0 * np.sqrt(base(w)) / a3,
        g2=lambda w: 3.0 * K0 / (a3 * np.sqrt(base(w))),
        valid_range=valid,
        name="semicubical",
    )


def _log_cos_profile(a3: float) -> ProfileFunction:
    # −ln|cos(a3·s)|/a3 の主分枝 |a3·s| < π/2
    half = 0.5 * math.pi / abs(a3)

    def angle(s):
        return a3 * np.asarray(s, dtype=float)

    return ProfileFunction(
        g=lambda s: -np.log(np.cos(angle(s))) / a3,
        g1=lambda s: np.tan(angle(s)),
        g2=lambda s: a3 / np.cos(angle(s)) ** 2,
        valid_range=(-half, half),
        name="log-cos",
    )


def translation_chart(
    family: TranslationFamily,
    params: Optional[Dict[str, float]] = None,
    f1: Optional[ProfileFunction] = None,
    g2: Optional[ProfileFunction] = None,
    f2: Optional[ProfileFunction] = None,
    u_range: Optional[Interval] = None,
    v_range: Optional[Interval] = None,
) -> SurfaceChart:
    """
    定曲率の平行移動曲面 (f₁, f₂ + g₂, f₃ + g₃)

    第2パラメータは w（チャートの v）です。自由関数 f₁, g₂ の既定は恒等関数、
    族 2.2.i の f₂ の既定も恒等関数です。

    Args:
        family: 族
        params: 定数（省略分は既定値）
        f1, g2, f2: 自由関数
        u_range, v_range: パラメータ区間

    Returns:
        SurfaceChart: 解析的チャート

    Raises:
        InvalidConstantError: 非零であるべき定数が0、または未知の定数
        DomainError: 対数・べきの定義域を外れる区間
    """
    c = _translation_params(family, params)
    f1 = f1 or linear_profile(1.0)
    g2 = g2 or linear_profile(1.0)
    u_range = u_range or (-1.0, 1.0)
    if v_range is None:
        v_range = (-1.0, 1.0)
        if family is TranslationFamily.CONSTANT_K_II:
            v_range = (-2.0, -0.5) if c["K0"] > 0 else (0.5, 2.0)
    operation = f"translation_chart({family.value})"

    if family is TranslationFamily.CONSTANT_K_I:
        y_u = compose_profiles(linear_profile(c["b1"]), f1)
        z_u = compose_profiles(polynomial_profile([0.0, c["b2"], c["a1"]]), f1)
        z_w = compose_profiles(polynomial_profile([0.0, c["b3"], c["K0"] / c["a1"]]), g2)
    elif family is TranslationFamily.CONSTANT_K_II:
        y_u = compose_profiles(polynomial_profile([0.0, c["b4"], c["a2"]]), f1)
        z_u = compose_profiles(polynomial_profile([0.0, c["b6"], c["b5"]]), f1)
        cubic = _semicubical_profile(c["K0"], c["a3"])
        _require_in_range(cubic, g2, v_range, operation)
        z_w = combine_profiles([(1.0, compose_profiles(cubic, g2)), (c["a4"], g2)], name="semicubical+linear")
    elif family is TranslationFamily.CONSTANT_H_I:
        f2 = f2 or linear_profile(1.0)
        y_u = f2
        z_u = combine_profiles(
            [(1.0, compose_profiles(polynomial_profile([0.0, c["b2"], c["H0"]]), f1)), (c["b1"], f2)],
            name="quadratic+f2",
        )
        z_w = compose_profiles(linear_profile(c["b3"]), g2)
    elif family is TranslationFamily.CONSTANT_H_II:
        y_u = compose_profiles(linear_profile(c["b4"]), f1)
        z_u = compose_profiles(polynomial_profile([0.0, c["b5"], c["H0"] - c["a1"]]), f1)
        z_w = compose_profiles(polynomial_profile([0.0, c["b6"], c["a2"]]), g2)
    else:
        a3 = c["a3"]
        if u_range == (-1.0, 1.0):
            u_range = (-1.0 / abs(a3), 1.0 / abs(a3))
        log_cos = _log_cos_profile(a3)
        _require_in_range(log_cos, f1, u_range, operation)
        y_u = compose_profiles(log_cos, f1)
        z_u = compose_profiles(polynomial_profile([0.0, c["b8"], c["H0"]]), f1)
        z_w = combine_profiles(
            [(1.0, compose_profiles(exp_profile(a3, 1.0 / (a3 * a3)), g2)), (c["b9"], g2)],
            name="exp+linear",
        )

    domain = Domain(u_range[0], u_range[1], v_range[0], v_range[1])
    logger.info(f"平行移動曲面を生成: 族 {family.value}, 定数 {c}, 領域 {domain}")
    return _separable_chart(
        x1=f1,
        y_u=y_u,
        y_w=g2,
        z_u=z_u,
        z_w=z_w,
        domain=domain,
        name=f"translation-{family.value}",
        metadata={"translation": family, "constants": c},
    )


# ===================================================
# グラフ超曲面
# ===================================================


def translation_hypersurface(
    n: int,
    alphas: Sequence[float],
    betas: Optional[Sequence[float]] = None,
    eps: float = 0.0,
    nonzero_alphas: bool = True,
) -> GraphHypersurface:
    """
    平行移動超曲面 F = Σ αⱼxⱼ² + βⱼxⱼ + ε

    K ≡ 2ⁿ·Παⱼ、H ≡ (2/n)·Σαⱼ。

    Args:
        n: 次元（2以上）
        alphas, betas: 係数
        eps: 定数項
        nonzero_alphas: 相対曲率が非零の族として αⱼ ≠ 0 を要求するか

    Raises:
        InvalidConstantError: n < 2、係数の個数違い、または αⱼ = 0
    """
    if n < 2:
        raise InvalidConstantError(
            f"translation_hypersurface: n は2以上である必要があります (n={n})", name="n", value=n
        )
    alpha = np.asarray(alphas, dtype=float)
    beta = np.zeros(n) if betas is None else np.asarray(betas, dtype=float)
    if alpha.shape != (n,) or beta.shape != (n,):
        raise InvalidConstantError(
            f"translation_hypersurface: 係数の個数が n={n} と一致しません", name="alphas", value=list(alphas)
        )
    if nonzero_alphas:
        for j, a in enumerate(alpha, start=1):
            _require_nonzero(f"alpha{j}", float(a), "translation_hypersurface")

    def column(values: np.ndarray, x: np.ndarray) -> np.ndarray:
        return values.reshape((n,) + (1,) * (x.ndim - 1))

    def F(x):
        x = np.asarray(x, dtype=float)
        return np.sum(column(alpha, x) * x * x + column(beta, x) * x, axis=0) + eps

    def grad_F(x):
        x = np.asarray(x, dtype=float)
        return 2.0 * column(alpha, x) * x + column(beta, x)

    def hess_F(x):
        x = np.asarray(x, dtype=float)
        diag = np.diag(2.0 * alpha).reshape((n, n) + (1,) * (x.ndim - 1))
        return np.broadcast_to(diag, (n, n) + x.shape[1:]).copy()

    return GraphHypersurface(n=n, F=F, grad_F=grad_F, hess_F=hess_F, name=f"translation-hypersurface(n={n})")


def alphas_for_mean_curvature(n: int, H0: float, weights: Optional[Sequence[float]] = None) -> List[float]:
    """Σαⱼ = (n/2)·H0 を満たす係数（weights に比例して配分）"""
    w = np.ones(n) if weights is None else np.asarray(weights, dtype=float)
    return list(0.5 * n * H0 * w / np.sum(w))


def product_hypersurface(factors: Sequence[ProfileFunction], name: str = "product") -> GraphHypersurface:
    """
    F(x) = Π φⱼ(xⱼ) のグラフ超曲面

    ∂ₖF = φₖ′ Π_{j≠k} φⱼ、∂ₖₖF = φₖ″ Π_{j≠k} φⱼ、∂ₖₗF = φₖ′φₗ′ Π_{j≠k,l} φⱼ。
    因子が0になり得るので割り算は使いません。
    """
    n = len(factors)

    def table(x):
        x = np.asarray(x, dtype=float)
        values = [factors[j].g(x[j]) for j in range(n)]
        d1 = [factors[j].g1(x[j]) for j in range(n)]
        d2 = [factors[j].g2(x[j]) for j in range(n)]
        return values, d1, d2

    def product_except(values, skip) -> np.ndarray:
        result = np.ones_like(np.asarray(values[0], dtype=float))
        for j, value in enumerate(values):
            if j not in skip:
                result = result * value
        return result

    def F(x):
        values, _, _ = table(x)
        return product_except(values, ())

    def grad_F(x):
        values, d1, _ = table(x)
        return np.stack([d1[k] * product_except(values, (k,)) for k in range(n)])

    def hess_F(x):
        values, d1, d2 = table(x)
        rows = []
        for k in range(n):
            row = []
            for m in range(n):
                if k == m:
                    row.append(d2[k] * product_except(values, (k,)))
                else:
                    row.append(d1[k] * d1[m] * product_except(values, (k, m)))
            rows.append(np.stack(row))
        return np.stack(rows)

    domain = [factor.valid_range for factor in factors]
    return GraphHypersurface(n=n, F=F, grad_F=grad_F, hess_F=hess_F, name=name, domain=domain)


def _homothetical_factors(family: HomotheticalFamily, params: Dict) -> List[ProfileFunction]:
    operation = f"homothetical_hypersurface({family.value})"

    if family is HomotheticalFamily.MINIMAL_LINEAR_PRODUCT:
        gammas = params.get("gammas", [1.0, 1.0])
        epsilons = params.get("epsilons", [0.0] * len(gammas))
        if len(gammas) != len(epsilons) or len(gammas) < 2:
            raise InvalidConstantError(
                f"{operation}: gammas と epsilons は同じ長さ（2以上）である必要があります", name="gammas", value=gammas
            )
        return [linear_profile(g, e) for g, e in zip(gammas, epsilons)]

    if family is HomotheticalFamily.FLAT_EXP:
        gamma, a1, a2 = params.get("gamma", 1.0), params.get("alpha1", 1.0), params.get("alpha2", 1.0)
        for name, value in (("gamma", gamma), ("alpha1", a1), ("alpha2", a2)):
            _require_nonzero(name, value, operation)
        extra = params.get("extra_factors")
        if extra is None:
            extra = [polynomial_profile([1.0, 0.0, 1.0], name="1+x²") for _ in range(int(params.get("n", 2)) - 2)]
        return [exp_profile(a1, gamma), exp_profile(a2)] + list(extra)

    if family is HomotheticalFamily.FLAT_POWER:
        gamma = params.get("gamma", 1.0)
        alphas = params.get("alphas", [0.5, 0.5])
        betas = params.get("betas", [0.0] * len(alphas))
        _require_nonzero("gamma", gamma, operation)
        for j, a in enumerate(alphas, start=1):
            _require_nonzero(f"alpha{j}", a, operation)
        if abs(sum(alphas) - 1.0) > POWER_SUM_TOL:
            raise InvalidConstantError(
                f"{operation}: 指数の和は1である必要があります (Σα={sum(alphas)})", name="alphas", value=alphas
            )
        return [power_profile(a, gamma if j == 0 else 1.0, 1.0, b) for j, (a, b) in enumerate(zip(alphas, betas))]

    if family is HomotheticalFamily.A1_CYLINDER:
        c = params.get("c", 1.0)
        _require_nonzero("c", c, operation)
        h = params.get("h", polynomial_profile([0.0, 0.0, 1.0], name="x²"))
        weighted = combine_profiles([(c, h)], name=f"{c}·{h.name}")
        one = constant_profile(1.0)
        return [weighted, one] if params.get("axis", 1) == 1 else [one, weighted]

    if family is HomotheticalFamily.A2_EXP:
        c1, c2, c3 = params.get("c1", 1.0), params.get("c2", 1.0), params.get("c3", 1.0)
        for name, value in (("c1", c1), ("c2", c2), ("c3", c3)):
            _require_nonzero(name, value, operation)
        return [exp_profile(c2, c1), exp_profile(c3)]

    if family is HomotheticalFamily.A3_POWER:
        # 1/c2 + 1/c4 = 1 のとき K ≡ 0
        c1, c2, c3, c4 = (params.get(k, v) for k, v in (("c1", 1.0), ("c2", 2.0), ("c3", 1.0), ("c4", 2.0)))
        d1, d2 = params.get("d1", 0.0), params.get("d2", 0.0)
        for name, value in (("c1", c1), ("c2", c2), ("c3", c3), ("c4", c4)):
            _require_nonzero(name, value, operation)
        if c2 == 1.0 or c4 == 1.0:
            raise InvalidConstantError(f"{operation}: c2 ≠ 1 ≠ c4 である必要があります", name="c2/c4", value=(c2, c4))
        return [power_profile(1.0 / c2, 1.0, c1, d1), power_profile(1.0 / c4, 1.0, c3, d2)]

    # B_LINEAR: (a x + b)(c y + d)
    a, b, c, d = (params.get(k, v) for k, v in (("a", 1.0), ("b", 0.0), ("c", 1.0), ("d", 0.0)))
    _require_nonzero("a", a, operation)
    _require_nonzero("c", c, operation)
    return [linear_profile(a, b), linear_profile(c, d)]


def homothetical_hypersurface(family: HomotheticalFamily, params: Optional[Dict] = None) -> GraphHypersurface:
    """
    相似超曲面 F = h₁(x₁)·…·hₙ(xₙ) の各族

    Args:
        family: 族
        params: 族ごとの定数（省略分は既定値）

    Returns:
        GraphHypersurface: domain に各座標の正の分枝を持つ

    Raises:
        InvalidConstantError: 定数の制約違反
    """
    factors = _homothetical_factors(family, dict(params or {}))
    logger.debug(f"相似超曲面を生成: {family.value}, 因子 {[f.name for f in factors]}")
    return product_hypersurface(factors, name=f"homothetical-{family.value}")


def homothetical_domain(gh: GraphHypersurface, box: Sequence[Interval]) -> Domain:
    """
    n=2 の相似超曲面について、既定の箱と因子の定義域の共通部分を Domain にする

    Raises:
        DomainError: 共通部分が空
    """
    limits = gh.domain or [(-math.inf, math.inf)] * gh.n
    bounds = []
    for (lo, hi), (box_lo, box_hi) in zip(limits, box):
        start = max(lo + DOMAIN_MARGIN, box_lo) if math.isfinite(lo) else box_lo
        stop = min(hi - DOMAIN_MARGIN, box_hi) if math.isfinite(hi) else box_hi
        if not start < stop:
            raise DomainError(f"homothetical_domain: {gh.name} の定義域と {box} が交わりません", detail=str(limits))
        bounds.append((start, stop))
    return Domain(bounds[0][0], bounds[0][1], bounds[1][0], bounds[1][1])


def parabolic_i_sphere(
    A: float, B: float = 0.0, C: float = 0.0, D: float = 0.0, domain: Optional[Domain] = None
) -> SurfaceChart:
    """
    放物型 i-球面 x3 = (A/2)(x1² + x2²) + B·x1 + C·x2 + D

    ヘッセ行列が A·I なので K ≡ A²、H ≡ A です。

    Raises:
        InvalidConstantError: A == 0（平面は除外）
    """
    _require_nonzero("A", A, "parabolic_i_sphere")
    coeffs = np.array([B, C])

    def column(x):
        return coeffs.reshape((2,) + (1,) * (x.ndim - 1))

    def F(x):
        x = np.asarray(x, dtype=float)
        return 0.5 * A * np.sum(x * x, axis=0) + np.sum(column(x) * x, axis=0) + D

    def grad_F(x):
        x = np.asarray(x, dtype=float)
        return A * x + column(x)

    def hess_F(x):
        x = np.asarray(x, dtype=float)
        return np.broadcast_to((A * np.eye(2)).reshape((2, 2) + (1,) * (x.ndim - 1)), (2, 2) + x.shape[1:]).copy()

    gh = GraphHypersurface(n=2, F=F, grad_F=grad_F, hess_F=hess_F, name=f"parabolic-i-sphere(A={A})")
    return graph_as_chart(gh, domain or Domain(-1.0, 1.0, -1.0, 1.0))


def planar_i_curvature(f: ProfileFunction, x):
    """
    上面図に平行でない鉛直平面内の曲線 x3 = f(x) の i-曲率 f″(x)

    放物型 i-円（二次関数）では定数になります。
    """
    value = f.g2(x)
    return float(value) if np.ndim(value) == 0 else value
