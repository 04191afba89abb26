"""
データモデル定義モジュール

このモジュールは、パッケージ全体で使用されるデータ構造を定義します。
等方3次元空間の点・運動、曲面チャート、基本形式、曲線状態、
検証レポートなどの基本的なデータクラスを提供します。
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

# チャートの各関数は (u, v) -> shape (3, ...) の配列を返す
VectorField = Callable[[Any, Any], np.ndarray]
ScalarFunction = Callable[[Any], Any]


class DerivativeSource(Enum):
    """
    チャートの偏導関数の出所を表す列挙型
    """

    ANALYTIC = "analytic"  # 閉じた式
    FINITE_DIFFERENCE = "finite_difference"  # 位置サンプルからの差分


class HelicoidalType(Enum):
    """螺旋面の型（第一種 / 第二種）"""

    FIRST = "first"
    SECOND = "second"


class CurvatureQuantity(Enum):
    """
    定数性スイープで評価する量

    H_SECTION3_EXPR は g′/u + g″ 形式（定義上の H の2倍）です。
    """

    K = "K"
    H_DEF = "H_def"
    H_SECTION3_EXPR = "H_section3_expr"


class TranslationFamily(Enum):
    """
    定曲率の平行移動曲面の族

    値は分類定理の項目番号です。
    """

    CONSTANT_K_I = "2.1.i"
    CONSTANT_K_II = "2.1.ii"
    CONSTANT_H_I = "2.2.i"
    CONSTANT_H_II = "2.2.ii"
    CONSTANT_H_III = "2.2.iii"


class HomotheticalFamily(Enum):
    """積の形のグラフ超曲面（相似超曲面）の族"""

    MINIMAL_LINEAR_PRODUCT = "minimal_linear_product"
    FLAT_EXP = "flat_exp"
    FLAT_POWER = "flat_power"
    A1_CYLINDER = "A1_cylinder"
    A2_EXP = "A2_exp"
    A3_POWER = "A3_power"
    B_LINEAR = "B_linear"


class ClaimStatus(Enum):
    """
    検証項目の判定結果

    不整合を黙って修正せず、第一級の結果として扱うための三値です。
    """

    PASS = "pass"
    FAIL = "fail"
    DISCREPANCY_DOCUMENTED = "discrepancy-documented"


@dataclass(frozen=True)
class Point3:
    """
    I³ のアフィン点

    計量の退化（x3 方向の距離が0になること）は演算側で扱い、格納値には持ちません。

    Attributes:
        x1: 第1座標
        x2: 第2座標
        x3: 第3座標（等方方向）
    """

    x1: float
    x2: float
    x3: float

    def __post_init__(self):
        if not all(math.isfinite(c) for c in (self.x1, self.x2, self.x3)):
            raise ValueError(f"Point3の座標は有限値である必要があります: {self}")

    def as_array(self) -> np.ndarray:
        return np.array([self.x1, self.x2, self.x3], dtype=float)

    @classmethod
    def from_array(cls, values) -> "Point3":
        return cls(float(values[0]), float(values[1]), float(values[2]))


@dataclass(frozen=True)
class Motion:
    """
    6パラメータの i-運動

    上面図でのユークリッド運動（回転 phi と平行移動 a, b）と、
    x3 方向へのせん断 c + d·x1 + e·x2 の合成です。

    Attributes:
        a, b: 上面図の平行移動
        c: x3 方向の平行移動
        d, e: x3 方向のせん断係数
        phi: 回転角（ラジアン）
    """

    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0
    e: float = 0.0
    phi: float = 0.0

    @classmethod
    def identity(cls) -> "Motion":
        return cls()


@dataclass(frozen=True)
class Domain:
    """
    パラメータ領域の長方形 [u_min, u_max] × [v_min, v_max]
    """

    u_min: float
    u_max: float
    v_min: float
    v_max: float

    def __post_init__(self):
        if not (self.u_min < self.u_max and self.v_min < self.v_max):
            raise ValueError(f"領域の下限は上限より小さい必要があります: {self}")

    def contains(self, u, v, margin: float = 0.0) -> bool:
        """(u, v)（配列可）がすべて領域内にあるかどうか"""
        u_arr = np.asarray(u, dtype=float)
        v_arr = np.asarray(v, dtype=float)
        return bool(
            np.all(u_arr >= self.u_min + margin)
            and np.all(u_arr <= self.u_max - margin)
            and np.all(v_arr >= self.v_min + margin)
            and np.all(v_arr <= self.v_max - margin)
        )

    def inset(self, margin: float) -> "Domain":
        return Domain(self.u_min + margin, self.u_max - margin, self.v_min + margin, self.v_max - margin)


@dataclass(frozen=True)
class SurfaceChart:
    """
    二回微分可能な写像 (u, v) -> I³ と、その6つの偏導関数場

    各関数はスカラーまたは numpy 配列を受け取り、先頭軸が座標 (3,) の配列を返します。

    Attributes:
        r: 位置
        r_u, r_v: 一階偏導関数
        r_uu, r_uv, r_vv: 二階偏導関数
        domain: パラメータ領域
        derivative_source: 偏導関数の出所
        fd_step: 差分で構成した場合の刻み幅
        name: 表示用の名前
        metadata: 族のパラメータなど（螺旋面では "helicoidal" キーに HelicoidalParams）
    """

    r: VectorField
    r_u: VectorField
    r_v: VectorField
    r_uu: VectorField
    r_uv: VectorField
    r_vv: VectorField
    domain: Domain
    derivative_source: DerivativeSource = DerivativeSource.ANALYTIC
    fd_step: Optional[float] = None
    name: str = "chart"
    metadata: Dict[str, Any] = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class SymForm2:
    """
    対称 2×2 係数の組

    第一基本形式 (g11, g12, g22) と第二基本形式 (h11, h12, h22) の両方を格納します。
    """

    a11: float
    a12: float
    a22: float

    @property
    def det(self) -> float:
        return self.a11 * self.a22 - self.a12 * self.a12

    def as_matrix(self) -> np.ndarray:
        return np.array([[self.a11, self.a12], [self.a12, self.a22]], dtype=float)

    def quadratic(self, du: float, dv: float) -> float:
        """方向 (du, dv) での二次形式の値"""
        return self.a11 * du * du + 2.0 * self.a12 * du * dv + self.a22 * dv * dv

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.a11, self.a12, self.a22)


@dataclass(frozen=True)
class CurvatureSample:
    """
    1点での相対曲率 K と等方平均曲率 H

    Attributes:
        K: 相対曲率 det(h)/det(g)
        H: 等方平均曲率（定義どおりの 2·det(g) で割った値）
        det_g: 第一基本形式の行列式
    """

    K: float
    H: float
    det_g: float


@dataclass(frozen=True)
class GraphHypersurface:
    """
    グラフ超曲面 X(x) = (x, F(x)), x ∈ ℝⁿ

    Attributes:
        n: 次元
        F: 高さ関数
        grad_F: 勾配
        hess_F: ヘッセ行列（対称）
        name: 表示用の名前
        domain: 各座標の許容区間（省略時は全体）
    """

    n: int
    F: Callable[[np.ndarray], float]
    grad_F: Callable[[np.ndarray], np.ndarray]
    hess_F: Callable[[np.ndarray], np.ndarray]
    name: str = "graph"
    domain: Optional[List[Tuple[float, float]]] = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"次元 n は正の整数である必要があります: {self.n}")


@dataclass(frozen=True)
class ProfileFunction:
    """
    スカラー関数 g(u) とその解析的な一階・二階導関数

    螺旋面の母線 c(u) = (u, 0, g(u)) を生成します。平行移動曲面の自由関数にも使います。

    Attributes:
        g: 関数値
        g1: 一階導関数
        g2: 二階導関数
        valid_range: 有効区間（開区間、端点は ±inf 可）
        name: 表示用の名前
        parameters: 生成パラメータ
    """

    g: ScalarFunction
    g1: ScalarFunction
    g2: ScalarFunction
    valid_range: Tuple[float, float] = (-math.inf, math.inf)
    name: str = "profile"
    parameters: Dict[str, float] = field(default_factory=dict, compare=False)

    def contains(self, u) -> bool:
        u_arr = np.asarray(u, dtype=float)
        lo, hi = self.valid_range
        return bool(np.all(u_arr > lo) and np.all(u_arr < hi))


@dataclass(frozen=True)
class HelicoidalParams:
    """
    螺旋面のパラメータ

    Attributes:
        profile: 母線の高さ関数 g
        pitch_h: ピッチ h
        type: 第一種 / 第二種
    """

    profile: ProfileFunction
    pitch_h: float = 0.0
    type: HelicoidalType = HelicoidalType.FIRST


@dataclass(frozen=True)
class CurveState:
    """
    弧長パラメータ s での曲線状態 (u, v, u̇, v̇, ü, v̈)
    """

    u: float
    v: float
    du: float
    dv: float
    ddu: float = 0.0
    ddv: float = 0.0


@dataclass(frozen=True)
class CurveClassification:
    """
    曲線の分類結果

    Attributes:
        is_geodesic: |kappa_g| <= tol
        is_asymptotic: |kappa_n| <= tol
        is_line_of_curvature: |tau_g_numerator| <= tol
        kappa_g: 測地曲率
        kappa_n: 法曲率
        tau_g_numerator: 測地捩率の分子
    """

    is_geodesic: bool
    is_asymptotic: bool
    is_line_of_curvature: bool
    kappa_g: float
    kappa_n: float
    tau_g_numerator: float

    @classmethod
    def from_values(cls, kappa_g: float, kappa_n: float, tau_g_numerator: float, tol: float) -> "CurveClassification":
        return cls(
            is_geodesic=abs(kappa_g) <= tol,
            is_asymptotic=abs(kappa_n) <= tol,
            is_line_of_curvature=abs(tau_g_numerator) <= tol,
            kappa_g=kappa_g,
            kappa_n=kappa_n,
            tau_g_numerator=tau_g_numerator,
        )


@dataclass(frozen=True)
class ParameterCurves:
    """
    点 (u0, v0) を通る2本のパラメータ曲線の分類

    Attributes:
        u_curve: u が動く曲線（v = v0 固定、u̇ = 1）
        v_curve: v が動く曲線（u = u0 固定、v̇ = 1/u0）
    """

    u_curve: CurveClassification
    v_curve: CurveClassification


@dataclass(frozen=True)
class CurveSample:
    """曲線上の1サンプル"""

    s: float
    state: CurveState
    point: Point3
    classification: CurveClassification


@dataclass(frozen=True)
class GridSpec:
    """
    評価格子の指定

    Attributes:
        u_range, v_range: 区間
        nu, nv: 分割点数（2以上）
    """

    u_range: Tuple[float, float]
    v_range: Tuple[float, float]
    nu: int = 51
    nv: int = 51

    def __post_init__(self):
        if self.nu < 2 or self.nv < 2:
            raise ValueError(f"格子点数は2以上である必要があります: {self.nu}x{self.nv}")

    @classmethod
    def from_domain(cls, domain: Domain, nu: int = 51, nv: int = 51) -> "GridSpec":
        return cls((domain.u_min, domain.u_max), (domain.v_min, domain.v_max), nu, nv)

    def mesh(self) -> Tuple[np.ndarray, np.ndarray]:
        """インデックス順 (i: u, j: v) の格子配列 U, V を返す"""
        us = np.linspace(self.u_range[0], self.u_range[1], self.nu)
        vs = np.linspace(self.v_range[0], self.v_range[1], self.nv)
        return np.meshgrid(us, vs, indexing="ij")

    def inset(self, margin: float) -> "GridSpec":
        return GridSpec(
            (self.u_range[0] + margin, self.u_range[1] - margin),
            (self.v_range[0] + margin, self.v_range[1] - margin),
            self.nu,
            self.nv,
        )


@dataclass
class ClaimResult:
    """
    検証レポートの1項目

    Attributes:
        id: 項目ID（例: "Thm3.1.i"）
        anchor: 出典の位置と原文の引用
        status: 判定
        max_abs_error: 最大絶対誤差（例外で中断した項目は inf）
        notes: 補足（discrepancy-documented では必須）
    """

    id: str
    anchor: str
    status: ClaimStatus
    max_abs_error: float = 0.0
    notes: str = ""

    def __post_init__(self):
        if not self.anchor:
            raise ValueError(f"検証項目 {self.id} には出典アンカーが必要です")
        if self.status is ClaimStatus.DISCREPANCY_DOCUMENTED and not self.notes:
            raise ValueError(f"検証項目 {self.id} の discrepancy-documented には注記が必要です")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "anchor": self.anchor,
            "status": self.status.value,
            # 例外で中断した項目の誤差は有限でないので null にする
            "max_abs_error": float(self.max_abs_error) if math.isfinite(self.max_abs_error) else None,
            "notes": self.notes,
        }


@dataclass
class VerificationReport:
    """
    定理スイートの実行結果

    Attributes:
        claims: 各検証項目の結果（実行順ではなく登録順）
        seed: 乱数シード
        tolerances: 使用した許容誤差
    """

    claims: List[ClaimResult] = field(default_factory=list)
    seed: int = 0
    tolerances: Dict[str, float] = field(default_factory=dict)

    def count(self, status: ClaimStatus) -> int:
        return sum(1 for claim in self.claims if claim.status is status)

    @property
    def has_failures(self) -> bool:
        return self.count(ClaimStatus.FAIL) > 0

    def get(self, claim_id: str) -> Optional[ClaimResult]:
        for claim in self.claims:
            if claim.id == claim_id:
                return claim
        return None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "claims": [claim.to_dict() for claim in self.claims],
            "seed": self.seed,
            "tolerances": dict(sorted(self.tolerances.items())),
        }


@dataclass
class CurvatureGrid:
    """
    格子上の位置と曲率のサンプル

    Attributes:
        grid: 評価格子
        U, V: パラメータ（形 (nu, nv)）
        points: 位置（形 (3, nu, nv)）
        K, H_def, H_s3: 曲率（形 (nu, nv)）
    """

    grid: GridSpec
    U: np.ndarray
    V: np.ndarray
    points: np.ndarray
    K: np.ndarray
    H_def: np.ndarray
    H_s3: np.ndarray


@dataclass
class MeshExport:
    """
    格子サンプルの三角形メッシュとスカラー場

    Attributes:
        vertices: 頂点（nu·nv 個、u が外側ループ）
        faces: 0始まりの頂点インデックス三つ組
        K: 頂点ごとの相対曲率
        H: 頂点ごとの等方平均曲率
        nu, nv: 格子サイズ
    """

    vertices: List[Point3]
    faces: List[Tuple[int, int, int]]
    K: List[float]
    H: List[float]
    nu: int
    nv: int

    def __post_init__(self):
        if len(self.vertices) != self.nu * self.nv:
            raise ValueError(f"頂点数 {len(self.vertices)} が格子 {self.nu}x{self.nv} と一致しません")
        count = len(self.vertices)
        for face in self.faces:
            if any(index < 0 or index >= count for index in face):
                raise ValueError(f"面インデックスが範囲外です: {face}")
