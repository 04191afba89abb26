"""
等方3次元空間の計量基礎モジュール

i-距離（上面図のユークリッド距離）、上面図への射影、
6パラメータの i-運動群とその合成を提供します。
計量は x3 方向に退化しているため、i-距離は擬距離です。
"""

import logging
import math
from typing import Tuple

import numpy as np

from utils.models import Motion, Point3

logger = logging.getLogger(__name__)

DISTANCE_REL_TOL = 1e-12


def top_view(x: Point3) -> Tuple[float, float]:
    """x3 方向への射影 (x1, x2)"""
    return (x.x1, x.x2)


def i_distance(x: Point3, y: Point3) -> float:
    """
    2点の i-距離

    上面図のユークリッド距離で、第3座標は寄与しません。

    Args:
        x, y: 点

    Returns:
        float: sqrt((y1-x1)² + (y2-x2)²)
    """
    return math.hypot(y.x1 - x.x1, y.x2 - x.x2)


def is_isotropic_pair(x: Point3, y: Point3) -> bool:
    """相異なる2点が同じ等方直線上にある（i-距離0）かどうか"""
    return x != y and x.x1 == y.x1 and x.x2 == y.x2


def motion_matrix(m: Motion) -> Tuple[np.ndarray, np.ndarray]:
    """
    i-運動の線形部分と平行移動部分

    Returns:
        Tuple[np.ndarray, np.ndarray]: (3×3 行列 A, 平行移動 t)。x' = A x + t
    """
    cos_phi, sin_phi = math.cos(m.phi), math.sin(m.phi)
    linear = np.array(
        [
            [cos_phi, -sin_phi, 0.0],
            [sin_phi, cos_phi, 0.0],
            [m.d, m.e, 1.0],
        ]
    )
    translation = np.array([m.a, m.b, m.c])
    return linear, translation


def apply_motion(m: Motion, x: Point3) -> Point3:
    """
    点に i-運動を適用

    x1' = a + x1 cos φ − x2 sin φ
    x2' = b + x1 sin φ + x2 cos φ
    x3' = c + d x1 + e x2 + x3
    """
    cos_phi, sin_phi = math.cos(m.phi), math.sin(m.phi)
    return Point3(
        m.a + x.x1 * cos_phi - x.x2 * sin_phi,
        m.b + x.x1 * sin_phi + x.x2 * cos_phi,
        m.c + m.d * x.x1 + m.e * x.x2 + x.x3,
    )


def apply_motion_array(m: Motion, points: np.ndarray) -> np.ndarray:
    """先頭軸が座標の配列 (3, ...) に i-運動を適用"""
    linear, translation = motion_matrix(m)
    moved = np.tensordot(linear, points, axes=(1, 0))
    return moved + translation.reshape((3,) + (1,) * (points.ndim - 1))


def compose_motions(m2: Motion, m1: Motion) -> Motion:
    """
    合成 m2 ∘ m1（先に m1、次に m2）

    Args:
        m2: 後から適用する運動
        m1: 先に適用する運動

    Returns:
        Motion: apply_motion(result, x) == apply_motion(m2, apply_motion(m1, x))
    """
    cos2, sin2 = math.cos(m2.phi), math.sin(m2.phi)
    cos1, sin1 = math.cos(m1.phi), math.sin(m1.phi)
    return Motion(
        a=m2.a + cos2 * m1.a - sin2 * m1.b,
        b=m2.b + sin2 * m1.a + cos2 * m1.b,
        c=m2.c + m1.c + m2.d * m1.a + m2.e * m1.b,
        # (d, e) = (d1, e1) + R(φ1)ᵀ (d2, e2)
        d=m1.d + cos1 * m2.d + sin1 * m2.e,
        e=m1.e - sin1 * m2.d + cos1 * m2.e,
        phi=m1.phi + m2.phi,
    )


def inverse_motion(m: Motion) -> Motion:
    """逆運動"""
    cos_phi, sin_phi = math.cos(m.phi), math.sin(m.phi)
    # 上面図: x = Rᵀ(x' − t)
    a = -(cos_phi * m.a + sin_phi * m.b)
    b = -(-sin_phi * m.a + cos_phi * m.b)
    # x3 = x3' − c − (d, e)·x、x = Rᵀx' + (a, b) なので新しい (d, e) は −R(d, e)
    d = -(cos_phi * m.d - sin_phi * m.e)
    e = -(sin_phi * m.d + cos_phi * m.e)
    c = -m.c - m.d * a - m.e * b
    return Motion(a=a, b=b, c=c, d=d, e=e, phi=-m.phi)


def motion_preserves_distance(m: Motion, x: Point3, y: Point3, rel_tol: float = DISTANCE_REL_TOL) -> bool:
    """
    i-運動が2点の i-距離を保つかどうか

    許容誤差は rel_tol · max(1, 座標の絶対値, 距離) です。
    """
    before = i_distance(x, y)
    after = i_distance(apply_motion(m, x), apply_motion(m, y))
    scale = max(
        1.0,
        before,
        abs(m.a),
        abs(m.b),
        *(abs(c) for c in (x.x1, x.x2, y.x1, y.x2)),
    )
    preserved = abs(after - before) <= rel_tol * scale
    if not preserved:
        logger.debug(f"i-距離が保存されません: {before} -> {after} ({m})")
    return preserved
