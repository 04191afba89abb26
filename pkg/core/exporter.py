"""
出力モジュール

格子サンプルを三角形メッシュ（OBJ）と曲率格子（CSV）に、
曲線サンプルを CSV に、検証レポートを JSON に書き出します。
実数は17桁で出力するので、同じ入力からは同じバイト列が得られます。
"""

import csv
import json
import logging
from pathlib import Path
from typing import List, Sequence, Tuple, Union

import numpy as np
from scipy.interpolate import RectBivariateSpline

from core.surface import DEFAULT_FD_STEP
from core.verify import quantity_grid
from utils.models import (
    CurvatureGrid,
    CurvatureQuantity,
    CurveSample,
    DerivativeSource,
    Domain,
    GridSpec,
    MeshExport,
    Point3,
    SurfaceChart,
    VerificationReport,
)

logger = logging.getLogger(__name__)

GRID_CSV_HEADER = ["u", "v", "x1", "x2", "x3", "K", "H_def", "H_s3"]
CURVE_CSV_HEADER = [
    "s",
    "u",
    "v",
    "kappa_g",
    "kappa_n",
    "tau_g_numerator",
    "geodesic",
    "asymptotic",
    "line_of_curvature",
]

PathLike = Union[str, Path]


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def _prepare(path: PathLike) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    return target


def sample_grid(
    chart: SurfaceChart,
    grid: GridSpec,
    source: DerivativeSource = DerivativeSource.ANALYTIC,
    step: float = DEFAULT_FD_STEP,
) -> CurvatureGrid:
    """
    格子上で位置と K, H_def, H_s3 を評価

    Raises:
        OutOfDomainError: 格子がチャートの領域外
        NotAdmissibleError: いずれかの格子点で det g <= 許容値
    """
    U, V = grid.mesh()
    values = {q: quantity_grid(chart, q, U, V, source, step) for q in CurvatureQuantity}
    return CurvatureGrid(
        grid=grid,
        U=U,
        V=V,
        points=np.asarray(chart.r(U, V), dtype=float),
        K=np.asarray(values[CurvatureQuantity.K]),
        H_def=np.asarray(values[CurvatureQuantity.H_DEF]),
        H_s3=np.asarray(values[CurvatureQuantity.H_SECTION3_EXPR]),
    )


def grid_faces(nu: int, nv: int) -> List[Tuple[int, int, int]]:
    """u を外側ループとした頂点番号の格子を三角形に分割（0始まり）"""
    faces = []
    for i in range(nu - 1):
        for j in range(nv - 1):
            a, b = i * nv + j, (i + 1) * nv + j
            faces.append((a, b, b + 1))
            faces.append((a, b + 1, a + 1))
    return faces


def to_mesh(sample: CurvatureGrid) -> MeshExport:
    """格子サンプルを三角形メッシュに変換"""
    nu, nv = sample.grid.nu, sample.grid.nv
    flat = sample.points.reshape(3, nu * nv)
    return MeshExport(
        vertices=[Point3.from_array(flat[:, k]) for k in range(nu * nv)],
        faces=grid_faces(nu, nv),
        K=[float(k) for k in sample.K.ravel()],
        H=[float(h) for h in sample.H_def.ravel()],
        nu=nu,
        nv=nv,
    )


def write_obj(mesh: MeshExport, path: PathLike, name: str = "surface") -> Path:
    """
    OBJ 形式で書き出す

    各頂点行の直後に相対曲率をコメント行 `# vk <K>` として書きます。
    面の番号は1始まりです。
    """
    target = _prepare(path)
    with open(target, "w", encoding="utf-8", newline="\n") as f:
        f.write(f"# isokit mesh {mesh.nu}x{mesh.nv}\n")
        f.write(f"o {name}\n")
        for vertex, K in zip(mesh.vertices, mesh.K):
            f.write(f"v {_fmt(vertex.x1)} {_fmt(vertex.x2)} {_fmt(vertex.x3)}\n")
            f.write(f"# vk {_fmt(K)}\n")
        for a, b, c in mesh.faces:
            f.write(f"f {a + 1} {b + 1} {c + 1}\n")
    logger.info(f"📝 OBJ を書き出しました: {target} (頂点 {len(mesh.vertices)}, 面 {len(mesh.faces)})")
    return target


def read_obj(path: PathLike) -> Tuple[np.ndarray, np.ndarray, List[Tuple[int, int, int]]]:
    """
    write_obj の出力を読み込む

    Returns:
        Tuple: (頂点 (N, 3), 頂点ごとの K (N,), 0始まりの面)
    """
    vertices, curvatures, faces = [], [], []
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            parts = line.split()
            if not parts:
                continue
            if parts[0] == "v":
                vertices.append([float(x) for x in parts[1:4]])
            elif parts[:2] == ["#", "vk"]:
                curvatures.append(float(parts[2]))
            elif parts[0] == "f":
                faces.append(tuple(int(x) - 1 for x in parts[1:4]))
    return np.array(vertices), np.array(curvatures), faces


def write_grid_csv(sample: CurvatureGrid, path: PathLike) -> Path:
    """曲率格子を CSV (u, v, x1, x2, x3, K, H_def, H_s3) で書き出す"""
    target = _prepare(path)
    columns = [
        sample.U.ravel(),
        sample.V.ravel(),
        sample.points[0].ravel(),
        sample.points[1].ravel(),
        sample.points[2].ravel(),
        sample.K.ravel(),
        sample.H_def.ravel(),
        sample.H_s3.ravel(),
    ]
    with open(target, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(GRID_CSV_HEADER)
        for row in zip(*columns):
            writer.writerow([_fmt(value) for value in row])
    logger.info(f"📝 曲率格子を書き出しました: {target} ({sample.grid.nu}x{sample.grid.nv})")
    return target


def write_curve_csv(samples: Sequence[CurveSample], path: PathLike) -> Path:
    """曲線サンプルを CSV で書き出す（分類フラグは 0/1）"""
    target = _prepare(path)
    with open(target, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CURVE_CSV_HEADER)
        for sample in samples:
            c = sample.classification
            writer.writerow(
                [
                    _fmt(sample.s),
                    _fmt(sample.state.u),
                    _fmt(sample.state.v),
                    _fmt(c.kappa_g),
                    _fmt(c.kappa_n),
                    _fmt(c.tau_g_numerator),
                    int(c.is_geodesic),
                    int(c.is_asymptotic),
                    int(c.is_line_of_curvature),
                ]
            )
    logger.info(f"📝 曲線サンプルを書き出しました: {target} ({len(samples)}行)")
    return target


def report_to_json(report: VerificationReport) -> str:
    """キーを整列した JSON 文字列（末尾改行つき）"""
    return json.dumps(report.to_dict(), indent=2, sort_keys=True, ensure_ascii=False, allow_nan=False) + "\n"


def write_report_json(report: VerificationReport, path: PathLike) -> Path:
    target = _prepare(path)
    with open(target, "w", encoding="utf-8", newline="\n") as f:
        f.write(report_to_json(report))
    logger.info(f"📝 検証レポートを書き出しました: {target}")
    return target


def mesh_chart(vertices: np.ndarray, grid: GridSpec, name: str = "mesh") -> SurfaceChart:
    """
    格子メッシュの頂点を五次スプラインで補間したチャート

    出力ファイルから曲率を再計算して照合するために使います。
    偏導関数はスプラインの導関数です。

    Args:
        vertices: 頂点 (nu·nv, 3)、u が外側ループ
        grid: メッシュを作った格子
    """
    points = np.asarray(vertices, dtype=float).reshape(grid.nu, grid.nv, 3)
    us = np.linspace(grid.u_range[0], grid.u_range[1], grid.nu)
    vs = np.linspace(grid.v_range[0], grid.v_range[1], grid.nv)
    kx, ky = min(5, grid.nu - 1), min(5, grid.nv - 1)
    splines = [RectBivariateSpline(us, vs, points[:, :, k], kx=kx, ky=ky) for k in range(3)]

    def field(dx: int, dy: int):
        def evaluate(u, v):
            u_arr, v_arr = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
            return np.stack([s.ev(u_arr, v_arr, dx=dx, dy=dy).reshape(u_arr.shape) for s in splines])

        return evaluate

    return SurfaceChart(
        r=field(0, 0),
        r_u=field(1, 0),
        r_v=field(0, 1),
        r_uu=field(2, 0),
        r_uv=field(1, 1),
        r_vv=field(0, 2),
        domain=Domain(grid.u_range[0], grid.u_range[1], grid.v_range[0], grid.v_range[1]),
        derivative_source=DerivativeSource.FINITE_DIFFERENCE,
        name=name,
    )
