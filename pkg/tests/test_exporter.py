"""
メッシュ・CSV・JSON 出力のテスト
"""

import csv
import json
import math
import os

import numpy as np
import pytest

from core.curves import sample_curve
from core.exporter import (
    CURVE_CSV_HEADER,
    GRID_CSV_HEADER,
    grid_faces,
    mesh_chart,
    read_obj,
    report_to_json,
    sample_grid,
    to_mesh,
    write_curve_csv,
    write_grid_csv,
    write_obj,
    write_report_json,
)
from core.families import parabolic_i_sphere
from core.surface import curvature_at
from core.verify import fd_forms_oracle
from utils.models import ClaimResult, ClaimStatus, GridSpec, VerificationReport


@pytest.fixture
def sphere_sample():
    chart = parabolic_i_sphere(2.0)
    return chart, sample_grid(chart, GridSpec((-1.0, 1.0), (-1.0, 1.0), 9, 7))


def read_rows(path):
    with open(path, "r", encoding="utf-8", newline="") as f:
        return list(csv.reader(f))


@pytest.mark.unit
class TestMesh:
    """三角形メッシュのテスト"""

    def test_face_count(self):
        faces = grid_faces(5, 4)
        assert len(faces) == 2 * 4 * 3
        assert max(max(face) for face in faces) == 5 * 4 - 1
        assert min(min(face) for face in faces) == 0

    def test_faces_are_consistently_oriented(self, sphere_sample):
        """上面図で全ての三角形が同じ向き"""
        _, sample = sphere_sample
        mesh = to_mesh(sample)
        xy = np.array([[p.x1, p.x2] for p in mesh.vertices])
        signs = set()
        for a, b, c in mesh.faces:
            (x1, y1), (x2, y2) = xy[b] - xy[a], xy[c] - xy[a]
            signs.add(np.sign(x1 * y2 - x2 * y1))
        assert len(signs) == 1

    def test_sample_values(self, sphere_sample):
        chart, sample = sphere_sample
        assert sample.points.shape == (3, 9, 7)
        np.testing.assert_allclose(sample.K, 4.0, atol=1e-12)
        np.testing.assert_allclose(sample.H_def, 2.0, atol=1e-12)
        np.testing.assert_allclose(sample.H_s3, 4.0, atol=1e-12)


@pytest.mark.unit
class TestObj:
    """OBJ 出力のテスト"""

    def test_layout(self, sphere_sample, temp_dir):
        _, sample = sphere_sample
        path = write_obj(to_mesh(sample), os.path.join(temp_dir, "nested", "sphere.obj"), name="sphere")
        with open(path, "r", encoding="utf-8") as f:
            lines = f.read().splitlines()
        assert lines[0] == "# isokit mesh 9x7"
        assert lines[1] == "o sphere"
        assert sum(line.startswith("v ") for line in lines) == 63
        assert sum(line.startswith("# vk ") for line in lines) == 63
        assert sum(line.startswith("f ") for line in lines) == 2 * 8 * 6
        # 頂点行の直後にその頂点の K
        assert lines[2].startswith("v ") and lines[3].startswith("# vk ")

    def test_read_back(self, sphere_sample, temp_dir):
        _, sample = sphere_sample
        mesh = to_mesh(sample)
        vertices, K, faces = read_obj(write_obj(mesh, os.path.join(temp_dir, "sphere.obj")))
        np.testing.assert_array_equal(vertices, sample.points.reshape(3, -1).T)
        np.testing.assert_array_equal(K, sample.K.ravel())
        assert faces == mesh.faces

    def test_output_is_byte_identical(self, sphere_sample, temp_dir):
        _, sample = sphere_sample
        a = write_obj(to_mesh(sample), os.path.join(temp_dir, "a.obj"))
        b = write_obj(to_mesh(sample), os.path.join(temp_dir, "b.obj"))
        with open(a, "rb") as fa, open(b, "rb") as fb:
            assert fa.read() == fb.read()

    def test_curvature_recomputed_from_mesh(self, sphere_sample, temp_dir):
        """書き出した頂点から補間したチャートでも K と形式が一致"""
        chart, sample = sphere_sample
        vertices, K, _ = read_obj(write_obj(to_mesh(sample), os.path.join(temp_dir, "sphere.obj")))
        rebuilt = mesh_chart(vertices, sample.grid)
        for u, v in [(0.1, 0.2), (-0.4, 0.5), (0.6, -0.3)]:
            assert curvature_at(rebuilt, u, v).K == pytest.approx(4.0, abs=1e-4)
            g_mesh, h_mesh = fd_forms_oracle(rebuilt, u, v)
            g_fd, h_fd = fd_forms_oracle(chart, u, v)
            np.testing.assert_allclose(g_mesh.as_tuple(), g_fd.as_tuple(), atol=1e-4)
            np.testing.assert_allclose(h_mesh.as_tuple(), h_fd.as_tuple(), atol=1e-4)
        np.testing.assert_allclose(K, 4.0, atol=1e-12)


@pytest.mark.unit
class TestCsv:
    """CSV 出力のテスト"""

    def test_grid_csv(self, sphere_sample, temp_dir):
        _, sample = sphere_sample
        rows = read_rows(write_grid_csv(sample, os.path.join(temp_dir, "sphere.csv")))
        assert rows[0] == GRID_CSV_HEADER
        assert len(rows) == 1 + 63
        first = [float(x) for x in rows[1]]
        assert first[:2] == [-1.0, -1.0]
        assert first[5] == pytest.approx(4.0)
        # u が外側ループなので2行目は v だけ進む
        assert float(rows[2][0]) == -1.0
        assert float(rows[2][1]) > -1.0

    def test_curve_csv(self, flat_chart, temp_dir):
        samples = sample_curve(
            flat_chart,
            lambda t: 2.0,
            lambda t: 1.0 + t / 2.0,
            [0.0, 0.5, 1.0],
            derivatives=(lambda t: 0.0, lambda t: 0.5, lambda t: 0.0, lambda t: 0.0),
        )
        rows = read_rows(write_curve_csv(samples, os.path.join(temp_dir, "curve.csv")))
        assert rows[0] == CURVE_CSV_HEADER
        assert len(rows) == 4
        for row in rows[1:]:
            assert float(row[3]) == pytest.approx(0.5)
            assert row[6:] == ["0", "0", "0"]


@pytest.mark.unit
class TestReportJson:
    """レポート JSON のテスト"""

    def make_report(self):
        claims = [
            ClaimResult("Thm3.3", 'Thm 3.3: "quote"', ClaimStatus.PASS, 1e-12, "ok"),
            ClaimResult("H.factor2", 'Thm 3.3: "H"', ClaimStatus.DISCREPANCY_DOCUMENTED, 2e-13, "H = H0/2"),
        ]
        return VerificationReport(claims=claims, seed=5, tolerances={"oracle": 1e-6, "constancy": 1e-8})

    def test_keys_are_sorted(self):
        text = report_to_json(self.make_report())
        assert text.endswith("\n")
        assert text.index('"claims"') < text.index('"seed"') < text.index('"tolerances"')
        assert text.index('"constancy"') < text.index('"oracle"')
        data = json.loads(text)
        assert [c["status"] for c in data["claims"]] == ["pass", "discrepancy-documented"]
        assert data["claims"][0]["id"] == "Thm3.3"

    def test_non_finite_error_is_null(self):
        """例外で中断した項目の誤差は null として書く"""
        report = self.make_report()
        report.claims.append(ClaimResult("Distance", 'Prop 1: "d"', ClaimStatus.FAIL, math.inf, "RuntimeError: x"))
        data = json.loads(report_to_json(report))
        assert data["claims"][-1]["max_abs_error"] is None
        assert "Infinity" not in report_to_json(report)

    def test_written_file(self, temp_dir):
        report = self.make_report()
        path = write_report_json(report, os.path.join(temp_dir, "out", "report.json"))
        with open(path, "r", encoding="utf-8") as f:
            assert f.read() == report_to_json(report)
