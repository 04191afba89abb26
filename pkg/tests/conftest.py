"""
pytest設定ファイル
テスト実行時の共通設定とフィクスチャを定義します。
"""

import math
import os
import shutil
import sys
import tempfile

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from core.families import (  # noqa: E402
    constant_H_profile,
    flat_helicoidal_profile,
    helicoidal_chart,
    log_helicoidal_profile,
)
from utils.error_handler import error_logger  # noqa: E402
from utils.models import HelicoidalParams  # noqa: E402


@pytest.fixture
def temp_dir():
    """テスト用の一時ディレクトリを提供するフィクスチャ"""
    temp_path = tempfile.mkdtemp()
    yield temp_path
    shutil.rmtree(temp_path, ignore_errors=True)


@pytest.fixture
def flat_chart():
    """平坦螺旋面（α=1, h=1, u∈[1.01, 5], v∈[0, 4π]）"""
    p = HelicoidalParams(profile=flat_helicoidal_profile(1.0, 1.0), pitch_h=1.0)
    return helicoidal_chart(p, u_range=(1.01, 5.0), v_range=(0.0, 4.0 * math.pi))


@pytest.fixture
def constant_H_chart():
    """平均曲率一定の螺旋面（H₀=−1, α=1, β=0, h=1.5）"""
    p = HelicoidalParams(profile=constant_H_profile(-1.0, 1.0, 0.0), pitch_h=1.5)
    return helicoidal_chart(p, u_range=(0.5, 3.0), v_range=(-math.pi, math.pi))


@pytest.fixture
def minimal_chart():
    """g = ln u の螺旋面（h=0.7）"""
    p = HelicoidalParams(profile=log_helicoidal_profile(1.0), pitch_h=0.7)
    return helicoidal_chart(p, u_range=(0.5, 3.0), v_range=(0.0, 2.0 * math.pi))


@pytest.fixture(autouse=True)
def clean_error_logger():
    """各テストの前後でグローバルのエラーログを空にする"""
    error_logger.clear_errors()
    yield
    error_logger.clear_errors()


@pytest.fixture(autouse=True)
def isolated_env(monkeypatch):
    """ルール関係の環境変数をテストに持ち込まない"""
    monkeypatch.delenv("ISOKIT_SEED", raising=False)
    monkeypatch.delenv("ISOKIT_RULES", raising=False)


# テスト実行時の設定
def pytest_configure(config):
    """pytest実行時の設定"""
    # テスト実行時の警告を抑制
    import warnings

    warnings.filterwarnings("ignore", category=DeprecationWarning)
    warnings.filterwarnings("ignore", category=PendingDeprecationWarning)


# テストマーカーの定義
def pytest_collection_modifyitems(config, items):
    """テストアイテムの修正"""
    for item in items:
        if "performance" in item.nodeid:
            item.add_marker(pytest.mark.performance)
        if "integration" in item.nodeid:
            item.add_marker(pytest.mark.integration)
