"""
設定読み込みモジュール

検証ルール（シード・許容誤差・格子・乱択範囲）を YAML ファイルから読み込みます。
ファイルが無い場合は組み込みの既定値を使い、環境変数で一部を上書きします。
"""

import copy
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml

logger = logging.getLogger(__name__)

DEFAULT_RULES_PATH = Path(__file__).resolve().parent.parent / "verification_rules.yml"

DEFAULT_RULES: Dict[str, Any] = {
    "seed": 0,
    "tolerances": {
        "admissibility": 1e-12,
        "fd_step": 1e-5,
        "classification": 1e-9,
        "classification_fd": 1e-5,
        "constancy": 1e-8,
        "fd_constancy": 1e-5,
        "laplacian": 1e-8,
        "oracle": 1e-6,
        "invariance": 1e-9,
        "graph_reduction": 1e-10,
        "frame": 1e-6,
        "distance_rel": 1e-12,
        "quadrature": 1e-10,
        "torsion_revolution": 1e-12,
        "mean_expr": 1e-10,
        "power_flatness": 1e-7,
        "hypersurface": 1e-9,
        "type_identity": 1e-12,
    },
    "grid": {"nu": 51, "nv": 51},
    "random_draws": {
        "count": 100,
        "u0": [0.5, 5.0],
        "h": [-3.0, 3.0],
        "oracle_charts": 50,
        "invariance_points": 20,
        "invariance_motions": 20,
    },
}


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_verification_rules(path: Optional[Union[str, Path]] = None) -> Dict[str, Any]:
    """
    検証ルールを読み込む

    パスの解決順は 引数 → 環境変数 ISOKIT_RULES → リポジトリ既定 です。
    環境変数 ISOKIT_SEED があればシードを上書きします。

    Args:
        path: YAML ファイルのパス

    Returns:
        Dict[str, Any]: 既定値とマージ済みのルール

    Raises:
        ValueError: ファイルの解析に失敗した場合
    """
    rules_path = Path(path or os.getenv("ISOKIT_RULES") or DEFAULT_RULES_PATH)
    try:
        with open(rules_path, "r", encoding="utf-8") as f:
            loaded = yaml.safe_load(f) or {}
        if not isinstance(loaded, dict):
            raise ValueError("トップレベルがマッピングではありません")
        rules = _merge(DEFAULT_RULES, loaded)
        logger.info(f"検証ルールを '{rules_path}' から読み込みました。")
    except FileNotFoundError:
        logger.warning(f"ルールファイル '{rules_path}' が見つかりません。既定値を使用します。")
        rules = copy.deepcopy(DEFAULT_RULES)
    except Exception as e:
        logger.error(f"ルールファイルの読み込みに失敗しました: {e}")
        raise ValueError(f"ルールファイルの解析に失敗しました: {rules_path}")

    env_seed = os.getenv("ISOKIT_SEED")
    if env_seed:
        try:
            rules["seed"] = int(env_seed)
            logger.info(f"環境変数 ISOKIT_SEED によりシードを {rules['seed']} に設定しました。")
        except ValueError:
            logger.warning(f"ISOKIT_SEED が整数ではありません: {env_seed!r}")

    rules["tolerances"] = {key: float(value) for key, value in rules["tolerances"].items()}
    return rules


def default_tolerances() -> Dict[str, float]:
    """組み込みの許容誤差（ファイルを読まない）"""
    return {key: float(value) for key, value in DEFAULT_RULES["tolerances"].items()}
