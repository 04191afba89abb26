"""
エラーハンドリングモジュール

このモジュールは、幾何計算で発生するエラーの定義と記録を行います。
例外の分類、種別ごとの統計、検証スイート内で捕捉したエラーの管理などの機能を提供します。
"""

import datetime
import logging
from typing import Any, Dict, List, Optional, Tuple

# ロガーの取得
logger = logging.getLogger(__name__)


class GeometryError(Exception):
    """幾何計算エラーの基底クラス"""

    error_type = "unexpected"

    def __init__(self, message: str, operation: str = ""):
        super().__init__(message)
        self.operation = operation


class OutOfDomainError(GeometryError):
    """パラメータ領域外での評価"""

    error_type = "out_of_domain"

    def __init__(self, message: str, u: Any = None, v: Any = None, domain: Any = None, operation: str = ""):
        super().__init__(message, operation)
        self.u = u
        self.v = v
        self.domain = domain


class NotAdmissibleError(GeometryError):
    """等方接平面（det g <= 許容値）の検出"""

    error_type = "not_admissible"

    def __init__(self, message: str, u: Any = None, v: Any = None, det_g: float = 0.0, operation: str = ""):
        super().__init__(message, operation)
        self.u = u
        self.v = v
        self.det_g = det_g


class InvalidRangeError(GeometryError):
    """チャートの u 区間が母線の有効区間外、または 0 に触れる"""

    error_type = "invalid_range"

    def __init__(
        self,
        message: str,
        requested: Optional[Tuple[float, float]] = None,
        valid: Optional[Tuple[float, float]] = None,
        operation: str = "",
    ):
        super().__init__(message, operation)
        self.requested = requested
        self.valid = valid


class EmptyRangeError(GeometryError):
    """根号の中身が正となる区間が存在しない"""

    error_type = "empty_range"

    def __init__(self, message: str, parameters: Optional[Dict[str, float]] = None, operation: str = ""):
        super().__init__(message, operation)
        self.parameters = parameters or {}


class InvalidConstantError(GeometryError):
    """非零であるべき定数（または制約付き定数）の違反"""

    error_type = "invalid_constant"

    def __init__(self, message: str, name: str = "", value: Any = None, operation: str = ""):
        super().__init__(message, operation)
        self.name = name
        self.value = value


class DomainError(GeometryError):
    """対数・べき・因子の定義域違反"""

    error_type = "domain"

    def __init__(self, message: str, detail: str = "", operation: str = ""):
        super().__init__(message, operation)
        self.detail = detail


class NotUnitSpeedError(GeometryError):
    """弧長パラメータを仮定する式に単位速さでない状態が渡された"""

    error_type = "not_unit_speed"

    def __init__(self, message: str, speed_sq: float = 0.0, operation: str = ""):
        super().__init__(message, operation)
        self.speed_sq = speed_sq


def classify_exception(exc: BaseException) -> str:
    """
    例外をエラー種別キーに変換

    Args:
        exc: 例外

    Returns:
        str: ErrorLogger の種別キー
    """
    if isinstance(exc, GeometryError):
        return exc.error_type
    if isinstance(exc, AssertionError):
        return "claim_failure"
    return "unexpected"


class ErrorLogger:
    """
    エラーログの記録と管理を行うクラス

    幾何計算・検証スイート・CLI で発生したエラーを統一的に記録し、
    種別ごとの統計やサマリーを提供します。
    """

    def __init__(self):
        """
        ErrorLoggerを初期化

        エラーリストとエラー種別ごとのカウンターを初期化します。
        """
        self.errors: List[Dict[str, Any]] = []
        self.error_counts = {
            "out_of_domain": 0,  # 領域外評価
            "not_admissible": 0,  # 等方接平面
            "invalid_range": 0,  # チャート区間の不正
            "empty_range": 0,  # 有効区間なし
            "invalid_constant": 0,  # 定数の制約違反
            "domain": 0,  # 定義域違反
            "not_unit_speed": 0,  # 単位速さでない曲線状態
            "claim_failure": 0,  # 検証項目の不合格
            "unexpected": 0,  # 予期しないエラー
        }

    def log_error(self, context: str, error_msg: str, error_type: str):
        """
        エラーを記録

        Args:
            context: エラーが発生した処理（検証項目IDやコマンド名）
            error_msg: エラーメッセージ
            error_type: エラー種別
        """
        error_entry = {
            "timestamp": datetime.datetime.now(),
            "context": context,
            "error": error_msg,
            "type": error_type,
        }

        self.errors.append(error_entry)

        if error_type in self.error_counts:
            self.error_counts[error_type] += 1
        else:
            self.error_counts["unexpected"] += 1

        # ログファイルにも記録
        logger.error(f"[{error_type.upper()}] {context} - {error_msg}")

    def log_exception(self, context: str, exc: BaseException) -> str:
        """
        例外を分類して記録

        Returns:
            str: 記録した種別キー
        """
        error_type = classify_exception(exc)
        self.log_error(context, f"{type(exc).__name__}: {exc}", error_type)
        return error_type

    def get_error_summary(self) -> Dict[str, Any]:
        """
        エラーサマリーを取得

        Returns:
            Dict[str, Any]: エラーサマリー情報
                - total_errors: 総エラー数
                - error_counts: エラー種別ごとのカウント
                - recent_errors: 最新10件のエラー
        """
        return {
            "total_errors": len(self.errors),
            "error_counts": self.error_counts.copy(),
            "recent_errors": self.errors[-10:] if self.errors else [],
        }

    def get_errors_by_type(self, error_type: str) -> List[Dict]:
        """
        指定されたタイプのエラーを取得

        Args:
            error_type: エラータイプ

        Returns:
            List[Dict]: 指定されたタイプのエラーのリスト
        """
        return [error for error in self.errors if error["type"] == error_type]

    def clear_errors(self):
        """
        エラーログをクリア

        記録されているすべてのエラーとエラーカウンターをリセットします。
        """
        self.errors.clear()
        self.error_counts = {key: 0 for key in self.error_counts}


# グローバルエラーログインスタンス
error_logger = ErrorLogger()
