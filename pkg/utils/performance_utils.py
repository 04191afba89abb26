"""
パフォーマンスユーティリティモジュール

このモジュールは、検証スイートや格子評価の並列実行と計測機能を提供します。
順序を保つ並列マップ、メモリ使用量監視、処理時間の計測デコレータを含みます。
"""

import logging
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import wraps
from typing import Any, Callable, List, Optional, Sequence, Tuple

import psutil

logger = logging.getLogger(__name__)


@dataclass
class PerformanceMetrics:
    """
    パフォーマンス測定結果を格納するデータクラス

    Attributes:
        processing_time: 処理時間（秒）
        memory_usage: メモリ使用量の変化（MB）
        items_processed: 処理されたアイテム数
        worker_count: 使用されたワーカー数
        throughput: スループット（アイテム/秒）
    """

    processing_time: float
    memory_usage: float
    items_processed: int
    worker_count: int
    throughput: float = 0.0

    def __post_init__(self):
        """スループットを自動計算"""
        if self.processing_time > 0:
            self.throughput = self.items_processed / self.processing_time


class MemoryMonitor:
    """
    メモリ使用量を監視するクラス
    """

    def __init__(self):
        self.process = psutil.Process()
        self.initial_memory = self.get_memory_usage()

    def get_memory_usage(self) -> float:
        """
        現在のメモリ使用量を取得（MB単位）

        Returns:
            float: メモリ使用量（MB）
        """
        try:
            memory_info = self.process.memory_info()
            return memory_info.rss / 1024 / 1024
        except Exception as e:
            logger.warning(f"メモリ使用量の取得に失敗: {e}")
            return 0.0

    def get_memory_delta(self) -> float:
        """初期値からのメモリ使用量の変化（MB）"""
        return self.get_memory_usage() - self.initial_memory

    def log_memory_usage(self, context: str = ""):
        """
        現在のメモリ使用量をログに記録

        Args:
            context: ログのコンテキスト情報
        """
        current = self.get_memory_usage()
        delta = self.get_memory_delta()
        logger.debug(f"メモリ使用量 {context}: {current:.1f}MB (変化: {delta:+.1f}MB)")


class PerformanceOptimizer:
    """
    並列実行を管理するクラス

    検証項目は互いに独立なので、スレッドプールで評価し、
    結果は入力順に並べ直して返します（レポートの決定性のため）。
    """

    def __init__(self, default_worker_count: int = 1):
        """
        Args:
            default_worker_count: デフォルトのワーカー数
        """
        self.default_worker_count = max(1, default_worker_count)
        self.memory_monitor = MemoryMonitor()

    def parallel_map(
        self,
        items: Sequence[Any],
        function: Callable[[Any], Any],
        worker_count: Optional[int] = None,
        progress_callback: Optional[Callable[[int, int], None]] = None,
    ) -> Tuple[List[Any], PerformanceMetrics]:
        """
        各アイテムに関数を適用し、入力順の結果を返す

        関数内の例外はそのまま伝播します（呼び出し側で項目ごとに処理する前提）。

        Args:
            items: 処理対象
            function: 適用する関数
            worker_count: ワーカー数（Noneの場合はデフォルト値、1なら逐次実行）
            progress_callback: 進捗コールバック (完了数, 総数)

        Returns:
            Tuple[List[Any], PerformanceMetrics]: 結果とパフォーマンス情報
        """
        workers = max(1, worker_count or self.default_worker_count)
        start_time = time.time()
        initial_memory = self.memory_monitor.get_memory_usage()
        total = len(items)

        logger.info(f"🧮 評価開始: {total}項目, ワーカー数: {workers}")

        processed_count = 0
        lock = threading.Lock()

        def run(item):
            nonlocal processed_count
            result = function(item)
            with lock:
                processed_count += 1
                if progress_callback:
                    progress_callback(processed_count, total)
            return result

        if workers == 1:
            results = [run(item) for item in items]
        else:
            with ThreadPoolExecutor(max_workers=workers) as executor:
                # map は入力順を保つ
                results = list(executor.map(run, items))

        processing_time = time.time() - start_time
        metrics = PerformanceMetrics(
            processing_time=processing_time,
            memory_usage=self.memory_monitor.get_memory_usage() - initial_memory,
            items_processed=total,
            worker_count=workers,
        )

        logger.info(f"🧮 評価完了: {total}項目, {processing_time:.2f}秒, {metrics.throughput:.1f}項目/秒")
        return results, metrics

    def get_optimal_worker_count(self) -> int:
        """
        システムリソースを考慮した最適なワーカー数を計算

        Returns:
            int: 推奨ワーカー数
        """
        cpu_count = psutil.cpu_count(logical=False) or 1
        memory_available_gb = psutil.virtual_memory().available / 1024 / 1024 / 1024

        # numpy の演算は GIL を解放するので物理コア数を上限にする
        if memory_available_gb < 2:
            optimal_workers = max(1, cpu_count // 2)
        else:
            optimal_workers = cpu_count

        logger.info(
            f"最適ワーカー数計算: {optimal_workers} (CPU: {cpu_count}, 利用可能メモリ: {memory_available_gb:.1f}GB)"
        )
        return optimal_workers


def performance_monitor(func: Callable) -> Callable:
    """
    関数の処理時間とメモリを記録するデコレータ

    Args:
        func: 監視対象の関数

    Returns:
        Callable: デコレートされた関数
    """

    @wraps(func)
    def wrapper(*args, **kwargs):
        monitor = MemoryMonitor()
        start_time = time.time()

        logger.debug(f"⏱️ 計測開始: {func.__name__}")
        monitor.log_memory_usage("開始時")

        try:
            result = func(*args, **kwargs)
            processing_time = time.time() - start_time
            monitor.log_memory_usage("完了時")
            logger.info(f"⏱️ {func.__name__}: {processing_time:.2f}秒")
            return result

        except Exception as e:
            processing_time = time.time() - start_time
            monitor.log_memory_usage("エラー時")
            logger.error(f"⏱️ {func.__name__} が {processing_time:.2f}秒で中断: {e}")
            raise

    return wrapper
