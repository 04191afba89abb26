"""
並列実行と計測ユーティリティのテスト
"""

import threading
import time

import pytest

from utils.performance_utils import MemoryMonitor, PerformanceMetrics, PerformanceOptimizer, performance_monitor


@pytest.mark.unit
class TestPerformanceOptimizer:
    """PerformanceOptimizerクラスのテスト"""

    def test_serial_map(self):
        results, metrics = PerformanceOptimizer().parallel_map([1, 2, 3], lambda x: x * x)
        assert results == [1, 4, 9]
        assert metrics.items_processed == 3
        assert metrics.worker_count == 1

    def test_parallel_map_keeps_order(self):
        """完了順に関係なく入力順で返す"""

        def slow_first(x):
            time.sleep(0.02 * (5 - x))
            return x, threading.current_thread().name

        results, metrics = PerformanceOptimizer(4).parallel_map(list(range(5)), slow_first)
        assert [x for x, _ in results] == [0, 1, 2, 3, 4]
        assert metrics.worker_count == 4

    def test_progress_callback(self):
        calls = []
        optimizer = PerformanceOptimizer(2)
        optimizer.parallel_map(["a", "b", "c"], str.upper, progress_callback=lambda d, t: calls.append((d, t)))
        assert sorted(calls) == [(1, 3), (2, 3), (3, 3)]

    def test_exceptions_propagate(self):
        def boom(x):
            raise ValueError(x)

        with pytest.raises(ValueError):
            PerformanceOptimizer(2).parallel_map([1], boom)

    def test_optimal_worker_count_with_low_memory(self, mocker):
        """利用可能メモリが2GB未満なら物理コア数の半分"""
        mocker.patch("utils.performance_utils.psutil.cpu_count", return_value=8)
        mocker.patch(
            "utils.performance_utils.psutil.virtual_memory",
            return_value=mocker.Mock(available=1 * 1024**3),
        )
        assert PerformanceOptimizer().get_optimal_worker_count() == 4

    def test_optimal_worker_count(self, mocker):
        mocker.patch("utils.performance_utils.psutil.cpu_count", return_value=None)
        mocker.patch(
            "utils.performance_utils.psutil.virtual_memory",
            return_value=mocker.Mock(available=16 * 1024**3),
        )
        assert PerformanceOptimizer().get_optimal_worker_count() == 1


@pytest.mark.unit
class TestMonitoring:
    """計測のテスト"""

    def test_metrics_throughput(self):
        metrics = PerformanceMetrics(processing_time=2.0, memory_usage=0.0, items_processed=10, worker_count=1)
        assert metrics.throughput == 5.0

    def test_memory_usage_failure_returns_zero(self, mocker):
        monitor = MemoryMonitor()
        mocker.patch.object(monitor.process, "memory_info", side_effect=RuntimeError("denied"))
        assert monitor.get_memory_usage() == 0.0

    def test_decorator_passes_through(self):
        @performance_monitor
        def add(a, b):
            return a + b

        assert add(2, 3) == 5
        assert add.__name__ == "add"

    def test_decorator_reraises(self):
        @performance_monitor
        def fail():
            raise ZeroDivisionError

        with pytest.raises(ZeroDivisionError):
            fail()
