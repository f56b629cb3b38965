"""
パフォーマンス監視

検証・列挙の所要時間とメモリ使用量を計測し、受け入れ予算と比較する。
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from datetime import datetime
from typing import Any, Dict, List, Optional

import psutil
import structlog

logger = structlog.get_logger(__name__)


@dataclass
class PerformanceThresholds:
    """パフォーマンス閾値（秒）"""
    max_named_values: float = 1.0        # 既知の値の再現
    max_closed_form_sweep: float = 10.0  # g(p,k,q) 320ケース
    max_exhaustive_small: float = 30.0   # n = 2,3,4 全列挙
    max_exhaustive_long: float = 600.0   # n = 5 全列挙（ロングモード）
    max_witness_sweep: float = 120.0     # n = 7..14 の全証拠
    max_number_theory: float = 5.0


@dataclass
class ResourceSnapshot:
    """リソース使用状況"""
    timestamp: str
    memory_mb: float
    cpu_count: int

    @classmethod
    def capture(cls) -> "ResourceSnapshot":
        process = psutil.Process()
        return cls(
            timestamp=datetime.now().isoformat(),
            memory_mb=process.memory_info().rss / (1024 * 1024),
            cpu_count=psutil.cpu_count() or 1,
        )


class PerformanceAlert:
    """パフォーマンスアラート"""

    def __init__(self, metric: str, current: float, threshold: float):
        self.metric = metric
        self.current = current
        self.threshold = threshold
        self.severity = "HIGH" if current > threshold * 1.5 else "MEDIUM"

    def __str__(self) -> str:
        return f"[{self.severity}] {self.metric}: {self.current:.2f}s > {self.threshold:.2f}s"


class Stopwatch:
    """計測用コンテキスト"""

    def __init__(self, label: str = ""):
        self.label = label
        self.started: Optional[float] = None
        self.elapsed: float = 0.0

    def __enter__(self) -> "Stopwatch":
        self.started = time.perf_counter()
        return self

    def __exit__(self, *exc: Any) -> None:
        assert self.started is not None
        self.elapsed = time.perf_counter() - self.started


@dataclass
class PerformanceMonitor:
    """区間ごとの所要時間を記録し閾値を確認"""
    thresholds: PerformanceThresholds = field(default_factory=PerformanceThresholds)
    timings: Dict[str, float] = field(default_factory=dict)
    alerts: List[PerformanceAlert] = field(default_factory=list)

    def record(self, metric: str, elapsed: float) -> Optional[PerformanceAlert]:
        self.timings[metric] = elapsed
        threshold = getattr(self.thresholds, f"max_{metric}", None)
        if threshold is not None and elapsed > threshold:
            alert = PerformanceAlert(metric, elapsed, threshold)
            self.alerts.append(alert)
            logger.warning("performance_alert", alert=str(alert))
            return alert
        return None

    def measure(self, metric: str) -> "_Measurement":
        return _Measurement(self, metric)

    def get_performance_summary(self) -> Dict[str, Any]:
        return {
            "timings": dict(self.timings),
            "alerts": [str(a) for a in self.alerts],
            "thresholds": asdict(self.thresholds),
            "resources": asdict(ResourceSnapshot.capture()),
        }


class _Measurement(Stopwatch):
    def __init__(self, monitor: PerformanceMonitor, metric: str):
        super().__init__(metric)
        self.monitor = monitor

    def __exit__(self, *exc: Any) -> None:
        super().__exit__(*exc)
        self.monitor.record(self.label, self.elapsed)
