"""
Unit Tests for config / logging_setup / performance_monitor
"""

import json
import logging

import pytest
import structlog

from stable_index.config import StableIndexConfig, load_config
from stable_index.errors import ConfigError
from stable_index.logging_setup import setup_logging
from stable_index.performance_monitor import (
    PerformanceMonitor,
    PerformanceThresholds,
    ResourceSnapshot,
    Stopwatch,
)


class TestConfig:
    """設定読み込み"""

    def test_defaults(self):
        config = load_config(environ={})
        assert config == StableIndexConfig()
        assert config.enum_ceiling == 5
        assert config.workers == 1
        assert config.seed == 1
        assert config.oracle_budget == 1_000_000
        assert config.oracle_max_length is None
        assert config.log_format == "console"

    def test_environment(self):
        config = load_config(environ={"STABLE_INDEX_WORKERS": "4", "STABLE_INDEX_ENUM_CEILING": "3"})
        assert config.workers == 4
        assert config.enum_ceiling == 3

    def test_overrides_win(self):
        config = load_config(environ={"STABLE_INDEX_SEED": "9"}, seed=3, workers=None)
        assert config.seed == 3
        assert config.workers == 1

    def test_dotenv_file(self, tmp_path, env_clean):
        # load_dotenv が書いた値もテスト後に消えるよう、先に monkeypatch へ登録する
        for name in ("STABLE_INDEX_SEED", "STABLE_INDEX_LOG_FORMAT"):
            env_clean.setenv(name, "")
            env_clean.delenv(name)
        env_file = tmp_path / ".env"
        env_file.write_text("STABLE_INDEX_SEED=42\nSTABLE_INDEX_LOG_FORMAT=json\n", encoding="utf-8")
        config = load_config(env_file=env_file)
        assert config.seed == 42
        assert config.log_format == "json"

    @pytest.mark.parametrize(
        "environ",
        [{"STABLE_INDEX_ENUM_CEILING": "7"}, {"STABLE_INDEX_WORKERS": "0"}, {"STABLE_INDEX_LOG_FORMAT": "xml"}],
    )
    def test_invalid_values(self, environ):
        with pytest.raises(ConfigError):
            load_config(environ=environ)

    def test_frozen(self):
        config = StableIndexConfig()
        with pytest.raises(Exception):
            config.workers = 3


class TestLogging:
    """ログ設定"""

    def test_json_lines_on_stderr(self, capsys):
        setup_logging("INFO", "json")
        structlog.get_logger("stable_index.test").info("enumeration_done", n=3, total=512)
        captured = capsys.readouterr()
        assert captured.out == ""
        record = json.loads(captured.err.strip().splitlines()[-1])
        assert record["event"] == "enumeration_done"
        assert record["n"] == 3
        assert record["level"] == "info"

    def test_level_filters(self, capsys):
        setup_logging("WARNING", "console")
        structlog.get_logger("stable_index.test").info("hidden")
        assert "hidden" not in capsys.readouterr().err
        assert logging.getLogger().level == logging.WARNING


class TestPerformanceMonitor:
    """計測と閾値"""

    def test_stopwatch(self):
        with Stopwatch() as sw:
            sum(range(1000))
        assert sw.elapsed >= 0.0

    def test_alert_over_threshold(self):
        monitor = PerformanceMonitor(PerformanceThresholds(max_named_values=0.5))
        assert monitor.record("named_values", 0.1) is None
        alert = monitor.record("named_values", 1.0)
        assert alert is not None
        assert alert.severity == "HIGH"
        assert monitor.alerts == [alert]

    def test_measure_records(self):
        monitor = PerformanceMonitor()
        with monitor.measure("number_theory"):
            pass
        assert "number_theory" in monitor.timings
        summary = monitor.get_performance_summary()
        assert summary["alerts"] == []
        assert summary["resources"]["memory_mb"] > 0

    def test_snapshot(self):
        snap = ResourceSnapshot.capture()
        assert snap.cpu_count >= 1
