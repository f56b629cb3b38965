"""
stable-index エラーハンドリング

例外階層と統一エラー処理。各例外はカテゴリとCLI終了コードを持つ。
"""

from __future__ import annotations

import logging
import traceback
from contextlib import contextmanager
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from typing import Any, Dict, Iterator, Optional

import structlog


class ErrorSeverity(Enum):
    """エラー重要度"""
    LOW = "low"            # 入力ミス - ログのみ
    MEDIUM = "medium"      # 到達不能な指数など - 利用者に通知
    HIGH = "high"          # 資源上限
    CRITICAL = "critical"  # 定理と矛盾 - 内部バグ


class ErrorCategory(Enum):
    """エラーカテゴリ"""
    INPUT = "input"          # 辺リスト・パラメータ不正
    DOMAIN = "domain"        # Θ(n) に含まれない指数
    RESOURCE = "resource"    # 列挙上限・探索予算
    SEARCH = "search"        # 証拠探索の枯渇
    INTERNAL = "internal"    # 想定外


class StableIndexError(Exception):
    """全例外の基底クラス"""

    category: ErrorCategory = ErrorCategory.INTERNAL
    severity: ErrorSeverity = ErrorSeverity.CRITICAL
    exit_code: int = 1

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.message = message
        self.context: Dict[str, Any] = context


class InputError(StableIndexError):
    category = ErrorCategory.INPUT
    severity = ErrorSeverity.LOW
    exit_code = 2


class IndexOutOfRange(InputError):
    """辺の端点が位数以上"""


class DuplicateArc(InputError):
    """同じ弧が二度現れた（多重弧は禁止）"""


class ParseError(InputError):
    """辺リスト・FamilySpec の構文エラー"""

    def __init__(self, message: str, line: Optional[int] = None, **context: Any):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message, line=line, **context)
        self.line = line


class ParameterOutOfRange(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class Unrealizable(InputError):
    """G(p,q,l,t) が指定位数で実現できない"""


class NotCoprime(InputError):
    pass


class CodeOutOfRange(InputError):
    pass


class OrderMismatch(InputError):
    pass


class ShrinkNotAllowed(InputError):
    pass


class ConfigError(InputError):
    pass


class BudgetExceeded(InputError):
    """歩道列挙・状態保存の予算超過"""

    category = ErrorCategory.RESOURCE


class NotAchievable(StableIndexError):
    """m ∉ Θ(n)"""

    category = ErrorCategory.DOMAIN
    severity = ErrorSeverity.MEDIUM
    exit_code = 3


class CeilingExceeded(StableIndexError):
    category = ErrorCategory.RESOURCE
    severity = ErrorSeverity.HIGH
    exit_code = 4


class SearchExhausted(StableIndexError):
    """証拠が見つからない。Θ(n) の全要素に構成があるので内部バグ扱い"""

    category = ErrorCategory.SEARCH
    severity = ErrorSeverity.CRITICAL
    exit_code = 1


@dataclass
class ErrorEvent:
    """エラーイベント情報"""
    category: ErrorCategory
    severity: ErrorSeverity
    message: str
    component: str
    exit_code: int
    timestamp: str
    exception_type: Optional[str] = None
    traceback: Optional[str] = None
    context: Dict[str, Any] = field(default_factory=dict)


class ErrorHandler:
    """統合エラーハンドラー"""

    _LEVELS = {
        ErrorSeverity.LOW: logging.INFO,
        ErrorSeverity.MEDIUM: logging.WARNING,
        ErrorSeverity.HIGH: logging.ERROR,
        ErrorSeverity.CRITICAL: logging.CRITICAL,
    }

    def __init__(self) -> None:
        self.logger = structlog.get_logger("stable_index.errors")
        self.error_count: Dict[str, int] = {}

    def handle_error(self, exception: BaseException, component: str) -> ErrorEvent:
        """例外をイベント化してログ出力"""
        if isinstance(exception, StableIndexError):
            category, severity = exception.category, exception.severity
            exit_code, context = exception.exit_code, exception.context
            message = exception.message
        else:
            category, severity = ErrorCategory.INTERNAL, ErrorSeverity.CRITICAL
            exit_code, context, message = 1, {}, str(exception)

        key = f"{category.value}:{component}"
        self.error_count[key] = self.error_count.get(key, 0) + 1

        event = ErrorEvent(
            category=category,
            severity=severity,
            message=message,
            component=component,
            exit_code=exit_code,
            timestamp=datetime.now().isoformat(),
            exception_type=type(exception).__name__,
            traceback=traceback.format_exc() if severity == ErrorSeverity.CRITICAL else None,
            context={k: v for k, v in context.items() if v is not None},
        )
        self._log_error(event)
        return event

    def _log_error(self, event: ErrorEvent) -> None:
        level = self._LEVELS.get(event.severity, logging.ERROR)
        self.logger.log(
            level,
            "error",
            category=event.category.value,
            component=event.component,
            error=event.exception_type,
            message=event.message,
            **event.context,
        )
        if event.traceback:
            self.logger.debug("traceback", component=event.component, traceback=event.traceback)

    @contextmanager
    def handle_errors(self, component: str) -> Iterator[None]:
        """コンポーネント用エラーハンドリングコンテキスト（ログ後に再送出）"""
        try:
            yield
        except StableIndexError as e:
            self.handle_error(e, component)
            raise

    def get_error_stats(self) -> Dict[str, Any]:
        return {
            "total_errors": sum(self.error_count.values()),
            "error_by_component": dict(self.error_count),
        }

    def reset_error_counts(self) -> None:
        self.error_count.clear()


_error_handler: Optional[ErrorHandler] = None


def get_error_handler() -> ErrorHandler:
    """エラーハンドラーインスタンス取得"""
    global _error_handler
    if _error_handler is None:
        _error_handler = ErrorHandler()
    return _error_handler


# 便利関数
def handle_error(exception: BaseException, component: str) -> ErrorEvent:
    """グローバルエラーハンドリング関数"""
    return get_error_handler().handle_error(exception, component)
