"""
共通フィクスチャ
"""

import os

import numpy as np
import pytest

from stable_index.errors import get_error_handler


@pytest.fixture(autouse=True)
def reset_error_counts():
    """各テスト前にエラー集計をリセット"""
    get_error_handler().reset_error_counts()
    yield


@pytest.fixture
def rng():
    """固定シードの乱数生成器"""
    return np.random.Generator(np.random.PCG64(20240601))


@pytest.fixture
def env_clean(monkeypatch):
    """STABLE_INDEX_* 環境変数を消す（テスト後に元へ戻る）"""
    for name in list(os.environ):
        if name.startswith("STABLE_INDEX_"):
            monkeypatch.delenv(name)
    return monkeypatch
