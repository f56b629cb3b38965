"""
stable-index 設定

.env と環境変数 (STABLE_INDEX_*) から読み込む。CLIフラグが最優先。
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Literal, Mapping, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError

from .errors import ConfigError

ENV_PREFIX = "STABLE_INDEX_"


class StableIndexConfig(BaseModel):
    """全体設定"""

    # 列挙設定
    enum_ceiling: int = Field(default=5, ge=1, le=6)  # 2^25 ≈ 3.4e7 が机上の上限
    workers: int = Field(default=1, ge=1)
    seed: int = 1

    # 歩道オラクル設定（指数的列挙）
    oracle_budget: int = Field(default=1_000_000, ge=1)
    oracle_max_length: Optional[int] = Field(default=None, ge=2)  # None なら s(n)+1 まで

    # ログ設定
    log_level: str = "INFO"
    log_format: Literal["console", "json"] = "console"

    model_config = {"frozen": True}


def load_config(
    env_file: Optional[Path] = None,
    environ: Optional[Mapping[str, str]] = None,
    **overrides: object,
) -> StableIndexConfig:
    """設定読み込み（.env → 環境変数 → 引数の順に上書き）"""
    if environ is None:
        load_dotenv(env_file)
        environ = os.environ

    values: dict[str, object] = {}
    for name in StableIndexConfig.model_fields:
        raw = environ.get(ENV_PREFIX + name.upper())
        if raw is not None:
            values[name] = raw
    values.update({k: v for k, v in overrides.items() if v is not None})

    try:
        return StableIndexConfig(**values)
    except ValidationError as e:
        raise ConfigError(f"invalid configuration: {e.errors()[0]['msg']}") from e
