"""
位数 n の全有向グラフの列挙と θ の集計

各グラフは n² ビットの整数で表す（ビット i·n+j が弧 i→j）。
範囲 [lo, hi) を連続チャンクに分けて独立に処理し、最後にマージする。
ワーカー数によらず結果は同一。
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import numpy as np
import structlog
from joblib import Parallel, delayed
from pydantic import ValidationError

from .core import (
    INFINITE,
    Digraph,
    Theta,
    bitset_stable_index,
    encode_rows,
    s_max,
    stable_index,
)
from .errors import CeilingExceeded, CodeOutOfRange, OrderMismatch, ParameterOutOfRange, ParseError
from .performance_monitor import Stopwatch

logger = structlog.get_logger(__name__)

DEFAULT_CEILING = 5
RANDOM_MAX_ORDER = 12
CHUNKS_PER_WORKER = 4


@dataclass(frozen=True)
class Partition:
    """符号の範囲 [lo, hi)"""
    n: int
    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ParameterOutOfRange(f"order must be >= 1, got {self.n}")
        if not 0 <= self.lo <= self.hi <= 1 << (self.n * self.n):
            raise CodeOutOfRange(
                f"partition [{self.lo}, {self.hi}) outside [0, 2^{self.n * self.n})"
            )

    @classmethod
    def full(cls, n: int) -> "Partition":
        return cls(n, 0, 1 << (n * n))

    @property
    def size(self) -> int:
        return self.hi - self.lo

    def split(self, parts: int) -> List["Partition"]:
        """ほぼ等分の連続チャンク"""
        parts = max(1, min(parts, self.size or 1))
        step, extra = divmod(self.size, parts)
        out, lo = [], self.lo
        for i in range(parts):
            hi = lo + step + (1 if i < extra else 0)
            out.append(Partition(self.n, lo, hi))
            lo = hi
        return out


@dataclass(frozen=True)
class EnumSummary:
    """θ 値ごとの個数"""
    n: int
    histogram: Dict[Theta, int] = field(default_factory=dict)
    ranges: Tuple[Tuple[int, int], ...] = ()

    @property
    def total(self) -> int:
        return sum(self.histogram.values())

    @property
    def max_finite(self) -> Optional[int]:
        finite = [t.value for t in self.histogram if t.value is not None]
        return max(finite) if finite else None

    def achieved_finite(self) -> Tuple[int, ...]:
        return tuple(sorted(t.value for t in self.histogram if t.value is not None))

    def sorted_items(self) -> List[Tuple[Theta, int]]:
        return sorted(self.histogram.items(), key=lambda item: item[0].sort_key())


@dataclass(frozen=True)
class EmpiricalReport:
    n: int
    summary: EnumSummary
    expected: Tuple[int, ...]
    s_max: int
    per_value: Tuple[Tuple[int, bool, bool], ...]  # (値, Θ(n) に含まれるか, 観測されたか)

    @property
    def ok(self) -> bool:
        return (
            all(expected == observed for _, expected, observed in self.per_value)
            and self.summary.max_finite == (self.s_max or None)
            and INFINITE in self.summary.histogram
        )


# === 符号化 ===


def encode(D: Digraph) -> int:
    return encode_rows(D.row_masks(), D.order)


def decode(n: int, code: int) -> Digraph:
    if n < 1:
        raise ParameterOutOfRange(f"order must be >= 1, got {n}")
    if not 0 <= code < 1 << (n * n):
        raise CodeOutOfRange(f"code {code} outside [0, 2^{n * n})", n=n, code=code)
    arcs = [(b // n, b % n) for b in range(n * n) if code >> b & 1]
    return Digraph(n, frozenset(arcs))


# === 集計 ===


def merge(a: EnumSummary, b: EnumSummary) -> EnumSummary:
    """ヒストグラムの和（範囲の重なりは呼び出し側の責任）"""
    if a.n != b.n:
        raise OrderMismatch(f"cannot merge summaries of order {a.n} and {b.n}")
    counts: Counter[Theta] = Counter(a.histogram)
    counts.update(b.histogram)
    return EnumSummary(a.n, dict(counts), _merge_ranges(a.ranges + b.ranges))


def _merge_ranges(ranges: Tuple[Tuple[int, int], ...]) -> Tuple[Tuple[int, int], ...]:
    out: List[Tuple[int, int]] = []
    for lo, hi in sorted(ranges):
        if out and lo <= out[-1][1]:
            out[-1] = (out[-1][0], max(hi, out[-1][1]))
        else:
            out.append((lo, hi))
    return tuple(out)


def _theta_of(n: int, code: int, algorithm: str) -> Theta:
    if algorithm == "bitset":
        return bitset_stable_index(n, code)
    return stable_index(decode(n, code), algorithm)


def _scan(part: Partition, algorithm: str) -> EnumSummary:
    counts: Counter[Theta] = Counter()
    n = part.n
    for code in range(part.lo, part.hi):
        counts[_theta_of(n, code, algorithm)] += 1
    return EnumSummary(n, dict(counts), ((part.lo, part.hi),) if part.size else ())


def enumerate_exhaustive(
    part: Partition,
    ceiling: int = DEFAULT_CEILING,
    workers: int = 1,
    algorithm: str = "bitset",
) -> EnumSummary:
    """範囲内の全符号について θ を計算して集計"""
    if part.n > ceiling:
        raise CeilingExceeded(
            f"exhaustive enumeration of order {part.n} exceeds the ceiling {ceiling}",
            n=part.n, ceiling=ceiling,
        )

    with Stopwatch() as sw:
        if workers <= 1:
            summary = _scan(part, algorithm)
        else:
            chunks = part.split(workers * CHUNKS_PER_WORKER)
            results = Parallel(n_jobs=workers)(delayed(_scan)(c, algorithm) for c in chunks)
            summary = EnumSummary(part.n)
            for result in results:
                summary = merge(summary, result)

    logger.info(
        "enumeration_done",
        n=part.n,
        lo=part.lo,
        hi=part.hi,
        total=summary.total,
        max_finite=summary.max_finite,
        workers=workers,
        elapsed=round(sw.elapsed, 3),
    )
    return summary


def random_codes(n: int, samples: int, seed: int) -> List[int]:
    """
    PCG64(seed) で各ビットを一様に引いた符号列

    ビット行列 samples × n² を行ごとに整数化するので、プラットフォームによらず同じ列になる。
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    bits = rng.integers(0, 2, size=(samples, n, n), dtype=np.int64)
    rows = bits @ (np.int64(1) << np.arange(n, dtype=np.int64))
    return [encode_rows([int(r) for r in sample], n) for sample in rows]


def enumerate_random(
    n: int,
    samples: int,
    seed: int,
    algorithm: str = "bitset",
) -> EnumSummary:
    """一様ランダムな符号（復元抽出）で集計"""
    if not 1 <= n <= RANDOM_MAX_ORDER:
        raise ParameterOutOfRange(f"sampling supports 1 <= n <= {RANDOM_MAX_ORDER}, got {n}")
    if samples < 0:
        raise ParameterOutOfRange(f"samples must be >= 0, got {samples}")
    counts: Counter[Theta] = Counter(_theta_of(n, c, algorithm) for c in random_codes(n, samples, seed))
    logger.info("sampling_done", n=n, samples=samples, seed=seed)
    return EnumSummary(n, dict(counts))


def empirical_check(
    n: int,
    ceiling: int = DEFAULT_CEILING,
    workers: int = 1,
) -> EmpiricalReport:
    """全列挙の結果を Θ(n) と s(n) に照合"""
    from .theorem import theta_set

    summary = enumerate_exhaustive(Partition.full(n), ceiling=ceiling, workers=workers)
    expected = theta_set(n).finite_members
    observed = set(summary.achieved_finite())
    values = sorted(set(expected) | observed)
    per_value = tuple((v, v in expected, v in observed) for v in values)
    report = EmpiricalReport(n, summary, expected, s_max(n), per_value)
    if not report.ok:
        logger.warning("empirical_mismatch", n=n, expected=expected, observed=sorted(observed))
    return report


# === 永続化 ===


def summary_to_csv(summary: EnumSummary) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["theta", "count"])
    for theta, count in summary.sorted_items():
        writer.writerow([str(theta), count])
    return buf.getvalue()


def save_summary(summary: EnumSummary, path: Path) -> None:
    from .schemas import EnumSummaryDocument

    path.write_text(EnumSummaryDocument.from_summary(summary).model_dump_json(indent=2), encoding="utf-8")


def load_summary(path: Path) -> EnumSummary:
    from .schemas import EnumSummaryDocument

    try:
        document = EnumSummaryDocument.model_validate_json(path.read_text(encoding="utf-8"))
    except ValidationError as e:
        raise ParseError(f"{path}: not an enumeration summary ({e.error_count()} errors)") from e
    return document.to_summary()
